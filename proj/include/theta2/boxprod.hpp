#pragma once

#include <memory>
#include <string>
#include <vector>

#include "theta2/cellset.hpp"
#include "theta2/simplicial.hpp"
#include "theta2/theta.hpp"

namespace theta2 {

// Box product over Delta[n]. The base is a product of simplicial subsets whose
// first factor lies in the chain [n]; fibers[k-1] is the simplicial set placed
// over the k-th edge of [n].
//
// A cell at [m;p] is an m-simplex of the base together with, for every source
// interval i and every slot k it covers, a p_i-simplex of fibers[k-1].
// Payload: base vertices (vertex-major across factors), then the component
// simplices in interval order. With a single base factor this agrees with the
// representable payload, so to_operator() applies directly.
class BoxProduct : public CellularSet {
 public:
  BoxProduct(std::vector<SimplicialSubset> base, std::vector<SimplicialSubset> fibers, int bound);

  std::string name() const override;
  int bound() const override { return bound_; }
  std::vector<Cell> cells(const ThetaShape& s) const override;
  Cell act(const Cell& x, const CellularOperator& f) const override;
  std::vector<Cell> nondegenerate(const ThetaShape& s) const override;
  Decomposition decompose(const Cell& x) const override;
  std::string format(const Cell& x) const override;
  bool has_cell(const Cell& x) const override;

  int n() const { return slots_; }
  const std::vector<SimplicialSubset>& base() const { return base_; }
  const std::vector<SimplicialSubset>& fibers() const { return fibers_; }
  std::size_t factors() const { return base_.size(); }

  // Base simplex of factor f, as a vertex list.
  std::vector<int> base_simplex(const Cell& x, std::size_t f) const;
  // Horizontal operator given by the first factor.
  SimplicialOperator horizontal(const Cell& x) const;
  // Component simplex for slot k (covered by the cell).
  std::vector<int> component(const Cell& x, int k) const;
  bool covers(const Cell& x, int k) const;

 private:
  std::vector<SimplicialSubset> base_;
  std::vector<SimplicialSubset> fibers_;
  int slots_;
  int bound_;
};

using BoxProductPtr = std::shared_ptr<const BoxProduct>;

BoxProductPtr box(std::vector<SimplicialSubset> base, std::vector<SimplicialSubset> fibers, int bound);
// Box over id_{Delta[n]} with fibers Delta[q_k].
BoxProductPtr box_of_shape(const ThetaShape& s, int bound);

// Arguments of a Leibniz box construction: each entry is the domain of a mono
// into the matching codomain argument.
struct LeibnizArgs {
  std::vector<SimplicialSubset> base;
  std::vector<SimplicialSubset> fibers;
};

// Cells of the codomain box lying in some non-terminal corner of the cube.
bool in_leibniz_domain(const BoxProduct& codomain, const LeibnizArgs& sub, const Cell& x);

// Domain subobject of an inclusion together with its codomain.
struct Inclusion {
  Subobject domain;
  CellularSetPtr codomain;
  int bound = 0;  // levelwise exact up to this dimension
  std::string name;
};

Inclusion leibniz_box(const BoxProductPtr& codomain, const LeibnizArgs& sub, int bound);

// Named inclusions into Theta[n;q], built as hyperface closures.
Inclusion boundary(const ThetaShape& s);
Inclusion horn_h(const ThetaShape& s, int k);
Inclusion horn_v(const ThetaShape& s, int k, int i);
Inclusion horn_h_alt(const ThetaShape& s, int k, const Shuffle& sh);
Inclusion spine(const ThetaShape& s);
Inclusion spine_S(const ThetaShape& s, const std::vector<HyperfaceLabel>& S);
Inclusion upsilon_S(const ThetaShape& s, const std::vector<HyperfaceLabel>& S);
Inclusion lambda_S(const ThetaShape& s, const std::vector<HyperfaceLabel>& S);

// The same families computed on the box side by the Leibniz construction.
Inclusion leibniz_boundary(const ThetaShape& s);
Inclusion leibniz_horn_h(const ThetaShape& s, int k);
Inclusion leibniz_horn_v(const ThetaShape& s, int k, int i);

bool is_inner_horn_h(const ThetaShape& s, int k);
bool is_inner_horn_v(const ThetaShape& s, int k, int i);

// Closure of the given hyperfaces inside Theta[s].
Subobject hyperface_closure(const ThetaShape& s, const std::vector<HyperfaceLabel>& labels);

// Psi^k inside Phi^k, where Phi^k has J at slot k (which needs q_k = 0).
struct VerticalExtension {
  BoxProductPtr phi;
  Inclusion psi;
};
VerticalExtension equiv_vert(const ThetaShape& s, int k, int bound);

// ({0} x Theta) u (J x boundary) inside J x Theta[n;q].
Inclusion equiv_horiz(const ThetaShape& s, int bound);

// Simplicial vertex map between fibers: values[v] is the image of vertex v.
using VertexMap = std::vector<int>;

// Map of boxes over a horizontal operator beta : [n'] -> [n]. comps[j-1] is
// the vertex map into target slot j, for the slots j covered by beta; its
// source is the source slot containing j. Extra base factors pass through.
CellularMap box_map(const BoxProductPtr& source, const BoxProductPtr& target, const SimplicialOperator& beta,
                    const std::vector<VertexMap>& comps, const std::string& name);

}  // namespace theta2
