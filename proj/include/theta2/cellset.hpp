#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "theta2/simplicial.hpp"
#include "theta2/theta.hpp"

namespace theta2 {

// A cell at a shape; the payload is interpreted by the owning cellular set.
struct Cell {
  ThetaShape shape;
  std::vector<int> data;

  bool operator==(const Cell&) const = default;
  std::strong_ordering operator<=>(const Cell& o) const {
    if (auto c = shape <=> o.shape; c != 0) return c;
    return data <=> o.data;
  }
};

struct Decomposition {
  Cell nondegenerate;
  CellularOperator degeneracy;  // cell == nondegenerate . degeneracy
};

// Presheaf on Theta_2, enumerated up to a dimension bound.
class CellularSet {
 public:
  virtual ~CellularSet() = default;

  // Canonical; two sets with the same name have the same cells and action.
  virtual std::string name() const = 0;
  virtual int bound() const = 0;
  virtual std::vector<Cell> cells(const ThetaShape& s) const = 0;
  // x . f, for f : [m;p] -> x.shape
  virtual Cell act(const Cell& x, const CellularOperator& f) const = 0;

  virtual std::vector<Cell> nondegenerate(const ThetaShape& s) const;
  virtual Decomposition decompose(const Cell& x) const;
  virtual std::string format(const Cell& x) const;
  virtual bool has_cell(const Cell& x) const;
};

using CellularSetPtr = std::shared_ptr<const CellularSet>;

bool is_nondegenerate(const CellularSet& X, const Cell& x);
// Nondegenerate cells of every shape with dim <= max_dim.
std::vector<Cell> nondegenerate_cells(const CellularSet& X, int max_dim);

Cell to_cell(const CellularOperator& f);
CellularOperator to_operator(const Cell& c, const ThetaShape& dst);

class Representable : public CellularSet {
 public:
  Representable(ThetaShape shape, int bound);

  const ThetaShape& shape() const { return shape_; }
  std::string name() const override;
  int bound() const override { return bound_; }
  std::vector<Cell> cells(const ThetaShape& s) const override;
  Cell act(const Cell& x, const CellularOperator& f) const override;
  std::vector<Cell> nondegenerate(const ThetaShape& s) const override;
  Decomposition decompose(const Cell& x) const override;
  std::string format(const Cell& x) const override;
  bool has_cell(const Cell& x) const override;

  Cell identity_cell() const { return to_cell(identity(shape_)); }
  Cell cell_of(const CellularOperator& f) const;

 private:
  ThetaShape shape_;
  int bound_;
  std::vector<CellularOperator> faces_;
};

// Shared instance with bound = max(dim(shape), bound).
std::shared_ptr<const Representable> representable(const ThetaShape& shape, int bound = -1);

// Cells at [m;p] are the m-simplices of S; operators act through their horizontal part.
class SimplicialEmbedding : public CellularSet {
 public:
  SimplicialEmbedding(SimplicialSubset s, int bound);

  std::string name() const override;
  int bound() const override { return bound_; }
  std::vector<Cell> cells(const ThetaShape& s) const override;
  Cell act(const Cell& x, const CellularOperator& f) const override;
  Decomposition decompose(const Cell& x) const override;
  std::vector<Cell> nondegenerate(const ThetaShape& s) const override;

 private:
  SimplicialSubset s_;
  int bound_;
};

CellularSetPtr from_simplicial(const SimplicialSubset& s, int bound);

// Levelwise pairs with the diagonal action. Payload: [len(x)] ++ x ++ y.
class ProductSet : public CellularSet {
 public:
  ProductSet(CellularSetPtr x, CellularSetPtr y, int bound);

  std::string name() const override;
  int bound() const override { return bound_; }
  std::vector<Cell> cells(const ThetaShape& s) const override;
  Cell act(const Cell& c, const CellularOperator& f) const override;
  std::string format(const Cell& c) const override;

  Cell pair(const Cell& x, const Cell& y) const;
  std::pair<Cell, Cell> split(const Cell& c) const;

 private:
  CellularSetPtr x_;
  CellularSetPtr y_;
  int bound_;
};

CellularSetPtr product(CellularSetPtr x, CellularSetPtr y, int bound);

struct CellularMap;

// Action-closed family of cells of an ambient set, stored by its nondegenerate members.
class Subobject {
 public:
  explicit Subobject(CellularSetPtr ambient);

  static Subobject generated(CellularSetPtr ambient, const std::vector<Cell>& generators);
  // Nondegenerate cells of dim <= max_dim satisfying pred; pred must describe a closed family.
  static Subobject from_predicate(CellularSetPtr ambient, const std::function<bool(const Cell&)>& pred,
                                  int max_dim);
  static Subobject full(CellularSetPtr ambient, int max_dim);

  const CellularSet& ambient() const { return *ambient_; }
  const CellularSetPtr& ambient_ptr() const { return ambient_; }
  const std::set<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  bool contains(const Cell& c) const;
  bool contains_nondegenerate(const Cell& c) const { return cells_.count(c) > 0; }
  // Adds the closure of c; returns the nondegenerate cells that were new.
  std::vector<Cell> add(const Cell& c);
  // Members that are not a proper face of another member.
  std::vector<Cell> generators() const;
  Subobject truncated(int max_dim) const;
  int max_dim() const;

  friend bool operator==(const Subobject& a, const Subobject& b);
  friend Subobject pullback_along(const Subobject& sub, const Cell& phi);
  friend Subobject pullback_along(const Subobject& sub, const CellularMap& f, int max_dim);

 private:
  CellularSetPtr ambient_;
  std::set<Cell> cells_;
};

bool same_ambient(const CellularSet& a, const CellularSet& b);
Subobject unite(const Subobject& a, const Subobject& b);
Subobject intersect(const Subobject& a, const Subobject& b);
bool is_subset(const Subobject& a, const Subobject& b);
// Same nondegenerate payloads, ignoring the ambients (used when two ambients share an encoding).
bool same_cells(const Subobject& a, const Subobject& b);

// {h : phi . h in sub}, a subobject of the representable at phi's shape.
Subobject pullback_along(const Subobject& sub, const Cell& phi);

// A cellular map from a source set into some ambient, given on cells.
struct CellularMap {
  CellularSetPtr source;
  std::function<Cell(const Cell&)> apply;
  std::string name;
};

// The map Theta[m;p] -> X classifying the cell phi.
CellularMap yoneda_map(CellularSetPtr ambient, const Cell& phi);
// {x nondegenerate in source, dim <= max_dim : f(x) in sub}
Subobject pullback_along(const Subobject& sub, const CellularMap& f, int max_dim);

}  // namespace theta2
