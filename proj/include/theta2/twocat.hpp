#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "theta2/cellset.hpp"
#include "theta2/theta.hpp"

namespace theta2 {

// Strict 2-category given by finite tables. Composites are written in
// diagrammatic order: compose1(f, g) is "f then g".
class Finite2Category {
 public:
  struct OneCell {
    int src = 0;
    int dst = 0;
    std::string name;
    std::vector<int> coords;  // position in the product poset, for free 2-categories
  };
  struct TwoCell {
    int src = 0;  // 1-cells
    int dst = 0;
    std::string name;
  };

  explicit Finite2Category(std::string name = "C") : name_(std::move(name)) {}

  // Each of these also creates the identity cell one level up.
  int add_object(const std::string& name);
  int add_one_cell(int src, int dst, const std::string& name, std::vector<int> coords = {});
  int add_two_cell(int src, int dst, const std::string& name);

  void set_compose1(int f, int g, int h);
  void set_vertical(int a, int b, int c);
  void set_horizontal(int a, int b, int c);
  // Fills every composite that involves an identity.
  void complete_identities();
  // Throws Error naming the first violated law.
  void validate() const;

  const std::string& name() const { return name_; }
  int object_count() const { return static_cast<int>(objects_.size()); }
  const std::string& object_name(int a) const { return objects_[static_cast<std::size_t>(a)]; }
  const std::vector<OneCell>& one_cells() const { return one_; }
  const std::vector<TwoCell>& two_cells() const { return two_; }
  const OneCell& one(int f) const { return one_[static_cast<std::size_t>(f)]; }
  const TwoCell& two(int a) const { return two_[static_cast<std::size_t>(a)]; }
  int id1(int a) const { return id1_[static_cast<std::size_t>(a)]; }
  int id2(int f) const { return id2_[static_cast<std::size_t>(f)]; }

  int compose1(int f, int g) const;
  int vertical(int a, int b) const;
  int horizontal(int a, int b) const;

  std::vector<int> hom(int a, int b) const;
  std::vector<int> two_cells_from(int f) const;

  int find_object(std::string_view name) const;
  int find_one_cell(std::string_view name) const;
  int find_two_cell(std::string_view name) const;

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<OneCell> one_;
  std::vector<TwoCell> two_;
  std::vector<int> id1_;
  std::vector<int> id2_;
  std::map<std::pair<int, int>, int> comp1_;
  std::map<std::pair<int, int>, int> vcomp_;
  std::map<std::pair<int, int>, int> hcomp_;
};

using Finite2CategoryPtr = std::shared_ptr<const Finite2Category>;

// Objects 0..n, hom(k,l) = [q_{k+1}] x ... x [q_l] as a poset.
Finite2CategoryPtr free_cell_2cat(const ThetaShape& s);
// Chaotic category on the given number of objects, with identity 2-cells only.
Finite2CategoryPtr chaotic_2cat(int objects);
// Two objects 0 -> 1 with hom(0,1) the chaotic category on `objects` objects.
Finite2CategoryPtr suspension_of_chaotic(int objects);

// Line-based text format:
//   2cat NAME
//   object a
//   1cell f : a -> b
//   2cell u : f => g
//   comp1 f g = h        (f then g)
//   vcomp u v = w        (u then v)
//   hcomp u v = w
// Identities are named id_<cell> and their composites are implied.
Finite2CategoryPtr parse_2cat(std::string_view text);
std::string to_text(const Finite2Category& C);

// Cells at [m;p] are 2-functors [m;p] -> C. Payload: the objects c_0..c_m,
// then for every interval i the 1-cell at 0 followed by p_i 2-cells.
class Nerve : public CellularSet {
 public:
  Nerve(Finite2CategoryPtr C, int bound);

  std::string name() const override;
  int bound() const override { return bound_; }
  std::vector<Cell> cells(const ThetaShape& s) const override;
  Cell act(const Cell& x, const CellularOperator& f) const override;
  std::string format(const Cell& x) const override;

  const Finite2Category& category() const { return *C_; }

 private:
  Finite2CategoryPtr C_;
  int bound_;
};

std::shared_ptr<const Nerve> nerve(Finite2CategoryPtr C, int bound);

// The operator [n';p'] -> s named by a cell of nerve(free_cell_2cat(s)).
CellularOperator free_nerve_operator(const ThetaShape& s, const Nerve& N, const Cell& x);

struct Finite2Functor {
  Finite2CategoryPtr source;
  Finite2CategoryPtr target;
  std::vector<int> objects;
  std::vector<int> one;
  std::vector<int> two;
};

void validate(const Finite2Functor& F);
Finite2Functor compose(const Finite2Functor& F, const Finite2Functor& G);  // F then G
CellularMap nerve_map(const Finite2Functor& F, const std::shared_ptr<const Nerve>& source,
                      const std::shared_ptr<const Nerve>& target);

}  // namespace theta2
