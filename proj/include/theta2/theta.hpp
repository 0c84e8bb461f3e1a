#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "theta2/delta.hpp"

namespace theta2 {

// Object [n; q_1, ..., q_n] of Theta_2.
struct ThetaShape {
  int n = 0;
  std::vector<int> q;

  ThetaShape() = default;
  ThetaShape(int n_, std::vector<int> q_);

  int dim() const;
  int qk(int k) const { return q[static_cast<std::size_t>(k - 1)]; }
  ThetaShape reversed() const;

  bool operator==(const ThetaShape&) const = default;
  // Ordered by dimension first.
  std::strong_ordering operator<=>(const ThetaShape& o) const;
};

std::string to_string(const ThetaShape& s);
ThetaShape parse_shape(std::string_view text);

// All shapes of dimension <= max_dim, ordered by (dim, n, q).
std::vector<ThetaShape> all_shapes(int max_dim);

// [alpha; alpha_k] : src -> dst. Components are kept for covered k, i.e.
// alpha(0) < k <= alpha(m); component k maps [p_l] -> [q_k] where l is the
// interval of src with alpha(l-1) < k <= alpha(l).
class CellularOperator {
 public:
  CellularOperator() = default;
  CellularOperator(ThetaShape src, ThetaShape dst, SimplicialOperator horizontal,
                   std::vector<SimplicialOperator> components);

  const ThetaShape& src() const { return src_; }
  const ThetaShape& dst() const { return dst_; }
  const SimplicialOperator& horizontal() const { return horizontal_; }
  const std::vector<SimplicialOperator>& components() const { return components_; }

  bool covers(int k) const;
  const SimplicialOperator& component(int k) const;
  // Interval l of the source with alpha(l-1) < k <= alpha(l).
  int source_interval(int k) const;

  auto operator<=>(const CellularOperator&) const = default;

 private:
  ThetaShape src_;
  ThetaShape dst_;
  SimplicialOperator horizontal_;
  std::vector<SimplicialOperator> components_;
};

CellularOperator identity(const ThetaShape& s);
// f after g.
CellularOperator compose(const CellularOperator& f, const CellularOperator& g);

struct CellularFlags {
  bool face = false;
  bool degeneracy = false;
  bool inner = false;
  bool outer = false;
  bool horizontal = false;
  bool vertical = false;
  bool inert = false;
};

CellularFlags classify(const CellularOperator& f);
bool is_face(const CellularOperator& f);
bool is_degeneracy(const CellularOperator& f);
int codim(const CellularOperator& face);

struct HyperfaceLabel {
  enum class Kind { Horizontal, Vertical };
  Kind kind = Kind::Horizontal;
  int k = 0;
  int i = 0;                       // vertical only
  std::optional<Shuffle> shuffle;  // inner horizontal only

  static HyperfaceLabel horizontal(int k) { return {Kind::Horizontal, k, 0, std::nullopt}; }
  static HyperfaceLabel horizontal(int k, Shuffle s) { return {Kind::Horizontal, k, 0, std::move(s)}; }
  static HyperfaceLabel vertical(int k, int i) { return {Kind::Vertical, k, i, std::nullopt}; }

  bool is_horizontal() const { return kind == Kind::Horizontal; }
  bool is_vertical() const { return kind == Kind::Vertical; }

  auto operator<=>(const HyperfaceLabel&) const = default;
};

// "h0", "h2", "h1:<{0,0,1},{0,1,1}>", "v2:1"
std::string to_string(const HyperfaceLabel& l);
HyperfaceLabel parse_hyperface_label(std::string_view text);
// Whitespace or ';' separated labels.
std::vector<HyperfaceLabel> parse_hyperface_set(std::string_view text);

bool hyperface_exists(const ThetaShape& s, const HyperfaceLabel& l);
bool is_outer(const ThetaShape& s, const HyperfaceLabel& l);
ThetaShape hyperface_source(const ThetaShape& s, const HyperfaceLabel& l);
CellularOperator hyperface(const ThetaShape& s, const HyperfaceLabel& l);

struct Hyperface {
  HyperfaceLabel label;
  CellularOperator op;
};

// Horizontal ones by k (shuffles in lex order), then vertical ones by (k, i).
std::vector<Hyperface> hyperfaces(const ThetaShape& s);
std::vector<HyperfaceLabel> hyperface_labels(const ThetaShape& s);
std::vector<HyperfaceLabel> inner_hyperface_labels(const ThetaShape& s);
std::vector<HyperfaceLabel> outer_hyperface_labels(const ThetaShape& s);
long long hyperface_count_formula(const ThetaShape& s);

// Outer hyperfaces in the total order v1:0 < ... < vn:0 < h0 < hn < v1:q1 < ... < vn:qn.
std::vector<HyperfaceLabel> outer_hyperface_order(const ThetaShape& s);

struct ReedyFactorization {
  CellularOperator degeneracy;
  CellularOperator face;  // f == compose(face, degeneracy)
};
ReedyFactorization reedy_factor(const CellularOperator& f);

// h with f == compose(g, h), when g is a face.
std::optional<CellularOperator> factor_through(const CellularOperator& f, const CellularOperator& g);

CellularOperator co_dual(const CellularOperator& f);
CellularOperator op_dual(const CellularOperator& f);

std::vector<CellularOperator> vertebrae(const ThetaShape& s);
bool is_mono_vertebral(const ThetaShape& s);

// Enumeration.
std::vector<CellularOperator> all_operators(const ThetaShape& src, const ThetaShape& dst);
// Every face with target dst, any source; ordered by (source, operator).
std::vector<CellularOperator> faces_into(const ThetaShape& dst);
std::vector<CellularOperator> degeneracies_from(const ThetaShape& src);
// A face d with compose(sigma, d) == identity.
CellularOperator section(const CellularOperator& sigma);

// "[{0,2};{0,1},!]:[1;1]->[2;1,0]". Components are listed for covered k in
// order; "!" is the unique map into [0].
std::string to_string(const CellularOperator& f);
CellularOperator parse_cellular(std::string_view text);

}  // namespace theta2
