#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace theta2 {

// Monotone map [src] -> [dst], stored as its list of values.
class SimplicialOperator {
 public:
  SimplicialOperator() = default;
  SimplicialOperator(int dst, std::vector<int> values);

  static SimplicialOperator identity(int n);
  // delta^i : [n-1] -> [n], skips i.
  static SimplicialOperator face(int n, int i);
  // sigma^i : [n+1] -> [n], repeats i.
  static SimplicialOperator degeneracy(int n, int i);
  static SimplicialOperator constant(int m, int n, int value);

  int src() const { return static_cast<int>(values_.size()) - 1; }
  int dst() const { return dst_; }
  const std::vector<int>& values() const { return values_; }
  int operator()(int i) const { return values_[static_cast<std::size_t>(i)]; }

  bool is_mono() const;
  bool is_epi() const;
  bool is_inert() const;
  bool preserves_endpoints() const;
  bool is_identity() const { return is_mono() && is_epi(); }

  auto operator<=>(const SimplicialOperator&) const = default;

 private:
  int dst_ = 0;
  std::vector<int> values_{0};
};

// f after g.
SimplicialOperator compose(const SimplicialOperator& f, const SimplicialOperator& g);

struct SimplicialFlags {
  bool mono = false;
  bool epi = false;
  bool inert = false;
  bool preserves_endpoints = false;
};

SimplicialFlags classify(const SimplicialOperator& a);

SimplicialOperator op_dual(const SimplicialOperator& a);

struct EpiMono {
  SimplicialOperator epi;
  SimplicialOperator mono;
};

// a == compose(mono, epi)
EpiMono ez_factor(const SimplicialOperator& a);

// All monotone maps [m] -> [n] in lexicographic order.
std::vector<SimplicialOperator> all_operators(int m, int n);
std::vector<SimplicialOperator> all_monos(int m, int n);
std::vector<SimplicialOperator> all_epis(int m, int n);

std::string to_string(const SimplicialOperator& a);
std::string values_to_string(const std::vector<int>& v);

// "{0,2}:[1]->[2]" or "{0,2}" (target defaults to the largest value, or dst_hint when >= 0).
SimplicialOperator parse_simplicial(std::string_view text, int dst_hint = -1);
std::vector<int> parse_value_list(std::string_view text);

enum class PointKind { LowerCorner, UpperCorner, AlphaSingleton, AlphaPrimeSingleton };

// Surjection alpha : [m+n] -> [m] with alpha'(i) = i - alpha(i) also surjective onto [n].
class Shuffle {
 public:
  Shuffle() = default;
  Shuffle(int m, int n, std::vector<int> alpha);

  int m() const { return m_; }
  int n() const { return n_; }
  const std::vector<int>& alpha() const { return alpha_; }
  std::vector<int> alpha_prime() const;
  SimplicialOperator alpha_operator() const;
  SimplicialOperator alpha_prime_operator() const;

  // Points i with alpha(i+1) = alpha(i) = alpha(i-1) + 1.
  std::vector<int> lower_corners() const;
  // Points i with alpha(i+1) = alpha(i) + 1 = alpha(i-1) + 1.
  std::vector<int> upper_corners() const;
  PointKind classify_point(int i) const;

  // Indexed like lower_corners(): the shuffle below across corner i.
  std::vector<Shuffle> predecessors() const;
  std::vector<Shuffle> successors() const;

  auto operator<=>(const Shuffle&) const = default;

 private:
  int m_ = 0;
  int n_ = 0;
  std::vector<int> alpha_{0};
};

// Lexicographic order on alpha.
std::vector<Shuffle> shuffles(int m, int n);
// Pointwise order on alpha.
bool shuffle_leq(const Shuffle& a, const Shuffle& b);

std::string to_string(const Shuffle& s);
Shuffle parse_shuffle(std::string_view text);

// Hasse diagram as DOT.
std::string shuffle_poset_dot(int m, int n);

long long binomial(int n, int k);

}  // namespace theta2
