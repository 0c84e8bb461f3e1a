#include <algorithm>

#include "anodyne_internal.hpp"
#include "theta2/anodyne.hpp"
#include "theta2/error.hpp"

namespace theta2 {

using namespace detail;

namespace {

bool within(const Subobject& a, const Subobject& b) {
  return std::includes(b.cells().begin(), b.cells().end(), a.cells().begin(), a.cells().end());
}

Subobject closure(const ThetaShape& p, std::vector<HyperfaceLabel> labels) {
  return hyperface_closure(p, labels);
}

class Collector {
 public:
  explicit Collector(std::vector<ClaimCheck>& out) : out_(out) {}
  void operator()(const std::string& claim, const std::string& detail, bool ok) { out_.push_back({claim, detail, ok}); }

 private:
  std::vector<ClaimCheck>& out_;
};

// Checks shared by both oracles, along the k-th horizontal hyperface given by `a`.
void common_claims(const ThetaShape& s, int k, const Shuffle& a, const std::string& prime, Collector& add) {
  const auto d = h(k, a);
  const ThetaShape p = hyperface_source(s, d);
  const auto along = to_cell(hyperface(s, d));
  const std::string at = " along " + to_string(d);

  add("0" + prime, "Upsilon^0 pulls back to Upsilon^0" + at,
      same_cells(pullback_along(upsilon_S(s, {}).domain, along), upsilon_S(p, {}).domain));

  // horizontal hyperfaces at other levels, and the dual
  for (int l = 1; l <= s.n - 1; ++l) {
    if (l == k) continue;
    const int lp = l < k ? l : l - 1;
    std::vector<HyperfaceLabel> family;
    for (auto& g : shuffles(p.qk(lp), p.qk(lp + 1))) family.push_back(h(lp, g));
    auto fam = closure(p, family);
    std::vector<Subobject> pulls;
    for (auto& b : shuffles(s.qk(l), s.qk(l + 1))) {
      pulls.push_back(pullback_hyperface(s, h(l, b), d));
      add("1" + prime + "(i)", to_string(h(l, b)) + at, within(pulls.back(), fam));
    }
    for (auto& g : family) {
      auto face = closure(p, {g});
      bool found = std::any_of(pulls.begin(), pulls.end(), [&](const Subobject& x) { return within(face, x); });
      add("1" + prime + "(ii)", to_string(g) + " of " + to_string(p), found);
    }
  }

  // vertical hyperfaces away from k and k+1
  for (int l = 1; l <= s.n; ++l) {
    if (l == k || l == k + 1) continue;
    const int lp = l < k ? l : l - 1;
    for (int i = 1; i <= s.qk(l) - 1; ++i)
      add("3" + prime, to_string(v(l, i)) + at,
          same_cells(pullback_hyperface(s, v(l, i), d), closure(p, {v(lp, i)})));
  }

  // vertical hyperfaces at k and k+1
  const auto lower = a.lower_corners();
  const auto upper = a.upper_corners();
  const auto& corners = prime.empty() ? lower : upper;
  for (int side = 0; side < 2; ++side) {
    const int l = k + side;
    const auto vals = side == 0 ? a.alpha() : a.alpha_prime();
    for (int i = 1; i <= s.qk(l) - 1; ++i) {
      std::vector<int> fibre;
      for (int j = 0; j < static_cast<int>(vals.size()); ++j)
        if (vals[static_cast<std::size_t>(j)] == i) fibre.push_back(j);
      auto pb = pullback_hyperface(s, v(l, i), d);
      if (fibre.size() == 1) {
        const int j = fibre.front();
        add("4" + prime, to_string(v(l, i)) + at + ": exact",
            j >= 1 && j <= p.qk(k) - 1 && same_cells(pb, closure(p, {v(k, j)})));
      } else {
        bool ok = false;
        for (int j : corners)
          if (within(pb, closure(p, {v(k, j)}))) ok = true;
        add("4" + prime, to_string(v(l, i)) + at + ": within a corner face", ok);
      }
    }
  }
}

}  // namespace

std::vector<ClaimCheck> claims_oracle(const ThetaShape& s, int k, const Shuffle& alpha) {
  if (k < 1 || k > s.n - 1 || alpha.m() != s.qk(k) || alpha.n() != s.qk(k + 1))
    throw RangeError("claims need 1 <= k <= n-1 and a matching shuffle");
  std::vector<ClaimCheck> out;
  Collector add(out);
  common_claims(s, k, alpha, "", add);
  const auto d = h(k, alpha);
  const ThetaShape p = hyperface_source(s, d);
  const auto lower = alpha.lower_corners();
  const auto preds = alpha.predecessors();
  // horizontal hyperfaces at k below alpha
  for (auto& b : shuffles(alpha.m(), alpha.n())) {
    if (shuffle_leq(alpha, b)) continue;
    auto pb = pullback_hyperface(s, h(k, b), d);
    bool ok = std::any_of(lower.begin(), lower.end(), [&](int j) { return within(pb, closure(p, {v(k, j)})); });
    add("2(i)", to_string(h(k, b)) + " along " + to_string(d), ok);
  }
  for (std::size_t t = 0; t < lower.size(); ++t) {
    const auto& b = preds[t];
    add("2(ii)", "corner " + std::to_string(lower[t]) + " via " + to_string(b),
        shuffle_leq(b, alpha) && b != alpha &&
            same_cells(pullback_hyperface(s, h(k, b), d), closure(p, {v(k, lower[t])})));
  }
  return out;
}

std::vector<ClaimCheck> claims_prime_oracle(const ThetaShape& s, int k, const Shuffle& alpha, const Shuffle& beta) {
  if (k < 1 || k > s.n - 1 || alpha.m() != s.qk(k) || alpha.n() != s.qk(k + 1))
    throw RangeError("claims need 1 <= k <= n-1 and a matching shuffle");
  if (!shuffle_leq(alpha, beta) || alpha == beta) throw RangeError("claims' need beta > alpha");
  std::vector<ClaimCheck> out;
  Collector add(out);
  common_claims(s, k, beta, "'", add);
  const auto d = h(k, beta);
  const ThetaShape p = hyperface_source(s, d);
  const auto upper = beta.upper_corners();
  const auto succs = beta.successors();
  const auto lower = beta.lower_corners();
  const auto preds = beta.predecessors();
  const auto& b = beta.alpha();
  const auto& a = alpha.alpha();
  // horizontal hyperfaces at k above beta
  for (auto& g : shuffles(beta.m(), beta.n())) {
    if (shuffle_leq(g, beta)) continue;
    auto pb = pullback_hyperface(s, h(k, g), d);
    bool ok = std::any_of(upper.begin(), upper.end(), [&](int j) { return within(pb, closure(p, {v(k, j)})); });
    add("2'(i)", to_string(h(k, g)) + " along " + to_string(d), ok);
  }
  for (std::size_t t = 0; t < upper.size(); ++t) {
    const auto& g = succs[t];
    add("2'(ii)", "corner " + std::to_string(upper[t]) + " via " + to_string(g),
        shuffle_leq(beta, g) && g != beta &&
            same_cells(pullback_hyperface(s, h(k, g), d), closure(p, {v(k, upper[t])})));
  }
  // horizontal hyperfaces at k not above alpha
  auto is_lower = [&](int j) { return std::find(lower.begin(), lower.end(), j) != lower.end(); };
  for (auto& g : shuffles(beta.m(), beta.n())) {
    if (shuffle_leq(alpha, g)) continue;
    auto pb = pullback_hyperface(s, h(k, g), d);
    bool ok = false;
    for (int j = 1; j <= p.qk(k) - 1 && !ok; ++j)
      if (!is_lower(j) || b[static_cast<std::size_t>(j)] == a[static_cast<std::size_t>(j)])
        ok = within(pb, closure(p, {v(k, j)}));
    add("5(i)", to_string(h(k, g)) + " along " + to_string(d), ok);
  }
  for (std::size_t t = 0; t < lower.size(); ++t) {
    const int j = lower[t];
    if (b[static_cast<std::size_t>(j)] != a[static_cast<std::size_t>(j)]) continue;
    const auto& g = preds[t];
    add("5(ii)", "corner " + std::to_string(j) + " via " + to_string(g),
        !shuffle_leq(alpha, g) && same_cells(pullback_hyperface(s, h(k, g), d), closure(p, {v(k, j)})));
  }
  return out;
}

}  // namespace theta2
