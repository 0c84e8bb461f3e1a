#include "theta2/anodyne.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "anodyne_internal.hpp"
#include "theta2/error.hpp"

namespace theta2 {

using nlohmann::json;

// ---- reports ----

json to_json(const HornTag& t) {
  json j{{"family", t.family}};
  if (t.k >= 0) j["k"] = t.k;
  if (t.i >= 0) j["i"] = t.i;
  if (t.shuffle) j["shuffle"] = to_string(*t.shuffle);
  if (!t.set.empty()) j["set"] = detail::label_strings(t.set);
  return j;
}

bool ReplayReport::ok() const {
  if (!failures.empty() || !equals_target) return false;
  return std::all_of(steps.begin(), steps.end(), [](const StepRecord& r) { return r.checks.ok(); });
}

json ReplayReport::to_json() const {
  json j;
  j["script"] = script;
  j["params"] = params;
  j["bound"] = bound;
  j["trivial"] = trivial;
  j["ordering"] = ordering;
  j["steps"] = json::array();
  for (auto& s : steps) {
    json r{{"index", s.index},
           {"stage", s.stage},
           {"cell", s.cell},
           {"shape", to_string(s.shape)},
           {"horn", theta2::to_json(s.horn)},
           {"checks", {{"pullback", s.checks.pullback}, {"cover", s.checks.cover}, {"injective", s.checks.injective}}}};
    if (!s.failures.empty()) r["failures"] = s.failures;
    if (!s.extra.is_null()) r["extra"] = s.extra;
    j["steps"].push_back(std::move(r));
  }
  j["final"] = {{"equals_target", equals_target}, {"certified_dim", certified_dim}};
  if (target_dim >= 0) j["final"]["target_dim"] = target_dim;
  j["notes"] = notes;
  j["failures"] = failures;
  j["status"] = ok() ? "decomposition certified" : "verification failed";
  return j;
}

// ---- gluing squares ----

GluingStep attach_cell(const CellularSetPtr& ambient, const Cell& phi, Subobject expected_W, HornTag horn) {
  return {ambient, yoneda_map(ambient, phi), std::move(expected_W), std::move(horn), ambient->format(phi), phi.shape};
}

namespace detail {

std::vector<std::string> label_strings(const std::vector<HyperfaceLabel>& S) {
  std::vector<std::string> out;
  for (auto& l : S) out.push_back(to_string(l));
  return out;
}

const std::vector<CellularOperator>& faces_of(const ThetaShape& s) {
  static std::mutex mu;
  static std::map<ThetaShape, std::vector<CellularOperator>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(s);
  if (it == cache.end()) it = cache.emplace(s, faces_into(s)).first;
  return it->second;
}

std::vector<Cell> source_cells(const CellularMap& f, int max_dim) {
  if (auto* R = dynamic_cast<const Representable*>(f.source.get())) {
    std::vector<Cell> out;
    for (auto& h : faces_of(R->shape()))
      if (h.src().dim() <= max_dim) out.push_back(to_cell(h));
    return out;
  }
  return nondegenerate_cells(*f.source, max_dim);
}

std::string describe(const CellularSet& X, const std::vector<Cell>& cells, std::size_t limit) {
  std::string out;
  for (std::size_t i = 0; i < cells.size() && i < limit; ++i) out += (i ? ", " : "") + X.format(cells[i]);
  if (cells.size() > limit) out += ", ...";
  return out;
}

std::vector<Cell> difference(const std::set<Cell>& a, const std::set<Cell>& b) {
  std::vector<Cell> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Agreement of two sets of nondegenerate cells through each dimension.
int agreement_dim(const std::set<Cell>& a, const std::set<Cell>& b, int max_dim) {
  std::vector<bool> bad(static_cast<std::size_t>(max_dim + 2), false);
  auto mark = [&](const std::vector<Cell>& cs) {
    for (auto& c : cs)
      if (c.shape.dim() <= max_dim) bad[static_cast<std::size_t>(c.shape.dim())] = true;
  };
  mark(difference(a, b));
  mark(difference(b, a));
  int d = -1;
  while (d + 1 <= max_dim && !bad[static_cast<std::size_t>(d + 1)]) ++d;
  return d;
}


}  // namespace detail

GluingResult verify_gluing(const Subobject& before, const GluingStep& step, int max_dim) {
  const auto& Z = *step.ambient;
  const auto& f = step.attach;
  GluingResult res{{}, before, {}};
  auto src = detail::source_cells(f, max_dim);

  std::set<Cell> actual_W, images_outside, expected_new;
  std::vector<Cell> image(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    image[i] = f.apply(src[i]);
    if (before.contains(image[i])) actual_W.insert(src[i]);
  }
  std::set<Cell> exp_W;
  for (auto& c : step.expected_W.cells())
    if (c.shape.dim() <= max_dim) exp_W.insert(c);

  // (a) pullback
  res.checks.pullback = actual_W == exp_W;
  if (!res.checks.pullback) {
    auto missing = detail::difference(exp_W, actual_W);
    auto extra = detail::difference(actual_W, exp_W);
    if (!missing.empty())
      res.failures.push_back("pullback lacks " + detail::describe(*f.source, missing, 4));
    if (!extra.empty()) res.failures.push_back("pullback has extra " + detail::describe(*f.source, extra, 4));
  }

  // (c) injective and nondegenerate outside W
  res.checks.injective = true;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (actual_W.count(src[i])) continue;
    if (!is_nondegenerate(Z, image[i])) {
      res.checks.injective = false;
      res.failures.push_back("degenerate image of " + f.source->format(src[i]));
    } else if (!images_outside.insert(image[i]).second) {
      res.checks.injective = false;
      res.failures.push_back("two cells map to " + Z.format(image[i]));
    }
    if (res.failures.size() > 8) break;
  }

  // (b) cover
  for (std::size_t i = 0; i < src.size(); ++i) {
    res.after.add(image[i]);
    if (!exp_W.count(src[i])) expected_new.insert(Z.decompose(image[i]).nondegenerate);
  }
  std::set<Cell> fresh = detail::difference_set(res.after.cells(), before.cells());
  res.checks.cover = fresh == expected_new;
  if (!res.checks.cover) {
    auto a = detail::difference(fresh, expected_new);
    auto b = detail::difference(expected_new, fresh);
    if (!a.empty()) res.failures.push_back("new cells not covered: " + detail::describe(Z, a, 4));
    if (!b.empty()) res.failures.push_back("predicted new cells already present: " + detail::describe(Z, b, 4));
  }
  return res;
}

namespace detail {

std::set<Cell> difference_set(const std::set<Cell>& a, const std::set<Cell>& b) {
  auto v = difference(a, b);
  return {v.begin(), v.end()};
}

// ---- engine ----

Engine::Engine(std::string script, json params, CellularSetPtr ambient, Subobject start, int max_dim,
               const ReplayOptions& opt)
    : Y(std::move(start)), ambient_(std::move(ambient)), max_dim_(max_dim), opt_(opt) {
  report.script = std::move(script);
  report.params = std::move(params);
  report.bound = max_dim;
}

namespace {

Subobject corrupt(const Subobject& W) {
  auto gens = W.generators();
  if (gens.empty()) {
    // nothing to drop: claim a vertex instead
    auto cells = nondegenerate_cells(W.ambient(), 0);
    return Subobject::generated(W.ambient_ptr(), {cells.front()});
  }
  std::sort(gens.begin(), gens.end());
  gens.pop_back();
  return Subobject::generated(W.ambient_ptr(), gens);
}

}  // namespace

bool Engine::glue(GluingStep step, const std::string& stage, json extra) {
  if (failed_) return false;
  const int index = counter_++;
  if (opt_.mutation == Mutation::DropStep && index == opt_.mutation_step) {
    report.notes.push_back("mutation: dropped step " + std::to_string(index));
    return true;
  }
  if (opt_.mutation == Mutation::CorruptW && index == opt_.mutation_step) {
    step.expected_W = corrupt(step.expected_W);
    report.notes.push_back("mutation: corrupted W at step " + std::to_string(index));
  }
  auto res = verify_gluing(Y, step, max_dim_);
  StepRecord rec;
  rec.index = index;
  rec.stage = stage;
  rec.cell = step.label;
  rec.shape = step.shape;
  rec.horn = step.horn;
  rec.checks = res.checks;
  rec.failures = res.failures;
  rec.extra = std::move(extra);
  report.steps.push_back(std::move(rec));
  Y = std::move(res.after);
  if (!res.checks.ok()) failed_ = true;
  return !failed_;
}

void Engine::side_check(bool ok, const std::string& what) {
  if (!ok) {
    report.failures.push_back(what);
    failed_ = true;
  }
}

void Engine::stage_check(const Subobject& target, const std::string& stage, int upto) {
  if (failed_) return;
  const int d = agreement_dim(Y.cells(), target.cells(), upto);
  if (d < upto)
    side_check(false, "stage " + stage + " differs from its target in dimension " + std::to_string(d + 1));
}

void Engine::finish(const Subobject& target, int target_dim) {
  report.target_dim = target_dim;
  const int d = agreement_dim(Y.cells(), target.cells(), target_dim);
  report.certified_dim = d;
  report.equals_target = !failed_ && d == target_dim;
}

void Engine::finish_truncated(const Subobject& target, int D) {
  report.target_dim = -1;
  const int d = agreement_dim(Y.cells(), target.cells(), D - 1);
  report.certified_dim = d;
  report.equals_target = !failed_ && d == D - 1;
  report.notes.push_back("cells of dimension >= " + std::to_string(d + 1) + " are uncertified (truncation D = " +
                         std::to_string(D) + ")");
}

void Engine::trivial(const std::string& why) {
  report.trivial = true;
  report.notes.push_back("trivial: " + why);
}

// ---- shapes and faces ----

HyperfaceLabel h(int k) { return HyperfaceLabel::horizontal(k); }
HyperfaceLabel h(int k, const Shuffle& s) { return HyperfaceLabel::horizontal(k, s); }
HyperfaceLabel v(int k, int i) { return HyperfaceLabel::vertical(k, i); }

std::vector<HyperfaceLabel> normalized(std::vector<HyperfaceLabel> S) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  return S;
}

bool contains(const std::vector<HyperfaceLabel>& S, const HyperfaceLabel& l) {
  return std::find(S.begin(), S.end(), l) != S.end();
}

CellularOperator outer_horizontal_face(const ThetaShape& s, bool last) {
  std::vector<int> q;
  std::vector<SimplicialOperator> comps;
  for (int l = last ? 1 : 2; l <= (last ? s.n - 1 : s.n); ++l) {
    q.push_back(s.qk(l));
    comps.push_back(SimplicialOperator::identity(s.qk(l)));
  }
  return {ThetaShape(s.n - 1, q), s, SimplicialOperator::face(s.n, last ? s.n : 0), comps};
}

Subobject full(const ThetaShape& s) { return Subobject::full(representable(s), s.dim()); }

json shape_params(const ThetaShape& s) { return {{"shape", to_string(s)}}; }

}  // namespace detail

using namespace detail;

// ---- pullbacks of hyperfaces ----

Subobject pullback_hyperface(const ThetaShape& s, const HyperfaceLabel& target, const HyperfaceLabel& along) {
  if (!hyperface_exists(s, target) || !hyperface_exists(s, along))
    throw RangeError("pullback_hyperface: labels must be hyperfaces of " + to_string(s));
  return pullback_along(hyperface_closure(s, {target}), to_cell(hyperface(s, along)));
}

// ---- admissibility ----

Admissibility is_admissible(const ThetaShape& s, const std::vector<HyperfaceLabel>& S_in) {
  auto S = normalized(S_in);
  for (auto& l : S)
    if (!hyperface_exists(s, l) || is_outer(s, l)) throw RangeError(to_string(l) + " is not an inner hyperface");
  Admissibility a;
  auto inner = normalized(inner_hyperface_labels(s));
  if (S == inner) {
    a.reason = "contains every inner hyperface";
    return a;
  }
  for (int k = 1; k <= s.n - 1; ++k) {
    auto all = shuffles(s.qk(k), s.qk(k + 1));
    std::vector<Shuffle> in;
    for (auto& sh : all)
      if (contains(S, h(k, sh))) in.push_back(sh);
    if (in.empty() || in.size() == all.size()) continue;
    if (a.k_S) {
      a.k_S.reset();
      a.reason = "two partial horizontal families";
      return a;
    }
    a.k_S = k;
    for (auto& x : in)
      for (auto& y : all)
        if (shuffle_leq(y, x) && std::find(in.begin(), in.end(), y) == in.end()) {
          a.reason = "partial family at k = " + std::to_string(k) + " is not downward closed";
          return a;
        }
  }
  a.admissible = true;
  return a;
}

// ---- T-set predictions ----

std::vector<HyperfaceLabel> sigma_T(const ThetaShape& s, const HyperfaceLabel& delta) {
  if (!hyperface_exists(s, delta) || !is_outer(s, delta)) throw RangeError("sigma_T needs an outer hyperface");
  const ThetaShape p = hyperface_source(s, delta);
  const int n = p.n;
  std::vector<HyperfaceLabel> T;
  auto zeros = [&](auto keep) {
    for (int l = 1; l <= n; ++l)
      if (p.qk(l) >= 1 && keep(l)) T.push_back(v(l, 0));
  };
  auto tops = [&](int below) {
    for (int l = 1; l < below && l <= n; ++l)
      if (p.qk(l) >= 1) T.push_back(v(l, p.qk(l)));
  };
  auto ends = [&](bool first, bool last) {
    if (first) T.push_back(h(0));
    if (last) T.push_back(h(n));
  };
  if (delta.is_vertical() && delta.i == 0) {  // (1)
    zeros([&](int l) { return l < delta.k; });
  } else if (delta.is_horizontal() && delta.k == 0) {  // (2)
    zeros([](int) { return true; });
  } else if (delta.is_horizontal()) {  // (3)
    zeros([](int) { return true; });
    if (hyperface_exists(s, h(0)) && hyperface_exists(p, h(0))) T.push_back(h(0));
  } else {
    const int k = delta.k;
    const bool p1 = n >= 1 && p.qk(1) == 0, pn = n >= 1 && p.qk(n) == 0;
    if (s.qk(k) >= 2) {  // (4a)
      zeros([](int) { return true; });
      tops(k);
      ends(p1, pn);
    } else if (k == 1) {  // (4b)
      zeros([](int) { return true; });
      ends(true, pn);
    } else if (k == s.n) {  // (4c)
      zeros([](int) { return true; });
      tops(n);
      ends(p1, true);
    } else {  // (4d)
      zeros([&](int l) { return l != k; });
      tops(k);
      ends(p1, pn);
    }
  }
  return normalized(T);
}

namespace {

std::string sigma_case(const ThetaShape& s, const HyperfaceLabel& d) {
  if (d.is_vertical() && d.i == 0) return "1";
  if (d.is_horizontal()) return d.k == 0 ? "2" : "3";
  if (s.qk(d.k) >= 2) return "4a";
  if (d.k == 1) return "4b";
  if (d.k == s.n) return "4c";
  return "4d";
}

int single_preimage(const std::vector<int>& a, int i) {
  int j = -1, count = 0;
  for (int x = 0; x < static_cast<int>(a.size()); ++x)
    if (a[static_cast<std::size_t>(x)] == i) {
      j = x;
      ++count;
    }
  return count == 1 ? j : -1;
}

bool full_family(const ThetaShape& s, const std::vector<HyperfaceLabel>& S, int l) {
  for (auto& sh : shuffles(s.qk(l), s.qk(l + 1)))
    if (!contains(S, h(l, sh))) return false;
  return true;
}

}  // namespace

std::vector<HyperfaceLabel> upsilon_T(const ThetaShape& s, const std::vector<HyperfaceLabel>& S, int k,
                                      const Shuffle& alpha) {
  const auto delta = h(k, alpha);
  const ThetaShape p = hyperface_source(s, delta);
  std::vector<HyperfaceLabel> Sp;
  for (auto& l : S)
    if (l != delta) Sp.push_back(l);
  std::vector<HyperfaceLabel> T;
  for (int l = 1; l <= k - 1; ++l)  // T1
    if (full_family(s, S, l))
      for (auto& g : shuffles(p.qk(l), p.qk(l + 1))) T.push_back(h(l, g));
  for (int l = k + 1; l <= s.n - 1; ++l)  // T1'
    if (full_family(s, S, l))
      for (auto& g : shuffles(p.qk(l - 1), p.qk(l))) T.push_back(h(l - 1, g));
  for (int j : alpha.lower_corners()) T.push_back(v(k, j));  // T2
  const auto a = alpha.alpha();
  const auto ap = alpha.alpha_prime();
  for (auto& l : Sp) {
    if (!l.is_vertical()) continue;
    if (l.k < k) T.push_back(v(l.k, l.i));              // T3
    if (l.k > k + 1) T.push_back(v(l.k - 1, l.i));      // T3'
    if (l.k == k) {                                     // T4
      if (int j = single_preimage(a, l.i); j >= 0) T.push_back(v(k, j));
    }
    if (l.k == k + 1) {                                 // T4'
      if (int j = single_preimage(ap, l.i); j >= 0) T.push_back(v(k, j));
    }
  }
  return normalized(T);
}

std::vector<HyperfaceLabel> alt_T(const ThetaShape& s, int k, const Shuffle& alpha, const Shuffle& beta) {
  const ThetaShape p = hyperface_source(s, h(k, beta));
  std::vector<HyperfaceLabel> T;
  for (int l = 1; l <= p.n - 1; ++l)  // T1
    for (auto& g : shuffles(p.qk(l), p.qk(l + 1))) T.push_back(h(l, g));
  for (int j : beta.upper_corners()) T.push_back(v(k, j));  // T2
  for (int l = 1; l <= p.n; ++l)                            // T3
    if (l != k)
      for (int j = 1; j <= p.qk(l) - 1; ++j) T.push_back(v(l, j));
  const auto b = beta.alpha();
  const auto bp = beta.alpha_prime();
  for (int i = 1; i <= s.qk(k) - 1; ++i)  // T4
    if (int j = single_preimage(b, i); j >= 0) T.push_back(v(k, j));
  for (int i = 1; i <= s.qk(k + 1) - 1; ++i)  // T4'
    if (int j = single_preimage(bp, i); j >= 0) T.push_back(v(k, j));
  for (int j : beta.lower_corners())  // T5
    if (b[static_cast<std::size_t>(j)] == alpha.alpha()[static_cast<std::size_t>(j)]) T.push_back(v(k, j));
  return normalized(T);
}

// ---- enumerations ----

std::vector<std::vector<HyperfaceLabel>> downward_closed_outer_sets(const ThetaShape& s) {
  auto order = outer_hyperface_order(s);
  std::vector<std::vector<HyperfaceLabel>> out;
  for (std::size_t t = 0; t <= order.size(); ++t) out.emplace_back(order.begin(), order.begin() + static_cast<long>(t));
  return out;
}

std::vector<std::vector<HyperfaceLabel>> admissible_sets(const ThetaShape& s, bool vertical_only) {
  std::vector<HyperfaceLabel> pool;
  for (auto& l : inner_hyperface_labels(s))
    if (!vertical_only || l.is_vertical()) pool.push_back(l);
  if (pool.size() > 20) throw RangeError("too many inner hyperfaces to enumerate");
  std::vector<std::vector<HyperfaceLabel>> out;
  for (unsigned mask = 0; mask < (1u << pool.size()); ++mask) {
    std::vector<HyperfaceLabel> S;
    for (std::size_t b = 0; b < pool.size(); ++b)
      if (mask & (1u << b)) S.push_back(pool[b]);
    if (is_admissible(s, S).admissible) out.push_back(S);
  }
  return out;
}

std::vector<std::vector<HyperfaceLabel>> oury_sets(const ThetaShape& s) {
  std::vector<std::vector<HyperfaceLabel>> out;
  for (int k = 1; k <= s.n; ++k) {
    const int r = s.qk(k) - 1;
    for (unsigned mask = 1; r >= 1 && mask < (1u << r); ++mask) {
      std::vector<HyperfaceLabel> S;
      for (int i = 1; i <= r; ++i)
        if (mask & (1u << (i - 1))) S.push_back(v(k, i));
      out.push_back(S);
    }
  }
  for (int k = 1; k <= s.n - 1; ++k) {
    auto all = shuffles(s.qk(k), s.qk(k + 1));
    for (unsigned mask = 1; mask < (1u << all.size()); ++mask) {
      bool upward = true;
      for (std::size_t a = 0; a < all.size() && upward; ++a)
        for (std::size_t b = 0; b < all.size() && upward; ++b)
          if ((mask & (1u << a)) && !(mask & (1u << b)) && shuffle_leq(all[a], all[b])) upward = false;
      if (!upward) continue;
      std::vector<HyperfaceLabel> S;
      for (std::size_t a = 0; a < all.size(); ++a)
        if (mask & (1u << a)) S.push_back(h(k, all[a]));
      out.push_back(S);
    }
  }
  return out;
}

std::vector<std::vector<Shuffle>> alt_index_sets(const Shuffle& alpha) {
  std::vector<Shuffle> I;
  for (auto& b : shuffles(alpha.m(), alpha.n()))
    if (shuffle_leq(alpha, b)) I.push_back(b);
  std::vector<std::vector<Shuffle>> out;
  for (unsigned mask = 1; mask < (1u << I.size()); ++mask) {
    bool down = true;
    for (std::size_t a = 0; a < I.size() && down; ++a)
      for (std::size_t b = 0; b < I.size() && down; ++b)
        if ((mask & (1u << a)) && !(mask & (1u << b)) && shuffle_leq(I[b], I[a])) down = false;
    if (!down) continue;
    std::vector<Shuffle> S;
    for (std::size_t a = 0; a < I.size(); ++a)
      if (mask & (1u << a)) S.push_back(I[a]);
    out.push_back(S);
  }
  return out;
}

// ---- replays on representables ----

namespace {

Inclusion horn_of(const HornTag& t, const ThetaShape& s) {
  if (t.family == "horn_h") return horn_h(s, t.k);
  if (t.family == "horn_v") return horn_v(s, t.k, t.i);
  return horn_h_alt(s, t.k, *t.shuffle);
}

GluingStep face_step(const ThetaShape& s, const CellularOperator& f, Subobject W, HornTag tag) {
  auto rep = representable(s);
  auto step = attach_cell(rep, to_cell(f), std::move(W), std::move(tag));
  step.label = to_string(f);
  return step;
}

HornTag tag(std::string family, std::vector<HyperfaceLabel> set = {}) {
  HornTag t;
  t.family = std::move(family);
  t.set = std::move(set);
  return t;
}

HornTag horn_tag_h(int k) {
  HornTag t{"horn_h", k, -1, std::nullopt, {}};
  return t;
}

HornTag horn_tag_v(int k, int i) { return {"horn_v", k, i, std::nullopt, {}}; }

}  // namespace

ReplayReport spine_anodyne(const ThetaShape& s, const ReplayOptions& opt) {
  Engine E("spine_anodyne", shape_params(s), representable(s), spine(s).domain, s.dim(), opt);
  E.report.ordering = "(dim, lexicographic operator order)";
  if (is_mono_vertebral(s)) {
    E.trivial("mono-vertebral shape: the spine is the whole representable");
    E.finish(full(s), s.dim());
    return E.report;
  }
  std::vector<CellularOperator> fill;
  if (s.n == 1) {
    const int q = s.qk(1);
    const ThetaShape p(1, {q - 1});
    E.glue(face_step(s, hyperface(s, v(1, q)), spine(p).domain, tag("spine")), "dagger");
    E.glue(face_step(s, hyperface(s, v(1, 0)), spine_S(p, {v(1, q - 1)}).domain, tag("spine_S", {v(1, q - 1)})),
           "double_dagger");
    for (auto& f : faces_of(s)) {
      if (!f.horizontal().is_identity()) continue;
      const auto& vals = f.component(1).values();
      auto has = [&](int x) { return std::find(vals.begin(), vals.end(), x) != vals.end(); };
      if (has(0) && has(1) && has(q)) fill.push_back(f);
    }
  } else {
    auto last = outer_horizontal_face(s, true);
    auto first = outer_horizontal_face(s, false);
    E.glue(face_step(s, last, spine(last.src()).domain, tag("spine")), "prime");
    auto sub = spine(first.src()).domain;
    sub.add(to_cell(outer_horizontal_face(first.src(), true)));
    E.glue(face_step(s, first, sub, tag("spine_prime")), "double_prime");
    for (auto& f : faces_of(s)) {
      const auto& a = f.horizontal();
      if (a.src() >= 2 && a(0) == 0 && a(1) == 1 && a(a.src()) == s.n) fill.push_back(f);
    }
  }
  std::sort(fill.begin(), fill.end(), [](auto& a, auto& b) { return to_cell(a) < to_cell(b); });
  for (auto& f : fill) {
    auto t = s.n == 1 ? horn_tag_v(1, 1) : horn_tag_h(1);
    E.glue(face_step(s, f, horn_of(t, f.src()).domain, t), "fill");
  }
  E.finish(full(s), s.dim());
  return E.report;
}

ReplayReport sigma_S(const ThetaShape& s, const std::vector<HyperfaceLabel>& S, const ReplayOptions& opt) {
  auto order = outer_hyperface_order(s);
  if (S.size() > order.size() || !std::equal(S.begin(), S.end(), order.begin()))
    if (normalized(S) != normalized(std::vector<HyperfaceLabel>(order.begin(), order.begin() + static_cast<long>(std::min(S.size(), order.size())))))
      throw RangeError("S must be a downward closed set of outer hyperfaces");
  json params = shape_params(s);
  params["S"] = label_strings(S);
  Engine E("sigma_S", params, representable(s), spine(s).domain, s.dim(), opt);
  E.report.ordering = "prec";
  if (S.empty()) E.trivial("S is empty");
  for (std::size_t t = 0; t < S.size(); ++t) {
    const auto& d = order[t];
    const ThetaShape p = hyperface_source(s, d);
    auto T = sigma_T(s, d);
    auto porder = outer_hyperface_order(p);
    const bool down = T.size() <= porder.size() &&
                      normalized(std::vector<HyperfaceLabel>(porder.begin(), porder.begin() + static_cast<long>(T.size()))) == T;
    E.side_check(down, "T for " + to_string(d) + " is not downward closed");
    if (T.size() >= t + 1)
      E.report.notes.push_back("|T| = " + std::to_string(T.size()) + " is not below |S| = " + std::to_string(t + 1) +
                               " at " + to_string(d));
    json extra{{"case", sigma_case(s, d)}, {"T", label_strings(T)}, {"source", to_string(p)}};
    E.glue(face_step(s, hyperface(s, d), spine_S(p, T).domain, tag("spine_S", T)), "sigma", extra);
  }
  E.finish(spine_S(s, S).domain, s.dim());
  return E.report;
}

namespace {

void require_inner(const ThetaShape& s, const std::vector<HyperfaceLabel>& S) {
  for (auto& l : S)
    if (!hyperface_exists(s, l) || is_outer(s, l)) throw RangeError(to_string(l) + " is not an inner hyperface");
}

// Adds the inner vertical hyperface d to Upsilon^{current}.
void vertical_step(Engine& E, const ThetaShape& s, std::vector<HyperfaceLabel>& current, const HyperfaceLabel& d) {
  const ThetaShape p = hyperface_source(s, d);
  std::vector<HyperfaceLabel> T;
  for (auto& l : current)
    T.push_back(l.is_vertical() && l.k == d.k && l.i > d.i ? v(l.k, l.i - 1) : l);
  T = normalized(T);
  E.side_check(is_admissible(p, T).admissible, "T for " + to_string(d) + " is not admissible");
  E.side_check(T.size() == current.size(), "pullback is not a bijection onto T");
  auto square = pullback_along(upsilon_S(s, {}).domain, to_cell(hyperface(s, d)));
  E.side_check(same_cells(square, upsilon_S(p, {}).domain), "Upsilon^0 square is not a pullback at " + to_string(d));
  json extra{{"T", label_strings(T)}, {"source", to_string(p)}, {"square", true}};
  E.glue(face_step(s, hyperface(s, d), upsilon_S(p, T).domain, tag("upsilon", T)), "vertical", extra);
  current.push_back(d);
}

}  // namespace

ReplayReport upsilon_vertical(const ThetaShape& s, const std::vector<HyperfaceLabel>& S_in,
                              const ReplayOptions& opt) {
  auto S = normalized(S_in);
  require_inner(s, S);
  for (auto& l : S)
    if (!l.is_vertical()) throw RangeError("upsilon_vertical takes vertical hyperfaces");
  if (!is_admissible(s, S).admissible) throw RangeError("S is not admissible");
  json params = shape_params(s);
  params["S"] = label_strings(S);
  if (is_mono_vertebral(s)) {
    Engine E("upsilon_vertical", params, representable(s), full(s), s.dim(), opt);
    E.trivial("mono-vertebral shape");
    E.finish(full(s), s.dim());
    return E.report;
  }
  Engine E("upsilon_vertical", params, representable(s), upsilon_S(s, {}).domain, s.dim(), opt);
  E.report.ordering = "label order";
  if (S.empty()) E.trivial("S is empty");
  std::vector<HyperfaceLabel> current;
  for (auto& d : S) vertical_step(E, s, current, d);
  E.finish(upsilon_S(s, S).domain, s.dim());
  return E.report;
}

ReplayReport upsilon_full(const ThetaShape& s, const std::vector<HyperfaceLabel>& S_in, const ReplayOptions& opt) {
  auto S = normalized(S_in);
  require_inner(s, S);
  auto adm = is_admissible(s, S);
  if (!adm.admissible) throw RangeError("S is not admissible: " + adm.reason);
  json params = shape_params(s);
  params["S"] = label_strings(S);
  if (is_mono_vertebral(s)) {
    Engine E("upsilon_full", params, representable(s), full(s), s.dim(), opt);
    E.trivial("mono-vertebral shape");
    E.finish(full(s), s.dim());
    return E.report;
  }
  // removal order for the horizontal members
  std::vector<std::pair<std::vector<HyperfaceLabel>, HyperfaceLabel>> removals;
  auto R = S;
  while (std::any_of(R.begin(), R.end(), [](auto& l) { return l.is_horizontal(); })) {
    auto a = is_admissible(s, R);
    int k = a.k_S.value_or(0);
    if (!a.k_S)
      for (auto& l : R)
        if (l.is_horizontal()) {
          k = l.k;
          break;
        }
    std::vector<Shuffle> in;
    for (auto& l : R)
      if (l.is_horizontal() && l.k == k) in.push_back(*l.shuffle);
    std::optional<Shuffle> pick;
    for (auto& x : in) {
      bool maximal = std::none_of(in.begin(), in.end(), [&](auto& y) { return y != x && shuffle_leq(x, y); });
      if (maximal && (!pick || *pick < x)) pick = x;
    }
    removals.push_back({R, h(k, *pick)});
    R.erase(std::find(R.begin(), R.end(), h(k, *pick)));
  }
  Engine E("upsilon_full", params, representable(s), upsilon_S(s, {}).domain, s.dim(), opt);
  E.report.ordering = "verticals in label order, then horizontals by reverse removal of maximal shuffles";
  if (S.empty()) E.trivial("S is empty");
  std::vector<HyperfaceLabel> current;
  for (auto& d : R) vertical_step(E, s, current, d);
  for (auto it = removals.rbegin(); it != removals.rend(); ++it) {
    const auto& [Scur, d] = *it;
    const ThetaShape p = hyperface_source(s, d);
    auto T = upsilon_T(s, Scur, d.k, *d.shuffle);
    auto ta = is_admissible(p, T);
    E.side_check(ta.admissible, "T for " + to_string(d) + " is not admissible: " + ta.reason);
    E.side_check(is_admissible(s, Scur).admissible, "intermediate set is not admissible");
    E.side_check(T.size() < Scur.size(), "|T| >= |S| at " + to_string(d));
    auto square = pullback_along(upsilon_S(s, {}).domain, to_cell(hyperface(s, d)));
    E.side_check(same_cells(square, upsilon_S(p, {}).domain), "claim 0 square fails at " + to_string(d));
    json extra{{"T", label_strings(T)}, {"source", to_string(p)}, {"T_size", T.size()}, {"S_size", Scur.size()}};
    E.glue(face_step(s, hyperface(s, d), upsilon_S(p, T).domain, tag("upsilon", T)), "horizontal", extra);
    current.push_back(d);
  }
  E.finish(upsilon_S(s, S).domain, s.dim());
  return E.report;
}

ReplayReport oury_from_alt(const ThetaShape& s, const std::vector<HyperfaceLabel>& S_in, const ReplayOptions& opt) {
  auto S = normalized(S_in);
  if (S.empty()) throw RangeError("S must be non-empty");
  require_inner(s, S);
  const bool vertical = S.front().is_vertical();
  const int k = S.front().k;
  for (auto& l : S)
    if (l.is_vertical() != vertical || l.k != k) throw RangeError("S must be k-th hyperfaces of one kind");
  if (!vertical) {
    for (auto& a : shuffles(s.qk(k), s.qk(k + 1)))
      for (auto& l : S)
        if (shuffle_leq(*l.shuffle, a) && !contains(S, h(k, a))) throw RangeError("S must be upward closed");
  }
  json params = shape_params(s);
  params["S"] = label_strings(S);
  Engine E("oury_from_alt", params, representable(s), lambda_S(s, S).domain, s.dim(), opt);
  E.report.ordering = vertical ? "smallest index first" : "lexicographically smallest minimal shuffle first";
  auto R = S;
  while (R.size() >= 2) {
    HyperfaceLabel d = R.front();
    if (!vertical)
      for (auto& l : R)
        if (std::none_of(R.begin(), R.end(), [&](auto& o) { return o != l && shuffle_leq(*o.shuffle, *l.shuffle); })) {
          d = l;
          break;
        }
    const ThetaShape p = hyperface_source(s, d);
    std::vector<HyperfaceLabel> T;
    if (vertical) {
      for (auto& l : R)
        if (l != d) T.push_back(v(k, l.i < d.i ? l.i : l.i - 1));
    } else {
      for (int i : d.shuffle->upper_corners()) T.push_back(v(k, i));
    }
    T = normalized(T);
    E.side_check(!T.empty(), "empty T at " + to_string(d));
    json extra{{"T", label_strings(T)}, {"source", to_string(p)}};
    E.glue(face_step(s, hyperface(s, d), lambda_S(p, T).domain, tag("lambda", T)), vertical ? "vertical" : "horizontal",
           extra);
    R.erase(std::find(R.begin(), R.end(), d));
  }
  const auto& last = R.front();
  HornTag t = vertical ? horn_tag_v(k, last.i) : HornTag{"horn_h_alt", k, -1, last.shuffle, {}};
  E.glue(face_step(s, identity(s), horn_of(t, s).domain, t), "generator");
  E.finish(full(s), s.dim());
  return E.report;
}

ReplayReport alt_trivial(const ThetaShape& s, int k, const Shuffle& alpha, const std::vector<Shuffle>& I_S_in,
                         const ReplayOptions& opt) {
  if (k < 1 || k > s.n - 1 || alpha.m() != s.qk(k) || alpha.n() != s.qk(k + 1))
    throw RangeError("alt_trivial needs 1 <= k <= n-1 and a matching shuffle");
  std::vector<Shuffle> I;
  for (auto& b : shuffles(alpha.m(), alpha.n()))
    if (shuffle_leq(alpha, b)) I.push_back(b);
  std::set<Shuffle> IS(I_S_in.begin(), I_S_in.end());
  if (IS.empty()) throw RangeError("I_S must be non-empty");
  for (auto& b : IS) {
    if (std::find(I.begin(), I.end(), b) == I.end()) throw RangeError("I_S must lie above alpha");
    for (auto& c : I)
      if (shuffle_leq(c, b) && !IS.count(c)) throw RangeError("I_S must be downward closed in I");
  }
  json params = shape_params(s);
  params["k"] = k;
  params["alpha"] = to_string(alpha);
  std::vector<std::string> is;
  for (auto& b : IS) is.push_back(to_string(b));
  params["I_S"] = is;
  auto labels_of = [&](const std::set<Shuffle>& X) {
    std::vector<HyperfaceLabel> L;
    for (auto& b : X) L.push_back(h(k, b));
    return L;
  };
  // J_0 = I_S, adding the lexicographically smallest minimal element each time
  std::vector<Shuffle> chain;
  std::set<Shuffle> J = IS;
  while (J.size() < I.size()) {
    for (auto& b : I) {
      if (J.count(b)) continue;
      bool minimal = std::none_of(I.begin(), I.end(), [&](auto& c) { return !J.count(c) && c != b && shuffle_leq(c, b); });
      if (minimal) {
        chain.push_back(b);
        J.insert(b);
        break;
      }
    }
  }
  std::set<Shuffle> all(I.begin(), I.end());
  Engine E("alt_trivial", params, representable(s), lambda_S(s, labels_of(all)).domain, s.dim(), opt);
  E.report.ordering = "reverse of the chain adding lexicographically smallest minimal elements";
  // base: Lambda^I is an Upsilon^S with S admissible
  std::vector<HyperfaceLabel> base;
  for (auto& l : inner_hyperface_labels(s))
    if (!(l.is_horizontal() && l.k == k && all.count(*l.shuffle))) base.push_back(l);
  E.side_check(is_admissible(s, base).admissible, "base set is not admissible");
  E.side_check(same_cells(upsilon_S(s, base).domain, E.Y), "Lambda^I differs from Upsilon^S");
  if (chain.empty()) E.trivial("I_S = I");
  std::size_t S_size = base.size();
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    ++S_size;
    const auto& beta = *it;
    const auto d = h(k, beta);
    const ThetaShape p = hyperface_source(s, d);
    auto T = alt_T(s, k, alpha, beta);
    auto ta = is_admissible(p, T);
    E.side_check(ta.admissible, "T for " + to_string(d) + " is not admissible: " + ta.reason);
    E.side_check(T.size() < S_size, "|T| >= |S| at " + to_string(d));
    json extra{{"T", label_strings(T)}, {"source", to_string(p)}, {"T_size", T.size()}, {"S_size", S_size}};
    E.glue(face_step(s, hyperface(s, d), upsilon_S(p, T).domain, tag("upsilon", T)), "horizontal", extra);
  }
  E.finish(lambda_S(s, labels_of(IS)).domain, s.dim());
  return E.report;
}

}  // namespace theta2
