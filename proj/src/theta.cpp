#include "theta2/theta.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <numeric>

#include "theta2/error.hpp"

namespace theta2 {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw ParseError("expected integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '{' || c == '[' || c == '<' || c == '(') ++depth;
    if (c == '}' || c == ']' || c == '>' || c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

}  // namespace

// ---- shapes ----

ThetaShape::ThetaShape(int n_, std::vector<int> q_) : n(n_), q(std::move(q_)) {
  if (n < 0) throw RangeError("negative shape length");
  if (static_cast<int>(q.size()) != n) throw RangeError("shape [n;q] needs n entries in q");
  for (int x : q)
    if (x < 0) throw RangeError("negative shape entry");
}

int ThetaShape::dim() const { return n + std::accumulate(q.begin(), q.end(), 0); }

ThetaShape ThetaShape::reversed() const { return {n, std::vector<int>(q.rbegin(), q.rend())}; }

std::strong_ordering ThetaShape::operator<=>(const ThetaShape& o) const {
  if (auto c = dim() <=> o.dim(); c != 0) return c;
  if (auto c = n <=> o.n; c != 0) return c;
  return q <=> o.q;
}

std::string to_string(const ThetaShape& s) {
  if (s.n == 0) return "[0]";
  std::string out = "[" + std::to_string(s.n) + ";";
  for (int k = 0; k < s.n; ++k) {
    if (k) out += ',';
    out += std::to_string(s.q[static_cast<std::size_t>(k)]);
  }
  return out + "]";
}

ThetaShape parse_shape(std::string_view text) {
  text = trim(text);
  if (text.size() < 3 || text.front() != '[' || text.back() != ']')
    throw ParseError("expected shape [n;q..], got '" + std::string(text) + "'");
  text = text.substr(1, text.size() - 2);
  auto semi = text.find(';');
  int n = parse_int(semi == std::string_view::npos ? text : text.substr(0, semi));
  if (n < 0) throw ParseError("negative shape length");
  std::vector<int> q;
  if (semi == std::string_view::npos) {
    q.assign(static_cast<std::size_t>(n), 0);
  } else {
    for (auto part : split_top(text.substr(semi + 1), ',')) q.push_back(parse_int(part));
    if (static_cast<int>(q.size()) != n) throw ParseError("shape has wrong number of entries");
  }
  try {
    return {n, q};
  } catch (const RangeError& e) {
    throw ParseError(e.what());
  }
}

std::vector<ThetaShape> all_shapes(int max_dim) {
  std::vector<ThetaShape> out;
  for (int n = 0; n <= max_dim; ++n) {
    std::vector<int> q(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int k, int budget) {
      if (k == n) {
        out.emplace_back(n, q);
        return;
      }
      for (int v = 0; v <= budget; ++v) {
        q[static_cast<std::size_t>(k)] = v;
        rec(k + 1, budget - v);
      }
    };
    rec(0, max_dim - n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- operators ----

CellularOperator::CellularOperator(ThetaShape src, ThetaShape dst, SimplicialOperator horizontal,
                                   std::vector<SimplicialOperator> components)
    : src_(std::move(src)),
      dst_(std::move(dst)),
      horizontal_(std::move(horizontal)),
      components_(std::move(components)) {
  if (horizontal_.src() != src_.n || horizontal_.dst() != dst_.n)
    throw InvalidOperator("horizontal part does not match shapes " + to_string(src_) + " -> " +
                          to_string(dst_));
  const int lo = horizontal_(0);
  const int hi = horizontal_(src_.n);
  if (static_cast<int>(components_.size()) != hi - lo)
    throw InvalidOperator("expected " + std::to_string(hi - lo) + " components, got " +
                          std::to_string(components_.size()));
  for (int k = lo + 1; k <= hi; ++k) {
    const auto& c = components_[static_cast<std::size_t>(k - lo - 1)];
    const int l = source_interval(k);
    if (c.src() != src_.qk(l) || c.dst() != dst_.qk(k))
      throw InvalidOperator("component " + std::to_string(k) + " has wrong arity");
  }
}

bool CellularOperator::covers(int k) const {
  return horizontal_(0) < k && k <= horizontal_(src_.n);
}

const SimplicialOperator& CellularOperator::component(int k) const {
  if (!covers(k)) throw RangeError("component " + std::to_string(k) + " is not covered");
  return components_[static_cast<std::size_t>(k - horizontal_(0) - 1)];
}

int CellularOperator::source_interval(int k) const {
  for (int l = 1; l <= src_.n; ++l)
    if (horizontal_(l - 1) < k && k <= horizontal_(l)) return l;
  throw RangeError("component " + std::to_string(k) + " is not covered");
}

CellularOperator identity(const ThetaShape& s) {
  std::vector<SimplicialOperator> comps;
  for (int k = 1; k <= s.n; ++k) comps.push_back(SimplicialOperator::identity(s.qk(k)));
  return {s, s, SimplicialOperator::identity(s.n), comps};
}

CellularOperator compose(const CellularOperator& f, const CellularOperator& g) {
  if (!(g.dst() == f.src()))
    throw ArityMismatch("cannot compose " + to_string(f) + " after " + to_string(g));
  auto h = compose(f.horizontal(), g.horizontal());
  std::vector<SimplicialOperator> comps;
  for (int k = h(0) + 1; k <= h(h.src()); ++k) {
    const int i = f.source_interval(k);
    comps.push_back(compose(f.component(k), g.component(i)));
  }
  return {g.src(), f.dst(), h, comps};
}

namespace {

// Whether the components in interval l of f are jointly injective on [p_l].
bool jointly_monic(const CellularOperator& f, int l) {
  const auto& a = f.horizontal();
  const int p = f.src().qk(l);
  if (a(l - 1) == a(l)) return p == 0;
  for (int j = 1; j <= p; ++j) {
    bool differs = false;
    for (int k = a(l - 1) + 1; k <= a(l) && !differs; ++k)
      differs = f.component(k)(j) != f.component(k)(j - 1);
    if (!differs) return false;
  }
  return true;
}

}  // namespace

bool is_face(const CellularOperator& f) {
  if (!f.horizontal().is_mono()) return false;
  for (int l = 1; l <= f.src().n; ++l)
    if (!jointly_monic(f, l)) return false;
  return true;
}

bool is_degeneracy(const CellularOperator& f) {
  if (!f.horizontal().is_epi()) return false;
  for (const auto& c : f.components())
    if (!c.is_epi()) return false;
  return true;
}

CellularFlags classify(const CellularOperator& f) {
  CellularFlags fl;
  fl.face = is_face(f);
  fl.degeneracy = is_degeneracy(f);
  fl.inner = f.horizontal().preserves_endpoints();
  fl.horizontal = true;
  fl.inert = f.horizontal().is_inert();
  for (const auto& c : f.components()) {
    fl.inner = fl.inner && c.preserves_endpoints();
    fl.horizontal = fl.horizontal && c.is_epi();
    fl.inert = fl.inert && c.is_inert();
  }
  fl.outer = !fl.inner;
  fl.vertical = f.horizontal().is_identity();
  return fl;
}

int codim(const CellularOperator& face) {
  if (!is_face(face)) throw InvalidOperator("codim of a non-face");
  return face.dst().dim() - face.src().dim();
}

// ---- hyperfaces ----

std::string to_string(const HyperfaceLabel& l) {
  if (l.is_vertical()) return "v" + std::to_string(l.k) + ":" + std::to_string(l.i);
  std::string s = "h" + std::to_string(l.k);
  if (l.shuffle) s += ":" + to_string(*l.shuffle);
  return s;
}

HyperfaceLabel parse_hyperface_label(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || (text.front() != 'h' && text.front() != 'v'))
    throw ParseError("expected hyperface label like h0, h1:<..>, v2:1; got '" + std::string(text) + "'");
  const bool vertical = text.front() == 'v';
  text.remove_prefix(1);
  auto colon = text.find(':');
  int k = parse_int(colon == std::string_view::npos ? text : text.substr(0, colon));
  if (vertical) {
    if (colon == std::string_view::npos) throw ParseError("vertical label needs ':i'");
    return HyperfaceLabel::vertical(k, parse_int(text.substr(colon + 1)));
  }
  if (colon == std::string_view::npos) return HyperfaceLabel::horizontal(k);
  return HyperfaceLabel::horizontal(k, parse_shuffle(text.substr(colon + 1)));
}

std::vector<HyperfaceLabel> parse_hyperface_set(std::string_view text) {
  std::vector<HyperfaceLabel> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    if (!trim(cur).empty()) out.push_back(parse_hyperface_label(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == '<' || c == '{') ++depth;
    if (c == '>' || c == '}') --depth;
    if (depth == 0 && (c == ';' || std::isspace(static_cast<unsigned char>(c)))) {
      flush();
      continue;
    }
    cur += c;
  }
  flush();
  return out;
}

bool hyperface_exists(const ThetaShape& s, const HyperfaceLabel& l) {
  if (l.is_vertical()) return l.k >= 1 && l.k <= s.n && s.qk(l.k) >= 1 && l.i >= 0 && l.i <= s.qk(l.k);
  if (s.n < 1) return false;
  if (l.k == 0) return !l.shuffle && s.qk(1) == 0;
  if (l.k == s.n) return !l.shuffle && s.qk(s.n) == 0;
  if (l.k < 1 || l.k > s.n - 1 || !l.shuffle) return false;
  return l.shuffle->m() == s.qk(l.k) && l.shuffle->n() == s.qk(l.k + 1);
}

bool is_outer(const ThetaShape& s, const HyperfaceLabel& l) {
  if (l.is_vertical()) return l.i == 0 || l.i == s.qk(l.k);
  return l.k == 0 || l.k == s.n;
}

ThetaShape hyperface_source(const ThetaShape& s, const HyperfaceLabel& l) {
  if (!hyperface_exists(s, l)) throw RangeError("no hyperface " + to_string(l) + " of " + to_string(s));
  auto q = s.q;
  if (l.is_vertical()) {
    q[static_cast<std::size_t>(l.k - 1)] -= 1;
    return {s.n, q};
  }
  if (l.k == 0) return {s.n - 1, std::vector<int>(q.begin() + 1, q.end())};
  if (l.k == s.n) return {s.n - 1, std::vector<int>(q.begin(), q.end() - 1)};
  std::vector<int> p(q.begin(), q.begin() + (l.k - 1));
  p.push_back(s.qk(l.k) + s.qk(l.k + 1));
  p.insert(p.end(), q.begin() + (l.k + 1), q.end());
  return {s.n - 1, p};
}

CellularOperator hyperface(const ThetaShape& s, const HyperfaceLabel& l) {
  auto src = hyperface_source(s, l);
  std::vector<SimplicialOperator> comps;
  if (l.is_vertical()) {
    for (int k = 1; k <= s.n; ++k)
      comps.push_back(k == l.k ? SimplicialOperator::face(s.qk(k), l.i)
                               : SimplicialOperator::identity(s.qk(k)));
    return {src, s, SimplicialOperator::identity(s.n), comps};
  }
  auto horiz = SimplicialOperator::face(s.n, l.k);
  for (int k = 1; k <= s.n; ++k) {
    if (l.k == 0 && k == 1) continue;
    if (l.k == s.n && k == s.n) continue;
    if (l.shuffle && k == l.k) {
      comps.push_back(l.shuffle->alpha_operator());
    } else if (l.shuffle && k == l.k + 1) {
      comps.push_back(l.shuffle->alpha_prime_operator());
    } else {
      comps.push_back(SimplicialOperator::identity(s.qk(k)));
    }
  }
  return {src, s, horiz, comps};
}

std::vector<HyperfaceLabel> hyperface_labels(const ThetaShape& s) {
  std::vector<HyperfaceLabel> out;
  for (int k = 0; k <= s.n && s.n >= 1; ++k) {
    if (k == 0 || k == s.n) {
      if (hyperface_exists(s, HyperfaceLabel::horizontal(k))) out.push_back(HyperfaceLabel::horizontal(k));
    } else {
      for (auto& sh : shuffles(s.qk(k), s.qk(k + 1))) out.push_back(HyperfaceLabel::horizontal(k, sh));
    }
  }
  for (int k = 1; k <= s.n; ++k)
    if (s.qk(k) >= 1)
      for (int i = 0; i <= s.qk(k); ++i) out.push_back(HyperfaceLabel::vertical(k, i));
  return out;
}

std::vector<Hyperface> hyperfaces(const ThetaShape& s) {
  std::vector<Hyperface> out;
  for (auto& l : hyperface_labels(s)) out.push_back({l, hyperface(s, l)});
  return out;
}

std::vector<HyperfaceLabel> inner_hyperface_labels(const ThetaShape& s) {
  std::vector<HyperfaceLabel> out;
  for (auto& l : hyperface_labels(s))
    if (!is_outer(s, l)) out.push_back(l);
  return out;
}

std::vector<HyperfaceLabel> outer_hyperface_labels(const ThetaShape& s) {
  std::vector<HyperfaceLabel> out;
  for (auto& l : hyperface_labels(s))
    if (is_outer(s, l)) out.push_back(l);
  return out;
}

long long hyperface_count_formula(const ThetaShape& s) {
  if (s.n == 0) return 0;
  long long c = (s.qk(1) == 0) + (s.qk(s.n) == 0);
  for (int k = 1; k <= s.n - 1; ++k) c += binomial(s.qk(k) + s.qk(k + 1), s.qk(k));
  for (int k = 1; k <= s.n; ++k)
    if (s.qk(k) >= 1) c += s.qk(k) + 1;
  return c;
}

std::vector<HyperfaceLabel> outer_hyperface_order(const ThetaShape& s) {
  std::vector<HyperfaceLabel> out;
  if (s.n == 0) return out;
  for (int k = 1; k <= s.n; ++k)
    if (s.qk(k) >= 1) out.push_back(HyperfaceLabel::vertical(k, 0));
  if (s.qk(1) == 0) out.push_back(HyperfaceLabel::horizontal(0));
  if (s.qk(s.n) == 0) out.push_back(HyperfaceLabel::horizontal(s.n));
  for (int k = 1; k <= s.n; ++k)
    if (s.qk(k) >= 1) out.push_back(HyperfaceLabel::vertical(k, s.qk(k)));
  return out;
}

// ---- factorization ----

ReedyFactorization reedy_factor(const CellularOperator& f) {
  const auto& a = f.horizontal();
  auto [s, d] = ez_factor(a);
  const int m = f.src().n;
  const int mp = d.src();
  std::vector<int> r(static_cast<std::size_t>(mp));
  std::vector<SimplicialOperator> degen_comps;
  std::vector<SimplicialOperator> face_comps;
  for (int ip = 1; ip <= mp; ++ip) {
    int l = 1;
    while (l <= m && !(s(l - 1) == ip - 1 && s(l) == ip)) ++l;
    const int p = f.src().qk(l);
    std::vector<std::vector<int>> tuples;
    std::vector<int> e;
    for (int j = 0; j <= p; ++j) {
      std::vector<int> t;
      for (int k = d(ip - 1) + 1; k <= d(ip); ++k) t.push_back(f.component(k)(j));
      if (tuples.empty() || tuples.back() != t) tuples.push_back(t);
      e.push_back(static_cast<int>(tuples.size()) - 1);
    }
    const int rr = static_cast<int>(tuples.size()) - 1;
    r[static_cast<std::size_t>(ip - 1)] = rr;
    degen_comps.emplace_back(rr, e);
    for (int k = d(ip - 1) + 1; k <= d(ip); ++k) {
      std::vector<int> v;
      for (auto& t : tuples) v.push_back(t[static_cast<std::size_t>(k - d(ip - 1) - 1)]);
      face_comps.emplace_back(f.dst().qk(k), v);
    }
  }
  ThetaShape mid(mp, r);
  return {CellularOperator(f.src(), mid, s, degen_comps), CellularOperator(mid, f.dst(), d, face_comps)};
}

std::optional<CellularOperator> factor_through(const CellularOperator& f, const CellularOperator& g) {
  if (!(f.dst() == g.dst())) throw ArityMismatch("factor_through: different targets");
  if (!is_face(g)) throw InvalidOperator("factor_through: g must be a face");
  const auto& ag = g.horizontal();
  const auto& af = f.horizontal();
  std::vector<int> h;
  for (int x : af.values()) {
    auto it = std::find(ag.values().begin(), ag.values().end(), x);
    if (it == ag.values().end()) return std::nullopt;
    h.push_back(static_cast<int>(it - ag.values().begin()));
  }
  SimplicialOperator ah(g.src().n, h);
  std::vector<SimplicialOperator> comps;
  for (int kp = ah(0) + 1; kp <= ah(ah.src()); ++kp) {
    int l = 1;
    while (!(ah(l - 1) < kp && kp <= ah(l))) ++l;
    const int p = f.src().qk(l);
    const int rk = g.src().qk(kp);
    std::vector<int> v;
    for (int j = 0; j <= p; ++j) {
      int found = -1;
      for (int y = 0; y <= rk && found < 0; ++y) {
        bool ok = true;
        for (int k = ag(kp - 1) + 1; k <= ag(kp) && ok; ++k) ok = g.component(k)(y) == f.component(k)(j);
        if (ok) found = y;
      }
      if (found < 0) return std::nullopt;
      v.push_back(found);
    }
    for (std::size_t j = 1; j < v.size(); ++j)
      if (v[j] < v[j - 1]) return std::nullopt;
    comps.emplace_back(rk, v);
  }
  return CellularOperator(f.src(), g.src(), ah, comps);
}

// ---- dualities ----

CellularOperator co_dual(const CellularOperator& f) {
  std::vector<SimplicialOperator> comps;
  for (const auto& c : f.components()) comps.push_back(op_dual(c));
  return {f.src(), f.dst(), f.horizontal(), comps};
}

CellularOperator op_dual(const CellularOperator& f) {
  std::vector<SimplicialOperator> comps(f.components().rbegin(), f.components().rend());
  return {f.src().reversed(), f.dst().reversed(), op_dual(f.horizontal()), comps};
}

// ---- spines ----

std::vector<CellularOperator> vertebrae(const ThetaShape& s) {
  std::vector<CellularOperator> out;
  if (s.n == 0) {
    out.push_back(identity(s));
    return out;
  }
  for (int k = 1; k <= s.n; ++k) {
    SimplicialOperator a(s.n, {k - 1, k});
    if (s.qk(k) == 0) {
      out.emplace_back(ThetaShape(1, {0}), s, a, std::vector<SimplicialOperator>{SimplicialOperator::identity(0)});
    } else {
      for (int i = 1; i <= s.qk(k); ++i)
        out.emplace_back(ThetaShape(1, {1}), s, a,
                         std::vector<SimplicialOperator>{SimplicialOperator(s.qk(k), {i - 1, i})});
    }
  }
  return out;
}

bool is_mono_vertebral(const ThetaShape& s) { return vertebrae(s).size() == 1; }

// ---- enumeration ----

namespace {

template <class F>
void product_of(const std::vector<std::vector<SimplicialOperator>>& choices, F&& emit) {
  std::vector<SimplicialOperator> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == choices.size()) {
      emit(cur);
      return;
    }
    for (const auto& c : choices[i]) {
      cur.push_back(c);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Strictly increasing chains in the product of [q_k] over the given slots.
std::vector<std::vector<SimplicialOperator>> chains_in_product(const std::vector<int>& qs) {
  std::vector<std::vector<SimplicialOperator>> out;
  const std::size_t w = qs.size();
  std::vector<std::vector<int>> chain;
  std::function<void()> rec = [&] {
    std::vector<SimplicialOperator> comps;
    for (std::size_t k = 0; k < w; ++k) {
      std::vector<int> v;
      for (auto& t : chain) v.push_back(t[k]);
      comps.emplace_back(qs[k], v);
    }
    out.push_back(comps);
    // extend by a strictly larger tuple
    const std::vector<int> last = chain.back();
    std::vector<int> t(last);
    std::function<void(std::size_t, bool)> gen = [&](std::size_t k, bool bigger) {
      if (k == w) {
        if (bigger) {
          chain.push_back(t);
          rec();
          chain.pop_back();
        }
        return;
      }
      for (int v = last[k]; v <= qs[k]; ++v) {
        t[k] = v;
        gen(k + 1, bigger || v > last[k]);
      }
      t[k] = last[k];
    };
    gen(0, false);
  };
  std::vector<int> start(w, 0);
  std::function<void(std::size_t)> starts = [&](std::size_t k) {
    if (k == w) {
      chain = {start};
      rec();
      return;
    }
    for (int v = 0; v <= qs[k]; ++v) {
      start[k] = v;
      starts(k + 1);
    }
  };
  starts(0);
  return out;
}

}  // namespace

std::vector<CellularOperator> all_operators(const ThetaShape& src, const ThetaShape& dst) {
  std::vector<CellularOperator> out;
  for (auto& a : all_operators(src.n, dst.n)) {
    std::vector<std::vector<SimplicialOperator>> choices;
    for (int k = a(0) + 1; k <= a(src.n); ++k) {
      int l = 1;
      while (!(a(l - 1) < k && k <= a(l))) ++l;
      choices.push_back(all_operators(src.qk(l), dst.qk(k)));
    }
    product_of(choices, [&](const std::vector<SimplicialOperator>& comps) {
      out.emplace_back(src, dst, a, comps);
    });
  }
  return out;
}

std::vector<CellularOperator> faces_into(const ThetaShape& dst) {
  std::vector<CellularOperator> out;
  for (int m = 0; m <= dst.n; ++m) {
    for (auto& a : all_monos(m, dst.n)) {
      std::vector<std::vector<std::vector<SimplicialOperator>>> per_interval;
      for (int l = 1; l <= m; ++l) {
        std::vector<int> qs;
        for (int k = a(l - 1) + 1; k <= a(l); ++k) qs.push_back(dst.qk(k));
        per_interval.push_back(chains_in_product(qs));
      }
      std::vector<std::size_t> idx(per_interval.size(), 0);
      std::function<void(std::size_t, std::vector<int>&, std::vector<SimplicialOperator>&)> rec =
          [&](std::size_t l, std::vector<int>& p, std::vector<SimplicialOperator>& comps) {
            if (l == per_interval.size()) {
              out.emplace_back(ThetaShape(m, p), dst, a, comps);
              return;
            }
            for (auto& ch : per_interval[l]) {
              p.push_back(ch.front().src());
              comps.insert(comps.end(), ch.begin(), ch.end());
              rec(l + 1, p, comps);
              comps.resize(comps.size() - ch.size());
              p.pop_back();
            }
          };
      std::vector<int> p;
      std::vector<SimplicialOperator> comps;
      rec(0, p, comps);
    }
  }
  std::sort(out.begin(), out.end(), [](const CellularOperator& x, const CellularOperator& y) {
    if (x.src() != y.src()) return x.src() < y.src();
    return x < y;
  });
  return out;
}

std::vector<CellularOperator> degeneracies_from(const ThetaShape& src) {
  std::vector<CellularOperator> out;
  const int m = src.n;
  for (int mp = 0; mp <= m; ++mp) {
    for (auto& s : all_epis(m, mp)) {
      std::vector<int> ls;
      for (int ip = 1; ip <= mp; ++ip) {
        int l = 1;
        while (!(s(l - 1) == ip - 1 && s(l) == ip)) ++l;
        ls.push_back(l);
      }
      std::vector<std::vector<SimplicialOperator>> choices;
      for (int l : ls) {
        std::vector<SimplicialOperator> c;
        for (int r = 0; r <= src.qk(l); ++r)
          for (auto& e : all_epis(src.qk(l), r)) c.push_back(e);
        choices.push_back(c);
      }
      product_of(choices, [&](const std::vector<SimplicialOperator>& comps) {
        std::vector<int> r;
        for (auto& c : comps) r.push_back(c.dst());
        out.emplace_back(src, ThetaShape(mp, r), s, comps);
      });
    }
  }
  std::sort(out.begin(), out.end(), [](const CellularOperator& x, const CellularOperator& y) {
    if (x.dst() != y.dst()) return x.dst() < y.dst();
    return x < y;
  });
  return out;
}

CellularOperator section(const CellularOperator& sigma) {
  if (!is_degeneracy(sigma)) throw InvalidOperator("section of a non-degeneracy");
  const auto& s = sigma.horizontal();
  const int m = sigma.src().n;
  const int mp = sigma.dst().n;
  std::vector<int> ell(static_cast<std::size_t>(mp + 1), 0);
  for (int ip = 1; ip <= mp; ++ip) {
    int l = 1;
    while (!(s(l - 1) == ip - 1 && s(l) == ip)) ++l;
    ell[static_cast<std::size_t>(ip)] = l;
  }
  std::vector<int> d(static_cast<std::size_t>(mp + 1));
  if (mp == 0) {
    d[0] = 0;
  } else {
    d[0] = ell[1] - 1;
    for (int ip = 1; ip <= mp; ++ip) d[static_cast<std::size_t>(ip)] = ell[static_cast<std::size_t>(ip)];
  }
  SimplicialOperator dh(m, d);
  std::vector<SimplicialOperator> comps;
  for (int k = dh(0) + 1; k <= dh(mp); ++k) {
    int ip = 1;
    while (!(dh(ip - 1) < k && k <= dh(ip))) ++ip;
    const int r = sigma.dst().qk(ip);
    if (k == ell[static_cast<std::size_t>(ip)]) {
      const auto& e = sigma.component(ip);
      std::vector<int> v;
      for (int y = 0; y <= r; ++y) {
        int j = 0;
        while (e(j) != y) ++j;
        v.push_back(j);
      }
      comps.emplace_back(e.src(), v);
    } else {
      comps.push_back(SimplicialOperator::constant(r, sigma.src().qk(k), 0));
    }
  }
  return {sigma.dst(), sigma.src(), dh, comps};
}

// ---- text ----

std::string to_string(const CellularOperator& f) {
  std::string s = "[" + values_to_string(f.horizontal().values());
  for (std::size_t i = 0; i < f.components().size(); ++i)
    s += (i ? "," : ";") + values_to_string(f.components()[i].values());
  return s + "]:" + to_string(f.src()) + "->" + to_string(f.dst());
}

CellularOperator parse_cellular(std::string_view text) {
  text = trim(text);
  auto colon_pos = std::string_view::npos;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '[' || text[i] == '{') ++depth;
    if (text[i] == ']' || text[i] == '}') --depth;
    if (text[i] == ':' && depth == 0) {
      colon_pos = i;
      break;
    }
  }
  if (colon_pos == std::string_view::npos)
    throw ParseError("cellular operator needs ':[m;p]->[n;q]'");
  auto body = trim(text.substr(0, colon_pos));
  auto shapes = trim(text.substr(colon_pos + 1));
  auto arrow = shapes.find("->");
  if (arrow == std::string_view::npos) throw ParseError("expected '->'");
  auto src = parse_shape(shapes.substr(0, arrow));
  auto dst = parse_shape(shapes.substr(arrow + 2));
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') throw ParseError("expected [..] body");
  body = body.substr(1, body.size() - 2);
  auto parts = split_top(body, ';');
  try {
    SimplicialOperator h(dst.n, parse_value_list(parts[0]));
    if (h.src() != src.n) throw ParseError("horizontal part does not match source shape");
    std::vector<std::string_view> cs;
    for (std::size_t i = 1; i < parts.size(); ++i)
      for (auto piece : split_top(parts[i], ',')) cs.push_back(trim(piece));
    const int lo = h(0);
    std::vector<SimplicialOperator> comps;
    if (static_cast<int>(cs.size()) != h(src.n) - lo)
      throw ParseError("expected " + std::to_string(h(src.n) - lo) + " components");
    for (int k = lo + 1; k <= h(src.n); ++k) {
      auto c = cs[static_cast<std::size_t>(k - lo - 1)];
      int l = 1;
      while (!(h(l - 1) < k && k <= h(l))) ++l;
      if (c == "!") {
        if (dst.qk(k) != 0) throw ParseError("'!' needs target [0]");
        comps.push_back(SimplicialOperator::constant(src.qk(l), 0, 0));
      } else {
        comps.emplace_back(dst.qk(k), parse_value_list(c));
      }
    }
    return {src, dst, h, comps};
  } catch (const InvalidOperator& e) {
    throw ParseError(e.what());
  } catch (const RangeError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace theta2
