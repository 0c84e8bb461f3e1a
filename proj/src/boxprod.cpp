#include "theta2/boxprod.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "theta2/error.hpp"

namespace theta2 {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// Cartesian product of choice lists, visited in lexicographic order.
template <typename T, typename F>
void for_each_choice(const std::vector<std::vector<T>>& lists, F&& visit) {
  std::vector<std::size_t> idx(lists.size(), 0);
  for (auto& l : lists)
    if (l.empty()) return;
  while (true) {
    visit(idx);
    std::size_t i = lists.size();
    while (i > 0) {
      --i;
      if (++idx[i] < lists[i].size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
    if (lists.empty()) return;
  }
}

// Decoded cell: base vertices per factor, and components keyed by slot.
struct Parsed {
  std::vector<std::vector<int>> base;
  std::map<int, std::vector<int>> comps;
};

}  // namespace

BoxProduct::BoxProduct(std::vector<SimplicialSubset> base, std::vector<SimplicialSubset> fibers, int bound)
    : base_(std::move(base)), fibers_(std::move(fibers)), bound_(bound) {
  if (base_.empty()) throw ArityMismatch("box base needs a factor over Delta[n]");
  if (base_[0].is_chaotic()) throw ArityMismatch("first base factor must lie in a chain");
  slots_ = base_[0].objects() - 1;
  if (static_cast<int>(fibers_.size()) != slots_)
    throw ArityMismatch("box over Delta[" + std::to_string(slots_) + "] needs " + std::to_string(slots_) +
                        " fibers");
}

std::string BoxProduct::name() const {
  std::vector<std::string> b, f;
  for (auto& s : base_) b.push_back(s.name());
  for (auto& s : fibers_) f.push_back(s.name());
  return "Box(" + join(b, "x") + ";" + join(f, ",") + ")";
}

std::vector<int> BoxProduct::base_simplex(const Cell& x, std::size_t f) const {
  const std::size_t F = base_.size();
  std::vector<int> out;
  for (int i = 0; i <= x.shape.n; ++i) out.push_back(x.data[static_cast<std::size_t>(i) * F + f]);
  return out;
}

SimplicialOperator BoxProduct::horizontal(const Cell& x) const { return {slots_, base_simplex(x, 0)}; }

bool BoxProduct::covers(const Cell& x, int k) const {
  const auto a = base_simplex(x, 0);
  return a.front() < k && k <= a.back();
}

namespace {

Parsed parse(const BoxProduct& B, const Cell& x) {
  Parsed p;
  const std::size_t F = B.factors();
  for (std::size_t f = 0; f < F; ++f) p.base.push_back(B.base_simplex(x, f));
  const auto& a = p.base[0];
  std::size_t pos = static_cast<std::size_t>(x.shape.n + 1) * F;
  for (int i = 1; i <= x.shape.n; ++i)
    for (int k = a[static_cast<std::size_t>(i - 1)] + 1; k <= a[static_cast<std::size_t>(i)]; ++k) {
      const std::size_t len = static_cast<std::size_t>(x.shape.qk(i) + 1);
      if (pos + len > x.data.size()) throw InvalidOperator("box cell payload too short");
      p.comps[k] = std::vector<int>(x.data.begin() + static_cast<long>(pos),
                                    x.data.begin() + static_cast<long>(pos + len));
      pos += len;
    }
  if (pos != x.data.size()) throw InvalidOperator("box cell payload too long");
  return p;
}

Cell encode(const ThetaShape& s, const Parsed& p) {
  Cell c{s, {}};
  for (int i = 0; i <= s.n; ++i)
    for (auto& b : p.base) c.data.push_back(b[static_cast<std::size_t>(i)]);
  for (auto& [k, v] : p.comps) c.data.insert(c.data.end(), v.begin(), v.end());
  return c;
}

}  // namespace

std::vector<int> BoxProduct::component(const Cell& x, int k) const {
  auto p = parse(*this, x);
  auto it = p.comps.find(k);
  if (it == p.comps.end()) throw RangeError("slot " + std::to_string(k) + " is not covered");
  return it->second;
}

std::vector<Cell> BoxProduct::cells(const ThetaShape& s) const {
  std::vector<Cell> out;
  std::vector<std::vector<std::vector<int>>> bases;
  for (auto& f : base_) bases.push_back(f.simplices(s.n));
  for_each_choice(bases, [&](const std::vector<std::size_t>& bi) {
    Parsed p;
    for (std::size_t f = 0; f < bases.size(); ++f) p.base.push_back(bases[f][bi[f]]);
    const auto& a = p.base[0];
    std::vector<int> slot;
    std::vector<std::vector<std::vector<int>>> fibs;
    for (int i = 1; i <= s.n; ++i)
      for (int k = a[static_cast<std::size_t>(i - 1)] + 1; k <= a[static_cast<std::size_t>(i)]; ++k) {
        slot.push_back(k);
        fibs.push_back(fibers_[static_cast<std::size_t>(k - 1)].simplices(s.qk(i)));
      }
    for_each_choice(fibs, [&](const std::vector<std::size_t>& ci) {
      for (std::size_t j = 0; j < slot.size(); ++j) p.comps[slot[j]] = fibs[j][ci[j]];
      out.push_back(encode(s, p));
    });
  });
  return out;
}

Cell BoxProduct::act(const Cell& x, const CellularOperator& f) const {
  if (!(f.dst() == x.shape)) throw ArityMismatch("operator target differs from cell shape");
  const auto old = parse(*this, x);
  const auto& beta = f.horizontal();
  const auto& a = old.base[0];
  Parsed p;
  for (auto& b : old.base) {
    std::vector<int> nb;
    for (int v : beta.values()) nb.push_back(b[static_cast<std::size_t>(v)]);
    p.base.push_back(std::move(nb));
  }
  const ThetaShape& src = f.src();
  for (int ip = 1; ip <= src.n; ++ip) {
    const int lo = a[static_cast<std::size_t>(beta(ip - 1))];
    const int hi = a[static_cast<std::size_t>(beta(ip))];
    for (int k = lo + 1; k <= hi; ++k) {
      int l = beta(ip - 1) + 1;
      while (!(a[static_cast<std::size_t>(l - 1)] < k && k <= a[static_cast<std::size_t>(l)])) ++l;
      const auto& c = old.comps.at(k);
      std::vector<int> nc;
      for (int v : f.component(l).values()) nc.push_back(c[static_cast<std::size_t>(v)]);
      p.comps[k] = std::move(nc);
    }
  }
  return encode(src, p);
}

namespace {

// Tuple of base vertices at position i.
std::vector<int> base_tuple(const Parsed& p, int i) {
  std::vector<int> t;
  for (auto& b : p.base) t.push_back(b[static_cast<std::size_t>(i)]);
  return t;
}

// Slots covered in source interval i.
std::vector<int> slots_of(const Parsed& p, int i) {
  std::vector<int> out;
  const auto& a = p.base[0];
  for (int k = a[static_cast<std::size_t>(i - 1)] + 1; k <= a[static_cast<std::size_t>(i)]; ++k) out.push_back(k);
  return out;
}

std::vector<int> comp_tuple(const Parsed& p, const std::vector<int>& ks, int v) {
  std::vector<int> t;
  for (int k : ks) t.push_back(p.comps.at(k)[static_cast<std::size_t>(v)]);
  return t;
}

bool nondegenerate_parsed(const Cell& x, const Parsed& p) {
  for (int i = 1; i <= x.shape.n; ++i) {
    if (base_tuple(p, i - 1) == base_tuple(p, i)) return false;
    auto ks = slots_of(p, i);
    if (ks.empty()) {
      if (x.shape.qk(i) != 0) return false;
      continue;
    }
    for (int v = 1; v <= x.shape.qk(i); ++v)
      if (comp_tuple(p, ks, v - 1) == comp_tuple(p, ks, v)) return false;
  }
  return true;
}

}  // namespace

std::vector<Cell> BoxProduct::nondegenerate(const ThetaShape& s) const {
  std::vector<Cell> out;
  for (auto& c : cells(s))
    if (nondegenerate_parsed(c, parse(*this, c))) out.push_back(c);
  return out;
}

Decomposition BoxProduct::decompose(const Cell& x) const {
  const auto p = parse(*this, x);
  const int m = x.shape.n;
  // Horizontal: collapse runs of equal base tuples.
  std::vector<int> sh{0};
  std::vector<int> firsts{0};
  for (int i = 1; i <= m; ++i) {
    if (base_tuple(p, i) == base_tuple(p, i - 1)) {
      sh.push_back(sh.back());
    } else {
      sh.push_back(sh.back() + 1);
      firsts.push_back(i);
    }
  }
  const int mp = sh.back();
  Parsed y;
  for (auto& b : p.base) {
    std::vector<int> nb;
    for (int i : firsts) nb.push_back(b[static_cast<std::size_t>(i)]);
    y.base.push_back(std::move(nb));
  }
  std::vector<int> qp;
  std::vector<SimplicialOperator> sigma_comps;
  for (int ip = 1; ip <= mp; ++ip) {
    const int i = firsts[static_cast<std::size_t>(ip)];  // old interval entering the new vertex ip
    auto ks = slots_of(p, i);
    if (ks.empty()) {
      qp.push_back(0);
      sigma_comps.push_back(SimplicialOperator::constant(x.shape.qk(i), 0, 0));
      continue;
    }
    std::vector<int> tau{0};
    std::vector<int> keep{0};
    for (int v = 1; v <= x.shape.qk(i); ++v) {
      if (comp_tuple(p, ks, v) == comp_tuple(p, ks, v - 1)) {
        tau.push_back(tau.back());
      } else {
        tau.push_back(tau.back() + 1);
        keep.push_back(v);
      }
    }
    qp.push_back(tau.back());
    sigma_comps.emplace_back(tau.back(), tau);
    for (int k : ks) {
      std::vector<int> nc;
      for (int v : keep) nc.push_back(p.comps.at(k)[static_cast<std::size_t>(v)]);
      y.comps[k] = std::move(nc);
    }
  }
  ThetaShape target(mp, qp);
  CellularOperator sigma(x.shape, target, SimplicialOperator(mp, sh), sigma_comps);
  return {encode(target, y), sigma};
}

namespace {

bool representable_like(const BoxProduct& B) {
  if (B.factors() != 1 || B.base()[0].kind() != SimplicialSubset::Kind::Full) return false;
  for (auto& f : B.fibers())
    if (f.is_chaotic() || f.kind() != SimplicialSubset::Kind::Full) return false;
  return true;
}

}  // namespace

std::string BoxProduct::format(const Cell& x) const {
  if (representable_like(*this)) {
    std::vector<int> q;
    for (auto& f : fibers_) q.push_back(f.objects() - 1);
    return to_string(to_operator(x, ThetaShape(slots_, q)));
  }
  auto p = parse(*this, x);
  std::string out = to_string(x.shape) + "(";
  std::vector<std::string> parts;
  for (int i = 0; i <= x.shape.n; ++i) {
    auto t = base_tuple(p, i);
    parts.push_back(t.size() == 1 ? std::to_string(t[0]) : values_to_string(t));
  }
  out += join(parts, ",") + ")";
  for (auto& [k, v] : p.comps) out += " " + std::to_string(k) + ":" + values_to_string(v);
  return out;
}

bool BoxProduct::has_cell(const Cell& x) const {
  const std::size_t F = base_.size();
  if (x.data.size() < static_cast<std::size_t>(x.shape.n + 1) * F) return false;
  try {
    auto p = parse(*this, x);
    for (std::size_t f = 0; f < F; ++f)
      if (!base_[f].contains(p.base[f])) return false;
    for (int i = 1; i <= x.shape.n; ++i)
      for (int k : slots_of(p, i))
        if (!fibers_[static_cast<std::size_t>(k - 1)].contains(p.comps.at(k))) return false;
    return true;
  } catch (const Error&) {
    return false;
  }
}

BoxProductPtr box(std::vector<SimplicialSubset> base, std::vector<SimplicialSubset> fibers, int bound) {
  return std::make_shared<BoxProduct>(std::move(base), std::move(fibers), bound);
}

BoxProductPtr box_of_shape(const ThetaShape& s, int bound) {
  std::vector<SimplicialSubset> fibers;
  for (int v : s.q) fibers.push_back(SimplicialSubset::standard(v));
  return box({SimplicialSubset::standard(s.n)}, fibers, bound);
}

// ---- Leibniz construction ----

bool in_leibniz_domain(const BoxProduct& B, const LeibnizArgs& sub, const Cell& x) {
  for (std::size_t f = 0; f < sub.base.size(); ++f)
    if (sub.base[f].contains(B.base_simplex(x, f))) return true;
  auto p = parse(B, x);
  for (int k = 1; k <= B.n(); ++k) {
    auto it = p.comps.find(k);
    if (it == p.comps.end()) return true;
    if (sub.fibers[static_cast<std::size_t>(k - 1)].contains(it->second)) return true;
  }
  return false;
}

Inclusion leibniz_box(const BoxProductPtr& codomain, const LeibnizArgs& sub, int bound) {
  if (sub.base.size() != codomain->factors() || static_cast<int>(sub.fibers.size()) != codomain->n())
    throw ArityMismatch("Leibniz arguments do not match the box");
  for (std::size_t f = 0; f < sub.base.size(); ++f)
    if (!sub.base[f].same_ambient(codomain->base()[f])) throw AmbientMismatch("base argument is not a subset");
  for (std::size_t k = 0; k < sub.fibers.size(); ++k)
    if (!sub.fibers[k].same_ambient(codomain->fibers()[k])) throw AmbientMismatch("fiber argument is not a subset");
  auto dom = Subobject::from_predicate(
      codomain, [&](const Cell& c) { return in_leibniz_domain(*codomain, sub, c); }, bound);
  std::vector<std::string> parts;
  for (auto& s : sub.base) parts.push_back(s.name());
  for (auto& s : sub.fibers) parts.push_back(s.name());
  return {std::move(dom), codomain, bound, "Leibniz(" + join(parts, ",") + ")"};
}

// ---- named inclusions ----

Subobject hyperface_closure(const ThetaShape& s, const std::vector<HyperfaceLabel>& labels) {
  std::vector<Cell> gens;
  for (auto& l : labels) gens.push_back(to_cell(hyperface(s, l)));
  return Subobject::generated(representable(s), gens);
}

namespace {

Inclusion closure_inclusion(const ThetaShape& s, const std::vector<HyperfaceLabel>& labels, std::string name) {
  return {hyperface_closure(s, labels), representable(s), s.dim(), std::move(name)};
}

std::vector<HyperfaceLabel> all_but(const ThetaShape& s, const std::function<bool(const HyperfaceLabel&)>& drop) {
  std::vector<HyperfaceLabel> out;
  for (auto& l : hyperface_labels(s))
    if (!drop(l)) out.push_back(l);
  return out;
}

void require_labels(const ThetaShape& s, const std::vector<HyperfaceLabel>& S) {
  for (auto& l : S)
    if (!hyperface_exists(s, l)) throw RangeError(to_string(l) + " is not a hyperface of " + to_string(s));
}

std::string label_set(const std::vector<HyperfaceLabel>& S) {
  std::vector<std::string> parts;
  for (auto& l : S) parts.push_back(to_string(l));
  return "{" + join(parts, " ") + "}";
}

void require_horn_h(const ThetaShape& s, int k) {
  if (s.n < 1 || k < 0 || k > s.n) throw RangeError("horizontal horn index out of range");
}

void require_horn_v(const ThetaShape& s, int k, int i) {
  if (k < 1 || k > s.n || s.qk(k) < 1 || i < 0 || i > s.qk(k)) throw RangeError("vertical horn index out of range");
}

std::vector<SimplicialSubset> boundary_fibers(const ThetaShape& s) {
  std::vector<SimplicialSubset> out;
  for (int v : s.q) out.push_back(SimplicialSubset::boundary(v));
  return out;
}

}  // namespace

bool is_inner_horn_h(const ThetaShape& s, int k) { return 1 <= k && k <= s.n - 1; }

bool is_inner_horn_v(const ThetaShape& s, int k, int i) {
  return 1 <= k && k <= s.n && 1 <= i && i <= s.qk(k) - 1;
}

Inclusion boundary(const ThetaShape& s) {
  return closure_inclusion(s, hyperface_labels(s), "boundary" + to_string(s));
}

Inclusion horn_h(const ThetaShape& s, int k) {
  require_horn_h(s, k);
  // An outer face [delta^0;..] leaves slot 1 uncovered, so the Leibniz domain
  // keeps it: outer horizontal horns are the whole boundary.
  auto labels = is_inner_horn_h(s, k)
                    ? all_but(s, [&](const HyperfaceLabel& l) { return l.is_horizontal() && l.k == k; })
                    : hyperface_labels(s);
  return closure_inclusion(s, labels, "horn_h" + to_string(s) + "^" + std::to_string(k));
}

Inclusion horn_v(const ThetaShape& s, int k, int i) {
  require_horn_v(s, k, i);
  auto drop = HyperfaceLabel::vertical(k, i);
  return closure_inclusion(s, all_but(s, [&](const HyperfaceLabel& l) { return l == drop; }),
                           "horn_v" + to_string(s) + "^" + std::to_string(k) + ";" + std::to_string(i));
}

Inclusion horn_h_alt(const ThetaShape& s, int k, const Shuffle& sh) {
  if (!is_inner_horn_h(s, k)) throw RangeError("alternative horn needs 1 <= k <= n-1");
  if (sh.m() != s.qk(k) || sh.n() != s.qk(k + 1)) throw RangeError("shuffle does not match the shape");
  auto drop = HyperfaceLabel::horizontal(k, sh);
  return closure_inclusion(s, all_but(s, [&](const HyperfaceLabel& l) { return l == drop; }),
                           "horn_h_alt" + to_string(s) + "^" + to_string(drop));
}

Inclusion spine(const ThetaShape& s) {
  std::vector<Cell> gens;
  for (auto& v : vertebrae(s)) gens.push_back(to_cell(v));
  return {Subobject::generated(representable(s), gens), representable(s), s.dim(), "spine" + to_string(s)};
}

Inclusion spine_S(const ThetaShape& s, const std::vector<HyperfaceLabel>& S) {
  require_labels(s, S);
  auto sp = spine(s);
  for (auto& l : S) sp.domain.add(to_cell(hyperface(s, l)));
  sp.name = "spine" + to_string(s) + "^" + label_set(S);
  return sp;
}

Inclusion upsilon_S(const ThetaShape& s, const std::vector<HyperfaceLabel>& S) {
  require_labels(s, S);
  for (auto& l : S)
    if (is_outer(s, l)) throw RangeError(to_string(l) + " is not inner");
  auto labels = outer_hyperface_labels(s);
  labels.insert(labels.end(), S.begin(), S.end());
  return closure_inclusion(s, labels, "upsilon" + to_string(s) + "^" + label_set(S));
}

Inclusion lambda_S(const ThetaShape& s, const std::vector<HyperfaceLabel>& S) {
  require_labels(s, S);
  return closure_inclusion(
      s, all_but(s, [&](const HyperfaceLabel& l) { return std::find(S.begin(), S.end(), l) != S.end(); }),
      "lambda" + to_string(s) + "^" + label_set(S));
}

Inclusion leibniz_boundary(const ThetaShape& s) {
  auto B = box_of_shape(s, s.dim());
  auto inc = leibniz_box(B, {{SimplicialSubset::boundary(s.n)}, boundary_fibers(s)}, s.dim());
  inc.name = "leibniz_boundary" + to_string(s);
  return inc;
}

Inclusion leibniz_horn_h(const ThetaShape& s, int k) {
  require_horn_h(s, k);
  auto B = box_of_shape(s, s.dim());
  auto inc = leibniz_box(B, {{SimplicialSubset::horn(s.n, k)}, boundary_fibers(s)}, s.dim());
  inc.name = "leibniz_horn_h" + to_string(s) + "^" + std::to_string(k);
  return inc;
}

Inclusion leibniz_horn_v(const ThetaShape& s, int k, int i) {
  require_horn_v(s, k, i);
  auto B = box_of_shape(s, s.dim());
  auto fibers = boundary_fibers(s);
  fibers[static_cast<std::size_t>(k - 1)] = SimplicialSubset::horn(s.qk(k), i);
  auto inc = leibniz_box(B, {{SimplicialSubset::boundary(s.n)}, fibers}, s.dim());
  inc.name = "leibniz_horn_v" + to_string(s) + "^" + std::to_string(k) + ";" + std::to_string(i);
  return inc;
}

VerticalExtension equiv_vert(const ThetaShape& s, int k, int bound) {
  if (k < 1 || k > s.n) throw RangeError("slot out of range");
  if (s.qk(k) != 0) throw RangeError("vertical equivalence extension needs q_k = 0");
  std::vector<SimplicialSubset> fibers, sub = boundary_fibers(s);
  for (int v : s.q) fibers.push_back(SimplicialSubset::standard(v));
  fibers[static_cast<std::size_t>(k - 1)] = SimplicialSubset::interval();
  sub[static_cast<std::size_t>(k - 1)] = SimplicialSubset::interval_point(0);
  auto phi = box({SimplicialSubset::standard(s.n)}, fibers, bound);
  auto psi = leibniz_box(phi, {{SimplicialSubset::boundary(s.n)}, sub}, bound);
  psi.name = "Psi^" + std::to_string(k) + to_string(s);
  return {phi, std::move(psi)};
}

Inclusion equiv_horiz(const ThetaShape& s, int bound) {
  std::vector<SimplicialSubset> fibers;
  for (int v : s.q) fibers.push_back(SimplicialSubset::standard(v));
  auto B = box({SimplicialSubset::standard(s.n), SimplicialSubset::interval()}, fibers, bound);
  auto inc = leibniz_box(B, {{SimplicialSubset::boundary(s.n), SimplicialSubset::interval_point(0)},
                             boundary_fibers(s)},
                         bound);
  inc.name = "equiv_horiz" + to_string(s);
  return inc;
}

// ---- maps of boxes ----

CellularMap box_map(const BoxProductPtr& source, const BoxProductPtr& target, const SimplicialOperator& beta,
                    const std::vector<VertexMap>& comps, const std::string& name) {
  if (beta.src() != source->n() || beta.dst() != target->n()) throw ArityMismatch("box map over the wrong operator");
  if (static_cast<int>(comps.size()) != target->n()) throw ArityMismatch("one vertex map per target slot");
  if (source->factors() != target->factors()) throw ArityMismatch("base factor counts differ");
  auto apply = [source, target, beta, comps](const Cell& x) {
    const auto old = parse(*source, x);
    Parsed p;
    p.base = old.base;
    for (auto& v : p.base[0]) v = beta(v);
    for (auto& [l, c] : old.comps)
      for (int j = beta(l - 1) + 1; j <= beta(l); ++j) {
        std::vector<int> nc;
        for (int v : c) nc.push_back(comps[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(v)]);
        p.comps[j] = std::move(nc);
      }
    return encode(x.shape, p);
  };
  return {source, apply, name};
}

}  // namespace theta2
