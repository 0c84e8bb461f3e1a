#include <algorithm>
#include <map>

#include "anodyne_internal.hpp"
#include "theta2/anodyne.hpp"
#include "theta2/error.hpp"

namespace theta2 {

using nlohmann::json;
using namespace detail;

namespace {

constexpr int kFilled = 1;  // the vertex of J written as a filled diamond

// Op-dual of a box cell over Delta[n] with one base factor: the base simplex
// is reversed and so is the list of component simplices.
Cell mirror_cell(const Cell& x, int n) {
  const int m = x.shape.n;
  Cell y{x.shape.reversed(), {}};
  for (int i = m; i >= 0; --i) y.data.push_back(n - x.data[static_cast<std::size_t>(i)]);
  std::vector<std::vector<int>> chunks;
  std::size_t pos = static_cast<std::size_t>(m + 1);
  for (int l = 1; l <= m; ++l)
    for (int j = x.data[static_cast<std::size_t>(l - 1)] + 1; j <= x.data[static_cast<std::size_t>(l)]; ++j) {
      const auto len = static_cast<std::size_t>(x.shape.qk(l) + 1);
      chunks.emplace_back(x.data.begin() + static_cast<long>(pos), x.data.begin() + static_cast<long>(pos + len));
      pos += len;
    }
  for (auto it = chunks.rbegin(); it != chunks.rend(); ++it) y.data.insert(y.data.end(), it->begin(), it->end());
  return y;
}

bool has(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

bool onto(const std::vector<int>& v, int top) {
  for (int x = 0; x <= top; ++x)
    if (!has(v, x)) return false;
  return true;
}

int filled_count(const BoxProduct& B, const Cell& x, int k) {
  if (!B.covers(x, k)) return 0;
  auto c = B.component(x, k);
  return static_cast<int>(std::count(c.begin(), c.end(), kFilled));
}

struct Candidate {
  Cell cell;
  HornTag horn;
  int key = 0;  // secondary ordering key after dim
};

void sort_candidates(std::vector<Candidate>& cs) {
  std::sort(cs.begin(), cs.end(), [](const Candidate& a, const Candidate& b) {
    if (a.cell.shape.dim() != b.cell.shape.dim()) return a.cell.shape.dim() < b.cell.shape.dim();
    if (a.key != b.key) return a.key < b.key;
    return a.cell < b.cell;
  });
}

Inclusion horn_for(const HornTag& t, const ThetaShape& s) {
  return t.family == "horn_h" ? horn_h(s, t.k) : horn_v(s, t.k, t.i);
}

void glue_all(Engine& E, std::vector<Candidate> cs, const std::string& stage) {
  sort_candidates(cs);
  for (auto& c : cs) {
    if (E.failed()) return;
    auto W = horn_for(c.horn, c.cell.shape).domain;
    E.glue(attach_cell(E.ambient(), c.cell, std::move(W), c.horn), stage, json{{"key", c.key}});
  }
}

Subobject closure_with(Subobject base, const std::vector<Cell>& cells) {
  for (auto& c : cells) base.add(c);
  return base;
}

}  // namespace

ReplayReport vert_equiv(const ThetaShape& s, int k, const ReplayOptions& opt) {
  if (s.n < 1 || k < 1 || k > s.n || s.qk(k) != 0) throw RangeError("vert_equiv needs 1 <= k <= n and q_k = 0");
  const int D = opt.bound;
  const int G = D + opt.glue_slack;
  auto ext = equiv_vert(s, k, G);
  auto phi = ext.phi;
  const int n = s.n;
  json params = shape_params(s);
  params["k"] = k;
  params["D"] = D;

  auto in_theta = [&](const Cell& x) {
    return !(phi->covers(x, k) && has(phi->component(x, k), kFilled));
  };
  auto start = Subobject::from_predicate(phi, in_theta, D - 1);
  Engine E("vert_equiv", params, phi, start, D - 1, opt);
  E.report.ordering = "(dim, filled-diamond count, lexicographic cell order)";

  auto id_maps = [](const ThetaShape& t) {
    std::vector<VertexMap> comps;
    for (int v : t.q) {
      VertexMap m;
      for (int x = 0; x <= v; ++x) m.push_back(x);
      comps.push_back(m);
    }
    return comps;
  };

  if (n == 1) {
    // Psi^1[1;0] is Theta[1;0] itself; Phi^1[1;0] = Theta[1;J] is one elementary extension.
    GluingStep step{phi, box_map(phi, phi, SimplicialOperator::identity(1), {{0, 1}}, "[id;e]"), ext.psi.domain,
                    HornTag{"e", -1, -1, std::nullopt, {}}, "[id;e]:Theta[1;J]", s};
    E.glue(std::move(step), "base");
    E.finish_truncated(Subobject::full(phi, D - 1), D);
    return E.report;
  }

  // Predicates are evaluated on the op-dual when k = n.
  const bool mirrored = k == n;
  const int kv = mirrored ? 1 : k;
  const ThetaShape sv = mirrored ? s.reversed() : s;
  auto view_ext = mirrored ? equiv_vert(sv, kv, G) : ext;
  const BoxProduct& V = *view_ext.phi;
  if (mirrored) E.report.notes.push_back("k = n: stages use the op-dual with k = 1");
  auto view = [&](const Cell& x) { return mirrored ? mirror_cell(x, n) : x; };
  auto hh = [&](const Cell& x, int j) {
    return HornTag{"horn_h", mirrored ? x.shape.n - j : j, -1, std::nullopt, {}};
  };
  auto hv = [&](const Cell& x, int l, int i) {
    return HornTag{"horn_v", mirrored ? x.shape.n + 1 - l : l, i, std::nullopt, {}};
  };

  // X0: Theta[1;J] over the k-th edge
  {
    auto src = equiv_vert(ThetaShape(1, {0}), 1, G);
    std::vector<VertexMap> comps(static_cast<std::size_t>(n));
    comps[static_cast<std::size_t>(k - 1)] = {0, 1};
    auto f = box_map(src.phi, phi, SimplicialOperator(n, {k - 1, k}), comps, "[{k-1,k};id]");
    E.glue(GluingStep{phi, f, src.psi.domain, HornTag{"e", k, -1, std::nullopt, {}},
                      "[{" + std::to_string(k - 1) + "," + std::to_string(k) + "};id]:Theta[1;J]", ThetaShape(1, {0})},
           "X0");
  }

  auto all = nondegenerate_cells(*phi, G);
  struct Info {
    Cell x;
    Cell v;
    std::vector<int> a;
    bool diamond = false;
  };
  std::vector<Info> infos;
  for (auto& x : all) {
    Info in{x, view(x), {}, false};
    in.a = V.horizontal(in.v).values();
    in.diamond = V.covers(in.v, kv) && has(V.component(in.v, kv), kFilled);
    if (in.diamond) infos.push_back(std::move(in));
  }
  auto is_delta_k = [&](const std::vector<int>& a) {
    if (static_cast<int>(a.size()) != n) return false;
    for (int i = 0; i < n; ++i)
      if (a[static_cast<std::size_t>(i)] != (i < kv ? i : i + 1)) return false;
    return true;
  };
  auto is_id = [&](const std::vector<int>& a) {
    if (static_cast<int>(a.size()) != n + 1) return false;
    for (int i = 0; i <= n; ++i)
      if (a[static_cast<std::size_t>(i)] != i) return false;
    return true;
  };
  auto others_onto = [&](const Info& in) {
    for (int l = 1; l <= n; ++l)
      if (l != kv && V.covers(in.v, l) && !onto(V.component(in.v, l), sv.qk(l))) return false;
    return true;
  };
  const int upto = D - 1;

  Subobject X0t = start;
  {
    auto src = equiv_vert(ThetaShape(1, {0}), 1, G);
    std::vector<VertexMap> comps(static_cast<std::size_t>(n));
    comps[static_cast<std::size_t>(k - 1)] = {0, 1};
    auto f = box_map(src.phi, phi, SimplicialOperator(n, {k - 1, k}), comps, "");
    for (auto& c : nondegenerate_cells(*src.phi, D - 1)) X0t.add(f.apply(c));
  }

  // X1: (1a-d) along the (m-1)-th horizontal horn
  std::vector<Candidate> c1;
  std::vector<Cell> t1;
  for (auto& in : infos) {
    const int m = in.x.shape.n;
    if (!(in.a[0] < kv - 1 && in.a.back() == kv)) continue;
    t1.push_back(in.x);
    if (m >= 1 && in.a[static_cast<std::size_t>(m - 1)] == kv - 1) c1.push_back({in.x, hh(in.x, m - 1), 0});
  }
  glue_all(E, c1, "1");
  auto X1t = closure_with(X0t, t1);
  E.stage_check(X1t, "X1", upto);

  // X2: (2a-e) along the l-th horizontal horn with alpha(l) = k
  std::vector<Candidate> c2;
  std::vector<Cell> t2;
  for (auto& in : infos) {
    const int m = in.x.shape.n;
    if (!(in.a[0] <= kv - 1 && in.a.back() > kv && !is_delta_k(in.a) && !is_id(in.a))) continue;
    t2.push_back(in.x);
    for (int l = 1; l <= m - 1; ++l)
      if (in.a[static_cast<std::size_t>(l)] == kv) {
        c2.push_back({in.x, hh(in.x, l), 0});
        break;
      }
  }
  glue_all(E, c2, "2");
  auto X2t = closure_with(X1t, t2);
  E.stage_check(X2t, "X2", upto);

  // X3: [id; alpha] with (3b), (3c) along the k-th horizontal horn
  std::vector<Candidate> c3, cB;
  std::vector<Cell> t3;
  for (auto& in : infos) {
    if (!is_id(in.a) && !is_delta_k(in.a)) continue;
    if (others_onto(in)) {
      if (is_id(in.a)) cB.push_back({in.x, hh(in.x, kv), 0});
      continue;
    }
    t3.push_back(in.x);
    if (is_id(in.a)) c3.push_back({in.x, hh(in.x, kv), 0});
  }
  glue_all(E, c3, "3");
  auto X3t = closure_with(X2t, t3);
  json stages = json::object();
  stages["X3"] = agreement_dim(E.Y.cells(), X3t.cells(), D - 1);
  E.stage_check(X3t, "X3", upto);
  const Subobject Y3 = E.Y;

  // Branch A: X3 -> Psi
  const bool next_zero = sv.qk(kv + 1) == 0;
  if (next_zero) {
    // a pushout of Psi -> Phi one dimension down
    std::vector<int> pq;
    for (int l = 1; l <= n; ++l)
      if (l != k + (mirrored ? -1 : 1)) pq.push_back(l == k ? 0 : s.qk(l));
    const ThetaShape p(n - 1, pq);
    const int jslot = mirrored ? k - 1 : k;
    const int removed = mirrored ? k - 1 : k;
    auto sub = equiv_vert(p, jslot, G);
    auto comps = id_maps(s);
    comps[static_cast<std::size_t>(k - 1)] = {0, 1};
    comps[static_cast<std::size_t>((mirrored ? k - 1 : k + 1) - 1)] = {0, 0};
    std::vector<int> beta;
    for (int i = 0; i <= n; ++i)
      if (i != removed) beta.push_back(i);
    auto f = box_map(sub.phi, phi, SimplicialOperator(n, beta), comps, "[delta^k;id,!,id]");
    E.glue(GluingStep{phi, f, sub.psi.domain, HornTag{"psi", jslot, -1, std::nullopt, {}},
                      "[delta^" + std::to_string(removed) + ";id]:Phi^" + std::to_string(jslot) + to_string(p), p},
           "4");
  } else {
    std::vector<Candidate> c4;
    for (auto& in : infos) {
      if (!is_delta_k(in.a)) continue;
      bool ok = true;
      for (int l = 1; l <= n && ok; ++l)
        if (l != kv && l != kv + 1) ok = onto(V.component(in.v, l), sv.qk(l)) && V.component(in.v, l).size() == static_cast<std::size_t>(sv.qk(l) + 1);
      if (!ok) continue;
      auto ak = V.component(in.v, kv);
      auto ak1 = V.component(in.v, kv + 1);
      if (!onto(ak1, sv.qk(kv + 1))) continue;
      bool nondeg = true;
      for (std::size_t j = 1; j < ak.size(); ++j)
        if (ak[j] == ak[j - 1] && ak1[j] == ak1[j - 1]) nondeg = false;
      if (!nondeg) continue;
      int last_filled = -1;
      for (std::size_t j = 0; j < ak.size(); ++j)
        if (ak[j] == kFilled) last_filled = static_cast<int>(j);
      const int i_a = ak1[static_cast<std::size_t>(last_filled)];
      int j_a = -1;
      if (i_a >= 1) {
        for (std::size_t j = 0; j < ak1.size(); ++j)
          if (ak1[j] == i_a) {
            j_a = static_cast<int>(j);
            break;
          }
      } else {
        for (std::size_t j = 0; j < ak1.size(); ++j)
          if (ak1[j] == 0) j_a = static_cast<int>(j);
      }
      if (ak[static_cast<std::size_t>(j_a)] != 0) continue;  // (4e)
      c4.push_back({in.x, hv(in.x, kv, j_a), filled_count(V, in.v, kv)});
    }
    glue_all(E, c4, "4");
  }
  const int dA = agreement_dim(E.Y.cells(), ext.psi.domain.cells(), D - 1);
  stages["Psi"] = dA;
  E.stage_check(ext.psi.domain, "Psi", upto);

  // Branch B: X3 -> Phi
  E.Y = Y3;
  glue_all(E, cB, "5");
  E.report.notes.push_back("stage agreement dims: " + stages.dump());
  E.finish_truncated(Subobject::full(phi, G), D);
  return E.report;
}

ReplayReport horiz_equiv(const ThetaShape& s, const ReplayOptions& opt) {
  if (s.n == 0) throw RangeError("horiz_equiv needs a shape other than [0]");
  const int D = opt.bound;
  const int G = D + opt.glue_slack;
  auto inc = equiv_horiz(s, G);
  auto B = std::dynamic_pointer_cast<const BoxProduct>(inc.codomain);
  json params = shape_params(s);
  params["D"] = D;
  Engine E("horiz_equiv", params, inc.codomain, inc.domain.truncated(D - 1), D - 1, opt);
  E.report.ordering = "stage 1: (dim, filled-diamond count, lexicographic); stage 2: (dim, lexicographic)";
  const int n = s.n;

  auto all = nondegenerate_cells(*B, G);
  auto touches_top = [&](const Cell& x) {
    auto p2 = B->base_simplex(x, 0), p1 = B->base_simplex(x, 1);
    for (std::size_t i = 0; i < p2.size(); ++i)
      if (p2[i] == n && p1[i] == kFilled) return true;
    return false;
  };
  std::vector<Candidate> c1, c2;
  Subobject Yt = inc.domain;
  for (auto& x : all) {
    if (inc.domain.contains(x)) continue;
    auto p2 = B->base_simplex(x, 0), p1 = B->base_simplex(x, 1);
    const int m = x.shape.n;
    if (!touches_top(x)) {
      Yt.add(x);
      int kf = -1;
      for (int i = m; i >= 1; --i)
        if (p1[static_cast<std::size_t>(i - 1)] == kFilled && p1[static_cast<std::size_t>(i)] == 0) {
          kf = i;
          break;
        }
      bool unique = kf >= 1;
      for (int i = kf; i <= m && unique; ++i) unique = p1[static_cast<std::size_t>(i)] == 0;
      if (!unique) {
        E.report.notes.push_back("no k_phi for " + B->format(x));
        continue;
      }
      if (p2[static_cast<std::size_t>(kf)] == p2[static_cast<std::size_t>(kf - 1)]) {
        const int key = static_cast<int>(std::count(p1.begin(), p1.end(), kFilled));
        c1.push_back({x, HornTag{"horn_h", kf, -1, std::nullopt, {}}, key});
      }
    } else {
      int kf = 0;
      while (p2[static_cast<std::size_t>(kf)] != n) ++kf;
      if (p1[static_cast<std::size_t>(kf)] == 0) c2.push_back({x, HornTag{"horn_h", kf, -1, std::nullopt, {}}, 0});
    }
  }
  glue_all(E, c1, "dagger");
  E.stage_check(Yt, "Y", D - 1);
  glue_all(E, c2, "double_dagger");
  E.finish_truncated(Subobject::full(inc.codomain, G), D);
  return E.report;
}

}  // namespace theta2
