// Acceptance matrix: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "theta2/anodyne.hpp"
#include "theta2/boxprod.hpp"
#include "theta2/simplicial.hpp"
#include "theta2/twocat.hpp"

using namespace theta2;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

using Edge = std::pair<std::vector<int>, std::vector<int>>;

std::set<Edge> brute_hasse(int m, int n) {
  auto all = shuffles(m, n);
  std::set<Edge> out;
  for (auto& a : all)
    for (auto& b : all) {
      if (a == b || !shuffle_leq(a, b)) continue;
      bool between = false;
      for (auto& c : all)
        if (c != a && c != b && shuffle_leq(a, c) && shuffle_leq(c, b)) between = true;
      if (!between) out.insert({a.alpha(), b.alpha()});
    }
  return out;
}

// Category laws. Delta composites with endpoints <= 6 are checked pointwise against
// function composition (which is associative); triples are also checked directly up to 3.
Outcome category_laws() {
  Outcome o;
  long pairs = 0;
  for (int b = 0; b <= 6; ++b) {
    std::vector<SimplicialOperator> into, out;
    for (int a = 0; a <= 6; ++a)
      for (auto& g : all_operators(a, b)) into.push_back(g);
    for (int c = 0; c <= 6; ++c)
      for (auto& f : all_operators(b, c)) out.push_back(f);
    for (auto& f : out) {
      if (compose(f, SimplicialOperator::identity(b)) != f) o.fail("right unit " + to_string(f));
      if (compose(SimplicialOperator::identity(f.dst()), f) != f) o.fail("left unit " + to_string(f));
      const auto& fv = f.values();
      for (auto& g : into) {
        auto fg = compose(f, g);
        ++pairs;
        const auto& gv = g.values();
        if (fg.src() != g.src() || fg.dst() != f.dst()) o.fail("endpoints of " + to_string(fg));
        for (std::size_t x = 0; x < gv.size(); ++x)
          if (fg.values()[x] != fv[static_cast<std::size_t>(gv[x])]) o.fail("pointwise " + to_string(fg));
      }
    }
  }
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int d = 0; d <= 3; ++d)
          for (auto& h : all_operators(a, b))
            for (auto& g : all_operators(b, c))
              for (auto& f : all_operators(c, d))
                if (compose(f, compose(g, h)) != compose(compose(f, g), h)) o.fail("delta associativity");
  long triples = 0;
  auto shapes = all_shapes(3);
  std::map<std::pair<ThetaShape, ThetaShape>, std::vector<CellularOperator>> hom;
  for (auto& x : shapes)
    for (auto& y : shapes) hom[{x, y}] = all_operators(x, y);
  for (auto& a : shapes)
    for (auto& b : shapes)
      for (auto& g : hom[{a, b}]) {
        if (compose(identity(b), g) != g || compose(g, identity(a)) != g) o.fail("theta unit " + to_string(g));
        for (auto& c : shapes)
          for (auto& f : hom[{b, c}]) {
            auto fg = compose(f, g);
            for (auto& d : shapes)
              for (auto& e : hom[{c, d}]) {
                ++triples;
                if (compose(e, fg) != compose(compose(e, f), g)) o.fail("theta associativity");
              }
          }
      }
  o.detail = o.ok ? std::to_string(pairs) + " delta pairs, " + std::to_string(triples) + " theta triples" : o.detail;
  return o;
}

Outcome shuffle_lattice() {
  Outcome o;
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n)
      if (static_cast<long long>(shuffles(m, n).size()) != binomial(m + n, m)) o.fail("count Sh(" + std::to_string(m) + "," + std::to_string(n) + ")");
  const std::set<Edge> figure = {{{0, 0, 0, 1, 2}, {0, 0, 1, 1, 2}}, {{0, 0, 1, 1, 2}, {0, 0, 1, 2, 2}},
                                 {{0, 0, 1, 1, 2}, {0, 1, 1, 1, 2}}, {{0, 0, 1, 2, 2}, {0, 1, 1, 2, 2}},
                                 {{0, 1, 1, 1, 2}, {0, 1, 1, 2, 2}}, {{0, 1, 1, 2, 2}, {0, 1, 2, 2, 2}}};
  std::set<Edge> via;
  for (auto& s : shuffles(2, 2))
    for (auto& t : s.successors()) via.insert({s.alpha(), t.alpha()});
  if (brute_hasse(2, 2) != figure || via != figure) o.fail("Sh(2,2) Hasse diagram");
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      auto edges = brute_hasse(m, n);
      for (auto& s : shuffles(m, n)) {
        std::set<std::vector<int>> below, above, p, q;
        for (auto& [a, b] : edges) {
          if (b == s.alpha()) below.insert(a);
          if (a == s.alpha()) above.insert(b);
        }
        for (auto& t : s.predecessors()) p.insert(t.alpha());
        for (auto& t : s.successors()) q.insert(t.alpha());
        if (p != below || q != above || s.predecessors().size() != s.lower_corners().size() ||
            s.successors().size() != s.upper_corners().size())
          o.fail("corner bijection at " + to_string(s));
      }
    }
  if (o.ok) o.detail = "counts to 5, Sh(2,2) Hasse edges, corner bijection to 4";
  return o;
}

Outcome ez_uniqueness() {
  Outcome o;
  long ops = 0;
  auto shapes = all_shapes(4);
  for (auto& src : shapes) {
    auto degs = degeneracies_from(src);
    for (auto& dst : shapes) {
      std::map<CellularOperator, int> hits;
      for (auto& s : degs)
        for (auto& d : faces_into(dst))
          if (d.src() == s.dst()) hits[compose(d, s)]++;
      for (auto& f : all_operators(src, dst)) {
        ++ops;
        if (hits[f] != 1) o.fail(to_string(f) + " has " + std::to_string(hits[f]) + " factorizations");
      }
    }
  }
  if (o.ok) o.detail = std::to_string(ops) + " operators";
  return o;
}

Outcome hyperface_props() {
  Outcome o;
  long faces = 0;
  for (auto& s : all_shapes(5)) {
    auto hf = hyperfaces(s);
    for (auto& f : faces_into(s)) {
      if (f.src() == s) continue;
      ++faces;
      bool any = false, outer = false;
      for (auto& h : hf)
        if (auto r = factor_through(f, h.op)) {
          if (compose(h.op, *r) != f) o.fail("bad factorization of " + to_string(f));
          any = true;
          outer = outer || is_outer(s, h.label);
        }
      if (!any) o.fail(to_string(f) + " misses every hyperface");
      if (classify(f).outer && !outer) o.fail(to_string(f) + " misses the outer hyperfaces");
    }
  }
  if (o.ok) o.detail = std::to_string(faces) + " faces";
  return o;
}

Outcome boundary_horns() {
  Outcome o;
  for (auto& s : all_shapes(5)) {
    if (!same_cells(boundary(s).domain, leibniz_boundary(s).domain)) o.fail("boundary of " + to_string(s));
    for (int k = 0; s.n >= 1 && k <= s.n; ++k)
      if (!same_cells(horn_h(s, k).domain, leibniz_horn_h(s, k).domain))
        o.fail("horn " + std::to_string(k) + " of " + to_string(s));
  }
  auto s = parse_shape("[2;1,1]");
  auto h = horn_h(s, 1).domain;
  auto face = parse_cellular("[{0,2};{0,1},{0,1}]:[1;1]->[2;1,1]");
  std::vector<std::string> missing;
  for (auto& f : faces_into(s))
    if (!h.contains_nondegenerate(to_cell(f)) && codim(f) >= 2) missing.push_back(to_string(f));
  if (missing != std::vector<std::string>{to_string(face)} || codim(face) != 2)
    o.fail("the inner horn of [2;1,1] should miss exactly one face of codim >= 2");
  if (o.ok) o.detail = "missing face " + to_string(face);
  return o;
}

// Generators of the action on cells of shape t: hyperfaces into t and codimension-one degeneracies onto t.
std::vector<CellularOperator> generators_into(const ThetaShape& t, int D) {
  std::vector<CellularOperator> out;
  for (auto& h : hyperfaces(t)) out.push_back(h.op);
  if (t.dim() + 1 <= D)
    for (auto& u : all_shapes(t.dim() + 1)) {
      if (u.dim() != t.dim() + 1) continue;
      for (auto& s : degeneracies_from(u))
        if (s.dst() == t) out.push_back(s);
    }
  return out;
}

Outcome box_representable() {
  Outcome o;
  const int D = 6;
  auto targets = all_shapes(D);
  std::map<ThetaShape, std::vector<CellularOperator>> gens;
  for (auto& t : targets) gens[t] = generators_into(t, D);
  long cells = 0;
  for (auto& s : all_shapes(4)) {
    auto R = representable(s, D);
    auto B = box_of_shape(s, D);
    auto N = nerve(free_cell_2cat(s), D);
    for (auto& t : targets) {
      auto rc = R->cells(t);
      std::set<Cell> rset(rc.begin(), rc.end());
      auto bc = B->cells(t);
      if (std::set<Cell>(bc.begin(), bc.end()) != rset || bc.size() != rc.size()) o.fail("box cells at " + to_string(t));
      auto nc = N->cells(t);
      std::set<Cell> image;
      for (auto& x : nc) image.insert(to_cell(free_nerve_operator(s, *N, x)));
      if (image != rset || nc.size() != rc.size()) o.fail("nerve cells at " + to_string(t));
      cells += static_cast<long>(rc.size());
      for (auto& g : gens[t]) {
        for (auto& x : bc)
          if (B->act(x, g) != R->act(x, g)) o.fail("box action at " + to_string(g));
        for (auto& x : nc)
          if (to_cell(free_nerve_operator(s, *N, N->act(x, g))) != R->act(to_cell(free_nerve_operator(s, *N, x)), g))
            o.fail("nerve action at " + to_string(g));
      }
    }
  }
  if (o.ok) o.detail = std::to_string(cells) + " cells per model";
  return o;
}

Outcome claims() {
  Outcome o;
  long checks = 0;
  std::vector<ThetaShape> shapes;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      shapes.emplace_back(2, std::vector<int>{a, b});
      for (int c = 0; c <= 2; ++c) shapes.emplace_back(3, std::vector<int>{a, b, c});
    }
  auto take = [&](const std::vector<ClaimCheck>& v, const std::string& where) {
    for (auto& c : v) {
      ++checks;
      if (!c.ok) o.fail("claim " + c.claim + " " + c.detail + " in " + where);
    }
  };
  for (auto& s : shapes)
    for (int k = 1; k <= s.n - 1; ++k) {
      auto sh = shuffles(s.qk(k), s.qk(k + 1));
      for (auto& a : sh) {
        take(claims_oracle(s, k, a), to_string(s));
        for (auto& b : sh)
          if (shuffle_leq(a, b) && a != b) take(claims_prime_oracle(s, k, a, b), to_string(s));
      }
    }
  if (o.ok) o.detail = std::to_string(checks) + " predictions";
  return o;
}

Outcome replays() {
  Outcome o;
  long runs = 0, steps = 0;
  auto take = [&](const ReplayReport& r) {
    ++runs;
    steps += static_cast<long>(r.steps.size());
    if (!r.ok()) o.fail(r.script + " " + r.params.dump());
  };
  for (auto& s : all_shapes(4)) {
    take(spine_anodyne(s));
    for (auto& S : downward_closed_outer_sets(s)) take(sigma_S(s, S));
    for (auto& S : admissible_sets(s, true)) take(upsilon_vertical(s, S));
    for (auto& S : admissible_sets(s, false)) take(upsilon_full(s, S));
    for (auto& S : oury_sets(s)) take(oury_from_alt(s, S));
    for (int k = 1; k <= s.n - 1; ++k)
      for (auto& a : shuffles(s.qk(k), s.qk(k + 1)))
        for (auto& I : alt_index_sets(a)) take(alt_trivial(s, k, a, I));
  }
  if (o.ok) o.detail = std::to_string(runs) + " replays, " + std::to_string(steps) + " squares";
  return o;
}

Outcome j_replays() {
  Outcome o;
  auto check = [&](const ReplayReport& r, int D) {
    bool flagged = false;
    for (auto& n : r.notes) flagged = flagged || n.find("uncertified") != std::string::npos;
    if (!r.ok() || r.certified_dim != D - 1 || !flagged) o.fail(r.script + " " + r.params.dump());
  };
  ReplayOptions v;
  v.bound = 5;
  for (auto [text, k] : std::vector<std::pair<const char*, int>>{
           {"[1;0]", 1}, {"[2;0,0]", 1}, {"[2;0,0]", 2}, {"[2;0,1]", 1}, {"[2;0,2]", 1}})
    check(vert_equiv(parse_shape(text), k, v), v.bound);
  ReplayOptions h;
  h.bound = 4;
  for (auto text : {"[1;0]", "[1;1]", "[2;0,0]"}) check(horiz_equiv(parse_shape(text), h), h.bound);
  if (o.ok) o.detail = "vert at D = 5, horiz at D = 4, certified through D - 1";
  return o;
}

Outcome lifting_and_mutations() {
  Outcome o;
  // J: a cell is its vertex list, and a chaotic category composes uniquely.
  const int D = 4;
  auto J = from_simplicial(SimplicialSubset::interval(), D);
  for (auto fam : {"inner-h", "inner-v", "alt-h"}) {
    auto rep = lift_check(J, fam, D);
    if (!rep.ok() || rep.filled != rep.maps) o.fail(std::string("J misses a filler for ") + fam);
  }
  for (auto& s : all_shapes(D - 1))
    for (int k = 1; k <= s.n - 1; ++k) {
      std::vector<HyperfaceLabel> gens;
      std::vector<CellularOperator> ops;
      for (auto& l : hyperface_labels(s))
        if (!(l.is_horizontal() && l.k == k)) {
          gens.push_back(l);
          ops.push_back(hyperface(s, l));
        }
      auto fillers = J->cells(s);
      if (fillers.size() != (1u << (s.n + 1))) o.fail("J cells at " + to_string(s));
      for (auto& m : horn_maps(J, s, gens)) {
        int count = 0;
        for (auto& y : fillers) {
          bool ok = true;
          for (std::size_t t = 0; t < ops.size(); ++t) ok = ok && J->act(y, ops[t]) == m[t];
          count += ok;
        }
        if (count != 1) o.fail("filler of a horn in J at " + to_string(s) + " is not unique");
      }
    }

  // One engineered failure per check type.
  auto s = parse_shape("[2;1,1]");
  ReplayOptions bad;
  bad.mutation = Mutation::CorruptW;
  bad.mutation_step = 1;
  auto corrupt = spine_anodyne(s, bad);
  bool pullback_caught = !corrupt.ok() && !corrupt.steps.back().checks.pullback;
  bool cover_caught = !corrupt.ok() && !corrupt.steps.back().checks.cover;
  bad.mutation = Mutation::DropStep;
  bad.mutation_step = 2;
  auto dropped = spine_anodyne(s, bad);
  bool union_caught = !dropped.ok() && !dropped.equals_target;
  ReplayOptions jbad;
  jbad.bound = 4;
  jbad.mutation = Mutation::CorruptW;
  jbad.mutation_step = 1;
  bool j_caught = !vert_equiv(parse_shape("[2;0,0]"), 1, jbad).ok() && !horiz_equiv(parse_shape("[1;0]"), jbad).ok();

  auto p = parse_shape("[1;0]");
  auto R = representable(p, 3);
  bool injective_caught = false;
  for (auto& c : R->cells(parse_shape("[1;1]"))) {
    if (is_nondegenerate(*R, c) || R->decompose(c).nondegenerate.shape != p) continue;
    Subobject Y(R);
    for (auto& l : hyperface_labels(p)) Y.add(to_cell(hyperface(p, l)));
    auto res = verify_gluing(Y, attach_cell(R, c, pullback_along(Y, c), {"none"}), 3);
    injective_caught = res.checks.pullback && !res.checks.injective;
  }
  if (!pullback_caught) o.fail("corrupted W passed the pullback check");
  if (!cover_caught) o.fail("corrupted W passed the cover check");
  if (!union_caught) o.fail("dropped step passed the final union check");
  if (!injective_caught) o.fail("degenerate attachment passed the injectivity check");
  if (!j_caught) o.fail("corrupted W passed a J replay");

  auto nR = representable(parse_shape("[2;0,0]"), 3);
  Subobject H(nR);
  H.add(to_cell(hyperface(parse_shape("[2;0,0]"), HyperfaceLabel::horizontal(0))));
  H.add(to_cell(hyperface(parse_shape("[2;0,0]"), HyperfaceLabel::horizontal(2))));
  if (lift_check(subobject_set(H, "horn"), "inner-h", 3).ok()) o.fail("a bare horn reported a filler");
  if (o.ok) o.detail = "J fills uniquely; pullback, cover, injective and union failures caught";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"category laws", category_laws},
      {"shuffle lattice", shuffle_lattice},
      {"Eilenberg-Zilber uniqueness", ez_uniqueness},
      {"hyperface factorization", hyperface_props},
      {"boundary and horn coherence", boundary_horns},
      {"box and nerve models of representables", box_representable},
      {"claims oracle suite", claims},
      {"replay certificates", replays},
      {"J-truncated replays", j_replays},
      {"lifting smoke tests and mutations", lifting_and_mutations},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.ok;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << " (" << o.detail
         << "; " << secs << " s)";
    std::cout << line.str() << std::endl;
  }
  return all ? 0 : 1;
}
