#include <map>
#include <random>

#include "doctest.h"
#include "theta2/cellset.hpp"
#include "theta2/error.hpp"

using namespace theta2;

namespace {

Cell op_cell(const std::string& text) { return to_cell(parse_cellular(text)); }

Subobject closure_of_labels(const ThetaShape& s, const std::vector<std::string>& labels) {
  auto rep = representable(s);
  std::vector<Cell> gens;
  for (auto& l : labels) gens.push_back(to_cell(hyperface(s, parse_hyperface_label(l))));
  return Subobject::generated(rep, gens);
}

Subobject spine_of(const ThetaShape& s) {
  std::vector<Cell> gens;
  for (auto& v : vertebrae(s)) gens.push_back(to_cell(v));
  return Subobject::generated(representable(s), gens);
}

// Counts (nondegenerate y, degeneracy s) with y . s == x by exhaustive search.
int brute_ez_count(const CellularSet& X, const Cell& x, int max_dim) {
  int count = 0;
  for (auto& t : all_shapes(max_dim))
    for (auto& sigma : all_operators(x.shape, t)) {
      if (!classify(sigma).degeneracy) continue;
      for (auto& y : X.cells(t))
        if (is_nondegenerate(X, y) && X.act(y, sigma) == x) ++count;
    }
  return count;
}

void check_functorial(const CellularSet& X, int max_dim) {
  auto shapes = all_shapes(max_dim);
  for (auto& s : shapes)
    for (auto& x : X.cells(s))
      for (auto& t : shapes) {
        auto fs = all_operators(t, s);
        CHECK(X.act(x, identity(s)) == x);
        for (auto& u : shapes)
          for (auto& g : all_operators(u, t))
            for (auto& f : fs) REQUIRE(X.act(X.act(x, f), g) == X.act(x, compose(f, g)));
      }
}

}  // namespace

TEST_CASE("terminal representable") {
  auto pt = representable(parse_shape("[0]"), 2);
  for (auto& s : all_shapes(2)) CHECK(pt->cells(s).size() == 1);
}

TEST_CASE("nondegenerate cells of Theta[1;1]") {
  auto r = representable(parse_shape("[1;1]"), 2);
  auto nd = nondegenerate_cells(*r, 2);
  CHECK(nd.size() == 5);
  std::set<std::string> names;
  for (auto& c : nd) names.insert(r->format(c));
  CHECK(names == std::set<std::string>{"[{0,1};{0,1}]:[1;1]->[1;1]", "[{0,1};{0}]:[1;0]->[1;1]",
                                       "[{0,1};{1}]:[1;0]->[1;1]", "[{0}]:[0]->[1;1]", "[{1}]:[0]->[1;1]"});
}

TEST_CASE("cells of a representable are the operators into it") {
  auto s = parse_shape("[2;0,2]");
  auto r = representable(s);
  auto t = parse_shape("[1;1]");
  // components at uncovered positions are dropped, so count distinct operators
  std::size_t unique = 0;
  std::set<CellularOperator> seen;
  for (auto& h : all_operators(1, 2))
    for (auto& c1 : all_operators(1, 0))
      for (auto& c2 : all_operators(1, 2)) {
        std::vector<SimplicialOperator> comps;
        for (int k = h(0) + 1; k <= h(1); ++k) comps.push_back(k == 1 ? c1 : c2);
        if (seen.insert(CellularOperator(t, s, h, comps)).second) ++unique;
      }
  CHECK(r->cells(t).size() == unique);
}

TEST_CASE("hyperfaces of [2;0,2] generate the boundary") {
  auto s = parse_shape("[2;0,2]");
  auto rep = representable(s);
  std::vector<Cell> gens;
  for (auto& h : hyperfaces(s)) gens.push_back(to_cell(h.op));
  auto bd = Subobject::generated(rep, gens);
  auto expected = Subobject::from_predicate(
      rep, [&](const Cell& c) { return c.shape.dim() < s.dim(); }, s.dim());
  CHECK(bd == expected);
  CHECK(bd.contains(op_cell("[{0}]:[0]->[2;0,2]")));
  CHECK(bd.contains(op_cell("[{0,2};!,{0,0}]:[1;1]->[2;0,2]")));
  CHECK_FALSE(bd.contains(rep->identity_cell()));
}

TEST_CASE("closure of the identity is the whole representable") {
  for (auto& s : all_shapes(3)) {
    auto rep = representable(s);
    auto all = Subobject::generated(rep, {rep->identity_cell()});
    CHECK(all == Subobject::full(rep, s.dim()));
    CHECK(all.generators() == std::vector<Cell>{rep->identity_cell()});
  }
}

TEST_CASE("spine of [2;1,1]") {
  auto s = parse_shape("[2;1,1]");
  auto sp = spine_of(s);
  CHECK_FALSE(sp.contains(to_cell(hyperface(s, HyperfaceLabel::vertical(1, 0)))));
  CHECK(sp.generators().size() == 2);
  CHECK(sp.contains(op_cell("[{1}]:[0]->[2;1,1]")));
  CHECK_FALSE(sp.contains(op_cell("[{0,2};{0},{0}]:[1;0]->[2;1,1]")));
}

TEST_CASE("membership is closed under degeneracies") {
  auto s = parse_shape("[2;0,2]");
  auto rep = representable(s);
  auto sub = closure_of_labels(s, {"h0", "v2:1"});
  for (auto& t : all_shapes(4))
    for (auto& c : rep->cells(t)) {
      auto d = rep->decompose(c);
      CHECK(sub.contains(c) == sub.contains_nondegenerate(d.nondegenerate));
    }
}

TEST_CASE("action is functorial") {
  check_functorial(*representable(parse_shape("[2;0,1]")), 2);
  check_functorial(*from_simplicial(SimplicialSubset::interval(), 3), 2);
  auto jt = product(from_simplicial(SimplicialSubset::interval(), 3), representable(parse_shape("[1;1]")), 3);
  check_functorial(*jt, 2);
}

TEST_CASE("Eilenberg-Zilber decomposition is unique") {
  std::vector<CellularSetPtr> sets = {
      representable(parse_shape("[1;1]")), representable(parse_shape("[2;0,0]")),
      from_simplicial(SimplicialSubset::interval(), 3), from_simplicial(SimplicialSubset::horn(2, 1), 3),
      product(from_simplicial(SimplicialSubset::interval(), 3), representable(parse_shape("[1;0]")), 3)};
  for (auto& X : sets)
    for (auto& t : all_shapes(3))
      for (auto& x : X->cells(t)) {
        auto d = X->decompose(x);
        CHECK(X->act(d.nondegenerate, d.degeneracy) == x);
        CHECK(classify(d.degeneracy).degeneracy);
        CHECK(is_nondegenerate(*X, d.nondegenerate));
        if (t.dim() <= 2) CHECK(brute_ez_count(*X, x, 3) == 1);
      }
}

TEST_CASE("closure is idempotent and monotone") {
  auto s = parse_shape("[2;1,1]");
  auto rep = representable(s);
  auto faces = faces_into(s);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Cell> a, b;
    for (auto& f : faces) {
      auto r = rng() % 8;
      if (r == 0) a.push_back(to_cell(f));
      if (r <= 1) b.push_back(to_cell(f));
    }
    auto ca = Subobject::generated(rep, a);
    auto cb = Subobject::generated(rep, b);
    std::vector<Cell> members(ca.cells().begin(), ca.cells().end());
    CHECK(Subobject::generated(rep, members) == ca);
    CHECK(Subobject::generated(rep, ca.generators()) == ca);
    CHECK(is_subset(ca, cb));
    // lattice laws
    CHECK(unite(ca, cb) == cb);
    CHECK(intersect(ca, cb) == ca);
    CHECK(unite(ca, intersect(ca, cb)) == ca);
    CHECK(intersect(cb, unite(ca, cb)) == cb);
    CHECK(unite(ca, cb) == unite(cb, ca));
    CHECK(intersect(ca, cb) == intersect(cb, ca));
  }
}

TEST_CASE("subobjects of different ambients do not mix") {
  auto a = Subobject::full(representable(parse_shape("[1;0]")), 1);
  auto b = Subobject::full(representable(parse_shape("[1;1]")), 2);
  CHECK_THROWS_AS(unite(a, b), AmbientMismatch);
  CHECK_THROWS_AS(intersect(a, b), AmbientMismatch);
}

TEST_CASE("inert faces pull spines back to spines") {
  for (auto& s : all_shapes(4)) {
    auto sp = spine_of(s);
    for (auto& g : faces_into(s)) {
      if (!classify(g).inert) continue;
      CHECK(pullback_along(sp, to_cell(g)) == spine_of(g.src()));
    }
  }
}

TEST_CASE("pullbacks along cells") {
  auto s = parse_shape("[2;1,1]");
  auto full = Subobject::full(representable(s), 4);
  for (auto& f : faces_into(s)) CHECK(pullback_along(full, to_cell(f)) == Subobject::full(representable(f.src()), 4));

  auto v10 = closure_of_labels(s, {"v1:0"});
  auto along = hyperface(s, HyperfaceLabel::vertical(2, 0));
  auto expected = closure_of_labels(along.src(), {"v1:0"});
  CHECK(pullback_along(v10, to_cell(along)) == expected);

  auto y = yoneda_map(representable(s), to_cell(along));
  CHECK(pullback_along(v10, y, 4) == expected);
}

TEST_CASE("J as a cellular set") {
  auto J = from_simplicial(SimplicialSubset::interval(), 4);
  for (auto& s : all_shapes(4)) CHECK(J->cells(s).size() == (std::size_t{1} << (s.n + 1)));
  CHECK(J->nondegenerate(parse_shape("[1;1]")).empty());
  CHECK(J->nondegenerate(parse_shape("[3;0,0,0]")).size() == 2);
}

TEST_CASE("product with the terminal object") {
  auto X = representable(parse_shape("[2;0,1]"));
  auto P = product(X, representable(parse_shape("[0]"), 3), 3);
  for (auto& s : all_shapes(3)) {
    CHECK(P->cells(s).size() == X->cells(s).size());
    CHECK(P->nondegenerate(s).size() == X->nondegenerate(s).size());
  }
}

TEST_CASE("J x Theta[1;0] in degree [1;0]") {
  auto J = from_simplicial(SimplicialSubset::interval(), 3);
  auto T = representable(parse_shape("[1;0]"));
  auto P = std::dynamic_pointer_cast<const ProductSet>(product(J, T, 3));
  auto e = parse_shape("[1;0]");
  auto cells = P->cells(e);
  CHECK(cells.size() == 12);
  auto id = T->identity_cell();
  int horizontal = 0;
  for (auto& c : cells) {
    auto [a, b] = P->split(c);
    if (b == id) ++horizontal;
    for (auto& f : all_operators(parse_shape("[0]"), e))
      CHECK(P->act(c, f) == P->pair(J->act(a, f), T->act(b, f)));
  }
  CHECK(horizontal == 4);
  CHECK(P->nondegenerate(e).size() == 8);
}
