#include <map>
#include <set>

#include "doctest.h"
#include "theta2/error.hpp"
#include "theta2/theta.hpp"

using namespace theta2;

namespace {

ThetaShape S(const char* s) { return parse_shape(s); }
CellularOperator C(const char* s) { return parse_cellular(s); }

// Faces into dst found by filtering every operator from every smaller shape.
std::set<CellularOperator> brute_faces(const ThetaShape& dst) {
  std::set<CellularOperator> out;
  for (auto& src : all_shapes(dst.dim()))
    for (auto& f : all_operators(src, dst))
      if (is_face(f)) out.insert(f);
  return out;
}

}  // namespace

TEST_CASE("shape text and dimension") {
  CHECK(to_string(S("[2;0,2]")) == "[2;0,2]");
  CHECK(S("[2;0,2]").dim() == 4);
  CHECK(S("[0]").dim() == 0);
  CHECK(S("[3]") == ThetaShape(3, {0, 0, 0}));
  CHECK_THROWS_AS(S("[2;1]"), ParseError);
  CHECK_THROWS_AS(S("2;1,1"), ParseError);
  int count3 = 0;
  for (auto& s : all_shapes(3)) count3 += s.dim() == 3;
  CHECK(count3 == 4);  // [3], [2;1,0], [2;0,1], [1;2]
}

TEST_CASE("operator text round trip and validation") {
  auto f = C("[{1,2};{0,1}]:[1;1]->[2;0,2]");
  CHECK(to_string(f) == "[{1,2};{0,1}]:[1;1]->[2;0,2]");
  auto g = C("[{0,2};{0,0,0},{0,1,2}]:[1;2]->[2;0,2]");
  CHECK(parse_cellular(to_string(g)) == g);
  CHECK_THROWS_AS(C("[{0,2};{0,1}]:[1;2]->[2;0,2]"), ParseError);
  CHECK_THROWS_AS(C("[{0,1}]:[1;0]->[2;0,2]"), ParseError);
}

TEST_CASE("category laws") {
  auto shapes = all_shapes(2);
  for (auto& a : shapes)
    for (auto& b : shapes)
      for (auto& c : shapes)
        for (auto& g : all_operators(a, b))
          for (auto& f : all_operators(b, c)) {
            CHECK(compose(f, g).src() == a);
            CHECK(compose(identity(c), f) == f);
            CHECK(compose(f, identity(b)) == f);
            for (auto& d : shapes)
              for (auto& e : all_operators(c, d)) CHECK(compose(e, compose(f, g)) == compose(compose(e, f), g));
          }
  CHECK_THROWS_AS(compose(identity(S("[1;0]")), identity(S("[1;1]"))), ArityMismatch);
}

TEST_CASE("composite evaluated componentwise") {
  auto d = C("[{0,1};!]:[1;0]->[2;0,2]");
  CHECK(compose(d, C("[{0,1};!]:[1;0]->[1;0]")) == d);
  auto g = C("[{1,2};{0,2}]:[1;1]->[2;0,2]");
  auto h = C("[{0,1};{1}]:[1;0]->[1;1]");
  CHECK(compose(g, h) == C("[{1,2};{2}]:[1;0]->[2;0,2]"));
}

TEST_CASE("classification of faces of [2;0,2]") {
  auto f0 = classify(C("[{1,2};{0,1,2}]:[1;2]->[2;0,2]"));
  CHECK(f0.face);
  CHECK(f0.outer);
  CHECK(f0.horizontal);
  CHECK(f0.inert);
  auto f1 = classify(C("[{0,2};!,{0,1,2}]:[1;2]->[2;0,2]"));
  CHECK(f1.face);
  CHECK(f1.inner);
  CHECK(f1.horizontal);
  CHECK_FALSE(f1.inert);
  auto f2 = classify(C("[{0,1,2};!,{0,2}]:[2;0,1]->[2;0,2]"));
  CHECK(f2.face);
  CHECK(f2.inner);
  CHECK(f2.vertical);
  CHECK_FALSE(f2.horizontal);
  CHECK_FALSE(f2.inert);
}

TEST_CASE("hyperfaces are exactly the codimension-one faces") {
  for (auto& s : all_shapes(5)) {
    auto hf = hyperfaces(s);
    CHECK(static_cast<long long>(hf.size()) == hyperface_count_formula(s));
    std::set<CellularOperator> listed;
    for (auto& h : hf) {
      CHECK(is_face(h.op));
      CHECK(codim(h.op) == 1);
      CHECK(is_outer(s, h.label) == classify(h.op).outer);
      listed.insert(h.op);
    }
    CHECK(listed.size() == hf.size());
    if (s.dim() <= 4) {
      std::set<CellularOperator> codim1;
      for (auto& f : brute_faces(s))
        if (codim(f) == 1) codim1.insert(f);
      CHECK(codim1 == listed);
    }
    for (auto& a : hf)
      for (auto& b : hf)
        if (!(a.op == b.op)) CHECK_FALSE(factor_through(a.op, b.op).has_value());
  }
}

TEST_CASE("hyperface examples") {
  CHECK(hyperfaces(S("[2;0,2]")).size() == 5);
  CHECK(hyperfaces(S("[1;2]")).size() == 3);
  CHECK(hyperfaces(S("[0]")).empty());
  CHECK(codim(C("[{0,2};{0,1},{0,1}]:[1;1]->[2;1,1]")) == 2);
  CHECK(codim(identity(S("[2;1,1]"))) == 0);
  CHECK(codim(hyperface(S("[2;0,2]"), HyperfaceLabel::horizontal(0))) == 1);
  CHECK_THROWS_AS(codim(C("[{0,0}]:[1;0]->[1;0]")), InvalidOperator);
  CHECK_THROWS_AS(hyperface(S("[2;0,2]"), HyperfaceLabel::horizontal(2)), RangeError);
  CHECK(to_string(parse_hyperface_label("h1:<{0,0,0},{0,1,2}>")) == "h1:<{0,0,0},{0,1,2}>");
  CHECK(parse_hyperface_set("v2:1; h0 h1:<{0,0,0},{0,1,2}>").size() == 3);
}

TEST_CASE("face enumeration matches filtering") {
  for (auto& s : all_shapes(4)) {
    auto listed = faces_into(s);
    std::set<CellularOperator> set(listed.begin(), listed.end());
    CHECK(set.size() == listed.size());
    CHECK(set == brute_faces(s));
  }
}

TEST_CASE("positive-codimension faces factor through hyperfaces") {
  for (auto& s : all_shapes(5)) {
    auto hf = hyperfaces(s);
    for (auto& f : faces_into(s)) {
      if (f.src() == s) continue;
      bool any = false, outer_ok = false;
      for (auto& h : hf)
        if (auto r = factor_through(f, h.op)) {
          CHECK(compose(h.op, *r) == f);
          any = true;
          outer_ok = outer_ok || is_outer(s, h.label);
        }
      CHECK(any);
      if (classify(f).outer) CHECK(outer_ok);
    }
  }
}

TEST_CASE("factor_through agrees with search") {
  for (auto& s : all_shapes(3)) {
    auto fs = faces_into(s);
    for (auto& g : fs)
      for (auto& f : fs) {
        std::optional<CellularOperator> found;
        for (auto& h : all_operators(f.src(), g.src()))
          if (compose(g, h) == f) found = h;
        CHECK(factor_through(f, g) == found);
      }
  }
  auto vertex = C("[{0}]:[0]->[2;0,2]");
  auto dh2 = C("[{0,1};!]:[1;0]->[2;0,2]");
  CHECK(factor_through(vertex, dh2).has_value());
  CHECK(factor_through(identity(S("[2;0,2]")), identity(S("[2;0,2]"))) == identity(S("[2;0,2]")));
}

TEST_CASE("Reedy factorization exists and is unique") {
  for (auto& src : all_shapes(4)) {
    auto degs = degeneracies_from(src);
    for (auto& dst : all_shapes(4)) {
      std::map<CellularOperator, int> hits;
      auto faces = faces_into(dst);
      for (auto& s : degs)
        for (auto& d : faces)
          if (d.src() == s.dst()) hits[compose(d, s)]++;
      for (auto& f : all_operators(src, dst)) {
        CHECK(hits[f] == 1);
        auto [s, d] = reedy_factor(f);
        CHECK(is_degeneracy(s));
        CHECK(is_face(d));
        CHECK(compose(d, s) == f);
      }
    }
  }
  auto f = C("[{0,0,1};{0,1}]:[2;0,1]->[1;1]");
  auto [s, d] = reedy_factor(f);
  CHECK(d == identity(S("[1;1]")));
  CHECK(s == f);
  auto face = hyperface(S("[2;0,2]"), HyperfaceLabel::vertical(2, 1));
  CHECK(reedy_factor(face).face == face);
  CHECK(reedy_factor(face).degeneracy == identity(face.src()));
}

TEST_CASE("sections of degeneracies") {
  for (auto& src : all_shapes(4))
    for (auto& s : degeneracies_from(src)) {
      auto d = section(s);
      CHECK(is_face(d));
      CHECK(compose(s, d) == identity(s.dst()));
    }
}

TEST_CASE("dualities are involutive functors") {
  auto shapes = all_shapes(3);
  for (auto& a : shapes)
    for (auto& b : shapes)
      for (auto& g : all_operators(a, b)) {
        CHECK(co_dual(co_dual(g)) == g);
        CHECK(op_dual(op_dual(g)) == g);
        if (a.dim() + b.dim() <= 4)
          for (auto& c : shapes)
            for (auto& f : all_operators(b, c)) {
              CHECK(co_dual(compose(f, g)) == compose(co_dual(f), co_dual(g)));
              CHECK(op_dual(compose(f, g)) == compose(op_dual(f), op_dual(g)));
            }
      }
  auto h = hyperface(S("[2;0,2]"), HyperfaceLabel::horizontal(1, Shuffle(0, 2, {0, 0, 0})));
  CHECK(co_dual(h) == h);
  auto v20 = hyperface(S("[2;0,2]"), HyperfaceLabel::vertical(2, 0));
  CHECK(op_dual(v20) == hyperface(S("[2;2,0]"), HyperfaceLabel::vertical(1, 0)));
  CHECK(co_dual(op_dual(v20)) == hyperface(S("[2;2,0]"), HyperfaceLabel::vertical(1, 2)));
}

TEST_CASE("vertebrae") {
  auto v = vertebrae(S("[2;0,2]"));
  REQUIRE(v.size() == 3);
  CHECK(v[0] == C("[{0,1};!]:[1;0]->[2;0,2]"));
  CHECK(v[1] == C("[{1,2};{0,1}]:[1;1]->[2;0,2]"));
  CHECK(v[2] == C("[{1,2};{1,2}]:[1;1]->[2;0,2]"));
  CHECK(vertebrae(S("[1;3]")).size() == 3);
  for (auto& s : all_shapes(5))
    CHECK(is_mono_vertebral(s) == (s == S("[0]") || s == S("[1;0]") || s == S("[1;1]")));
  for (auto& s : all_shapes(4))
    for (auto& f : vertebrae(s)) CHECK(classify(f).inert);
}

TEST_CASE("outer hyperface order") {
  auto o = outer_hyperface_order(S("[2;0,2]"));
  REQUIRE(o.size() == 3);
  CHECK(o[0] == HyperfaceLabel::vertical(2, 0));
  CHECK(o[1] == HyperfaceLabel::horizontal(0));
  CHECK(o[2] == HyperfaceLabel::vertical(2, 2));
  auto o2 = outer_hyperface_order(S("[1;0]"));
  REQUIRE(o2.size() == 2);
  CHECK(o2[0] == HyperfaceLabel::horizontal(0));
  CHECK(o2[1] == HyperfaceLabel::horizontal(1));
  CHECK(outer_hyperface_order(S("[0]")).empty());
  for (auto& s : all_shapes(5)) {
    auto ord = outer_hyperface_order(s);
    auto outer = outer_hyperface_labels(s);
    CHECK(std::set<HyperfaceLabel>(ord.begin(), ord.end()) == std::set<HyperfaceLabel>(outer.begin(), outer.end()));
    CHECK(ord.size() == outer.size());
  }
}
