#include <set>

#include "doctest.h"
#include "theta2/anodyne.hpp"
#include "theta2/error.hpp"
#include "theta2/simplicial.hpp"

using namespace theta2;

namespace {

HyperfaceLabel hz(int k) { return HyperfaceLabel::horizontal(k); }
HyperfaceLabel hz(int k, const std::string& sh) { return HyperfaceLabel::horizontal(k, parse_shuffle(sh)); }
HyperfaceLabel vt(int k, int i) { return HyperfaceLabel::vertical(k, i); }

Subobject whole(const ThetaShape& s) { return Subobject::full(representable(s), s.dim()); }

CellularOperator vertex(const ThetaShape& s, int x) {
  for (auto& f : faces_into(s))
    if (f.src().dim() == 0 && f.horizontal().values() == std::vector<int>{x}) return f;
  throw RangeError("no such vertex");
}

bool all_ok(const std::vector<ClaimCheck>& v) {
  for (auto& c : v)
    if (!c.ok) return false;
  return true;
}

}  // namespace

TEST_CASE("attaching the top cell along the full representable changes nothing") {
  auto s = parse_shape("[2;1,0]");
  auto R = representable(s);
  auto Y = whole(s);
  auto step = attach_cell(R, to_cell(identity(s)), whole(s), {"none"});
  auto res = verify_gluing(Y, step, s.dim());
  CHECK(res.checks.ok());
  CHECK(res.after == Y);
}

TEST_CASE("gluing along the boundary attaches exactly the top cell") {
  auto s = parse_shape("[1;2]");
  auto R = representable(s);
  auto Y = boundary(s).domain;
  auto res = verify_gluing(Y, attach_cell(R, to_cell(identity(s)), boundary(s).domain, {"none"}), s.dim());
  CHECK(res.checks.ok());
  CHECK(res.after == whole(s));
}

TEST_CASE("a W with one generator dropped fails the pullback check") {
  auto s = parse_shape("[1;2]");
  auto R = representable(s);
  auto labels = hyperface_labels(s);
  labels.pop_back();
  auto W = hyperface_closure(s, labels);
  auto res = verify_gluing(boundary(s).domain, attach_cell(R, to_cell(identity(s)), W, {"none"}), s.dim());
  CHECK_FALSE(res.checks.pullback);
  CHECK(res.checks.injective);
  CHECK_FALSE(res.failures.empty());
}

TEST_CASE("a degenerate attaching cell fails the injectivity check") {
  auto s10 = parse_shape("[1;0]");
  auto s11 = parse_shape("[1;1]");
  auto R = representable(s10, 3);
  std::optional<Cell> phi;
  for (auto& c : R->cells(s11))
    if (!is_nondegenerate(*R, c) && R->decompose(c).nondegenerate.shape == s10) phi = c;
  REQUIRE(phi);
  Subobject Y(R);
  for (auto& l : hyperface_labels(s10)) Y.add(to_cell(hyperface(s10, l)));
  auto res = verify_gluing(Y, attach_cell(R, *phi, pullback_along(Y, *phi), {"none"}), 3);
  CHECK(res.checks.pullback);
  CHECK_FALSE(res.checks.injective);
}

TEST_CASE("pullback of a lower vertical face along a later one") {
  auto s = parse_shape("[2;1,1]");
  auto p = hyperface_source(s, vt(2, 0));
  CHECK(same_cells(pullback_hyperface(s, vt(1, 0), vt(2, 0)), hyperface_closure(p, {vt(1, 0)})));
  auto t = parse_shape("[3;2,1,2]");
  auto pt = hyperface_source(t, vt(3, 0));
  CHECK(same_cells(pullback_hyperface(t, vt(1, 0), vt(3, 0)), hyperface_closure(pt, {vt(1, 0)})));
}

TEST_CASE("pullback of the first vertical face along the second is the first horizontal face plus a point") {
  for (auto text : {"[2;1,0]", "[2;1,2]", "[3;1,1,0]"}) {
    auto s = parse_shape(text);
    auto p = hyperface_source(s, vt(1, 1));
    auto expect = hyperface_closure(p, {hz(0)});
    expect.add(to_cell(vertex(p, 0)));
    CHECK_MESSAGE(same_cells(pullback_hyperface(s, vt(1, 0), vt(1, 1)), expect), text);
  }
}

TEST_CASE("a vertical face pulls back to a single vertical face when the fibre is a point") {
  auto s = parse_shape("[2;2,1]");
  for (auto& a : shuffles(2, 1)) {
    auto d = HyperfaceLabel::horizontal(1, a);
    auto p = hyperface_source(s, d);
    auto vals = a.alpha();
    for (int j = 0; j < static_cast<int>(vals.size()); ++j) {
      if (vals[static_cast<std::size_t>(j)] != 1) continue;
      if (std::count(vals.begin(), vals.end(), 1) != 1) continue;
      CHECK(same_cells(pullback_hyperface(s, vt(1, 1), d), hyperface_closure(p, {vt(1, j)})));
    }
  }
}

TEST_CASE("admissibility") {
  CHECK_FALSE(is_admissible(parse_shape("[1;2]"), {vt(1, 1)}).admissible);
  auto empty = is_admissible(parse_shape("[1;2]"), {});
  CHECK(empty.admissible);
  auto s = parse_shape("[2;1,1]");
  auto mixed = is_admissible(s, {HyperfaceLabel::horizontal(1, shuffles(1, 1).front())});
  CHECK(mixed.admissible);
  REQUIRE(mixed.k_S);
  CHECK(*mixed.k_S == 1);
  // the top shuffle alone is not downward closed
  CHECK_FALSE(is_admissible(s, {HyperfaceLabel::horizontal(1, shuffles(1, 1).back())}).admissible);
  CHECK_THROWS_AS(is_admissible(s, {hz(0)}), RangeError);
}

TEST_CASE("every admissible set the enumerator returns is admissible") {
  for (auto& s : all_shapes(4))
    for (bool vo : {true, false})
      for (auto& S : admissible_sets(s, vo)) {
        CHECK(is_admissible(s, S).admissible);
        if (vo)
          for (auto& l : S) CHECK(l.is_vertical());
      }
}

TEST_CASE("spine replay starts by gluing a spine along the last vertical face") {
  auto r = spine_anodyne(parse_shape("[1;3]"));
  REQUIRE(r.ok());
  REQUIRE_FALSE(r.steps.empty());
  CHECK(r.steps.front().horn.family == "spine");
  CHECK(r.steps.front().checks.ok());
  CHECK(r.equals_target);
}

TEST_CASE("mono-vertebral shapes replay trivially") {
  for (auto text : {"[0]", "[1;0]", "[1;1]"}) {
    auto r = spine_anodyne(parse_shape(text));
    CHECK(r.ok());
    CHECK(r.trivial);
  }
  CHECK(upsilon_full(parse_shape("[2;1,1]"), {}).trivial);
}

TEST_CASE("core replays certify for every shape of dim <= 3") {
  for (auto& s : all_shapes(3)) {
    CAPTURE(to_string(s));
    CHECK(spine_anodyne(s).ok());
    for (auto& S : downward_closed_outer_sets(s)) CHECK(sigma_S(s, S).ok());
    for (auto& S : admissible_sets(s, true)) CHECK(upsilon_vertical(s, S).ok());
    for (auto& S : admissible_sets(s, false)) CHECK(upsilon_full(s, S).ok());
    for (auto& S : oury_sets(s)) CHECK(oury_from_alt(s, S).ok());
    for (int k = 1; k <= s.n - 1; ++k)
      for (auto& a : shuffles(s.qk(k), s.qk(k + 1)))
        for (auto& I : alt_index_sets(a)) CHECK(alt_trivial(s, k, a, I).ok());
  }
}

TEST_CASE("T-sets of upsilon_full are admissible and smaller") {
  for (auto& s : all_shapes(4))
    for (auto& S : admissible_sets(s, false)) {
      auto r = upsilon_full(s, S);
      for (auto& st : r.steps)
        if (st.extra.is_object() && st.extra.contains("T_size")) CHECK(st.extra["T_size"] < st.extra["S_size"]);
    }
}

TEST_CASE("J replays certify below the truncation and flag the tail") {
  ReplayOptions opt;
  opt.bound = 4;
  for (auto [text, k] : std::vector<std::pair<const char*, int>>{{"[1;0]", 1}, {"[2;0,0]", 1}, {"[2;0,0]", 2}}) {
    auto r = vert_equiv(parse_shape(text), k, opt);
    CAPTURE(text);
    CHECK(r.ok());
    CHECK(r.certified_dim == 3);
    CHECK_FALSE(r.notes.empty());
  }
  for (auto text : {"[1;0]", "[1;1]"}) {
    auto r = horiz_equiv(parse_shape(text), opt);
    CAPTURE(text);
    CHECK(r.ok());
    CHECK(r.certified_dim == 3);
  }
}

TEST_CASE("vert_equiv rejects a slot with a vertical direction") {
  CHECK_THROWS(vert_equiv(parse_shape("[1;1]"), 1));
}

TEST_CASE("claims hold on small shapes") {
  long checks = 0;
  std::vector<ThetaShape> shapes;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      shapes.emplace_back(2, std::vector<int>{a, b});
      for (int c = 0; c <= 1; ++c) shapes.emplace_back(3, std::vector<int>{a, b, c});
    }
  for (auto& s : shapes) {
    for (int k = 1; k <= s.n - 1; ++k) {
      auto sh = shuffles(s.qk(k), s.qk(k + 1));
      for (auto& a : sh) {
        auto c = claims_oracle(s, k, a);
        checks += static_cast<long>(c.size());
        CHECK_MESSAGE(all_ok(c), to_string(s) << " " << to_string(a));
        for (auto& b : sh)
          if (shuffle_leq(a, b) && a != b) {
            auto c2 = claims_prime_oracle(s, k, a, b);
            checks += static_cast<long>(c2.size());
            CHECK_MESSAGE(all_ok(c2), to_string(s) << " " << to_string(a) << " < " << to_string(b));
          }
      }
    }
  }
  CHECK(checks > 500);
}

TEST_CASE("claims reject bad arguments") {
  auto s = parse_shape("[2;1,1]");
  auto sh = shuffles(1, 1);
  CHECK_THROWS_AS(claims_oracle(s, 2, sh.front()), RangeError);
  CHECK_THROWS_AS(claims_prime_oracle(s, 1, sh.back(), sh.front()), RangeError);
}

TEST_CASE("mutations fail verification") {
  auto s = parse_shape("[2;1,1]");
  ReplayOptions opt;
  opt.mutation = Mutation::CorruptW;
  opt.mutation_step = 1;
  auto r = spine_anodyne(s, opt);
  CHECK_FALSE(r.ok());
  REQUIRE_FALSE(r.steps.empty());
  CHECK_FALSE(r.steps.back().checks.pullback);
  CHECK_FALSE(r.steps.back().checks.cover);

  opt.mutation = Mutation::DropStep;
  opt.mutation_step = 2;
  auto d = spine_anodyne(s, opt);
  CHECK_FALSE(d.ok());
  CHECK_FALSE(d.equals_target);

  ReplayOptions j;
  j.mutation = Mutation::CorruptW;
  j.mutation_step = 1;
  CHECK_FALSE(horiz_equiv(parse_shape("[1;0]"), j).ok());
  CHECK_FALSE(vert_equiv(parse_shape("[2;0,0]"), 1, j).ok());
}

TEST_CASE("replays are deterministic") {
  auto s = parse_shape("[2;1,2]");
  CHECK(spine_anodyne(s).to_json().dump() == spine_anodyne(s).to_json().dump());
  auto S = admissible_sets(s, false);
  REQUIRE_FALSE(S.empty());
  CHECK(upsilon_full(s, S.back()).to_json().dump() == upsilon_full(s, S.back()).to_json().dump());
  CHECK(horiz_equiv(parse_shape("[1;1]")).to_json().dump() == horiz_equiv(parse_shape("[1;1]")).to_json().dump());
}

TEST_CASE("report JSON carries the documented fields") {
  auto j = spine_anodyne(parse_shape("[2;1,1]")).to_json();
  for (auto key : {"script", "params", "bound", "steps", "final"}) CHECK(j.contains(key));
  REQUIRE_FALSE(j["steps"].empty());
  auto st = j["steps"][0];
  for (auto key : {"index", "cell", "shape", "horn", "checks"}) CHECK(st.contains(key));
  CHECK(st["horn"].contains("family"));
  for (auto key : {"pullback", "cover", "injective"}) CHECK(st["checks"][key].is_boolean());
  CHECK(j["final"]["equals_target"].is_boolean());
  CHECK(j["final"]["certified_dim"].is_number_integer());
}

TEST_CASE("composable pairs in a representable all have fillers") {
  auto R = representable(parse_shape("[3;0,0,0]"), 4);
  auto maps = horn_maps(R, parse_shape("[2;0,0]"), {hz(0), hz(2)});
  CHECK(maps.size() == 20);
  auto rep = lift_check(R, "inner-h", 4);
  CHECK(rep.ok());
  CHECK(rep.filled == rep.maps);
}

TEST_CASE("J fills every inner horn of dim <= 3") {
  auto J = from_simplicial(SimplicialSubset::interval(), 4);
  for (auto fam : {"inner", "inner-h", "inner-v", "alt-h"}) {
    auto rep = lift_check(J, fam, 4);
    CAPTURE(fam);
    CHECK(rep.ok());
    CHECK(rep.horns > 0);
  }
}

TEST_CASE("a bare horn has no filler") {
  auto s = parse_shape("[2;0,0]");
  auto R = representable(s, 3);
  Subobject H(R);
  H.add(to_cell(hyperface(s, hz(0))));
  H.add(to_cell(hyperface(s, hz(2))));
  auto rep = lift_check(subobject_set(H, "horn"), "inner-h", 3);
  CHECK_FALSE(rep.ok());
  REQUIRE_FALSE(rep.missing.empty());
  CHECK(rep.to_json()["missing"].size() == rep.missing.size());
}

TEST_CASE("the boundary of [1;1] has no inner horns to fill at D = 2") {
  auto s = parse_shape("[1;1]");
  auto B = subobject_set(Subobject::generated(representable(s, 2), boundary(s).domain.generators()), "bd");
  auto rep = lift_check(B, "inner-v", 2);
  CHECK(rep.ok());
  CHECK(rep.maps == 0);
}

TEST_CASE("lift_check rejects unknown families and short truncations") {
  auto R = representable(parse_shape("[1;0]"), 2);
  CHECK_THROWS_AS(lift_check(R, "outer", 2), ParseError);
  CHECK_THROWS_AS(lift_check(R, "inner", 3), RangeError);
}
