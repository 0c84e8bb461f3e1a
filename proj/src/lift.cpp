#include <algorithm>
#include <map>

#include "anodyne_internal.hpp"
#include "theta2/anodyne.hpp"
#include "theta2/error.hpp"

namespace theta2 {

using namespace detail;

namespace {

class SubobjectSet final : public CellularSet {
 public:
  SubobjectSet(Subobject sub, std::string name) : sub_(std::move(sub)), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  int bound() const override { return sub_.ambient().bound(); }
  std::vector<Cell> cells(const ThetaShape& s) const override {
    std::vector<Cell> out;
    for (auto& c : sub_.ambient().cells(s))
      if (sub_.contains(c)) out.push_back(c);
    return out;
  }
  Cell act(const Cell& x, const CellularOperator& f) const override { return sub_.ambient().act(x, f); }
  Decomposition decompose(const Cell& x) const override { return sub_.ambient().decompose(x); }
  std::string format(const Cell& x) const override { return sub_.ambient().format(x); }
  bool has_cell(const Cell& x) const override { return sub_.ambient().has_cell(x) && sub_.contains(x); }

 private:
  Subobject sub_;
  std::string name_;
};

// x_i . a == x_j . b must hold for every compatible family.
struct Overlap {
  std::size_t i, j;
  CellularOperator a, b;
};

std::vector<Overlap> overlaps(const ThetaShape& s, const std::vector<CellularOperator>& gens) {
  std::vector<Overlap> out;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      std::vector<CellularOperator> shared;
      for (auto& f : faces_of(s))
        if (factor_through(f, gens[i]) && factor_through(f, gens[j])) shared.push_back(f);
      for (auto& f : shared) {
        bool maximal = std::none_of(shared.begin(), shared.end(), [&](const CellularOperator& g) {
          return g.src().dim() > f.src().dim() && factor_through(f, g).has_value();
        });
        if (maximal) out.push_back({i, j, *factor_through(f, gens[i]), *factor_through(f, gens[j])});
      }
    }
  }
  return out;
}

struct Horn {
  ThetaShape shape;
  std::string name;
  std::vector<HyperfaceLabel> generators;
};

std::vector<HyperfaceLabel> all_except(const ThetaShape& s, const std::function<bool(const HyperfaceLabel&)>& drop) {
  std::vector<HyperfaceLabel> out;
  for (auto& l : hyperface_labels(s))
    if (!drop(l)) out.push_back(l);
  return out;
}

std::vector<Horn> horns(const std::string& family, int max_dim) {
  const bool hz = family == "inner" || family == "inner-h";
  const bool vt = family == "inner" || family == "inner-v";
  const bool alt = family == "alt-h";
  if (!hz && !vt && !alt) throw ParseError("unknown horn family '" + family + "'");
  std::vector<Horn> out;
  for (auto& s : all_shapes(max_dim)) {
    for (int k = 1; k <= s.n - 1; ++k) {
      if (hz)
        out.push_back({s, "horn_h" + to_string(s) + "^" + std::to_string(k),
                       all_except(s, [&](const HyperfaceLabel& l) { return l.is_horizontal() && l.k == k; })});
      if (alt)
        for (auto& sh : shuffles(s.qk(k), s.qk(k + 1))) {
          auto d = h(k, sh);
          out.push_back({s, "horn_h_alt" + to_string(s) + "^" + to_string(d),
                         all_except(s, [&](const HyperfaceLabel& l) { return l == d; })});
        }
    }
    if (vt)
      for (int k = 1; k <= s.n; ++k)
        for (int i = 1; i <= s.qk(k) - 1; ++i) {
          auto d = v(k, i);
          out.push_back({s, "horn_v" + to_string(s) + "^" + std::to_string(k) + ";" + std::to_string(i),
                         all_except(s, [&](const HyperfaceLabel& l) { return l == d; })});
        }
  }
  return out;
}

}  // namespace

CellularSetPtr subobject_set(const Subobject& sub, std::string name) {
  return std::make_shared<SubobjectSet>(sub, std::move(name));
}

std::vector<std::vector<Cell>> horn_maps(const CellularSetPtr& X, const ThetaShape& s,
                                         const std::vector<HyperfaceLabel>& generators) {
  std::vector<CellularOperator> gens;
  std::vector<std::vector<Cell>> choices;
  for (auto& l : generators) {
    gens.push_back(hyperface(s, l));
    choices.push_back(X->cells(gens.back().src()));
  }
  const auto over = overlaps(s, gens);
  std::vector<std::vector<Overlap>> by_last(gens.size());
  for (auto& o : over) by_last[o.j].push_back(o);

  std::vector<std::vector<Cell>> out;
  std::vector<Cell> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == gens.size()) {
      out.push_back(pick);
      return;
    }
    for (auto& x : choices[j]) {
      bool ok = true;
      for (auto& o : by_last[j])
        if (X->act(pick[o.i], o.a) != X->act(x, o.b)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      pick.push_back(x);
      rec(j + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

LiftReport lift_check(const CellularSetPtr& X, const std::string& family, int D) {
  if (D < 1) throw RangeError("lift needs D >= 1");
  if (X->bound() < D) throw RangeError(X->name() + " is only known up to dimension " + std::to_string(X->bound()));
  LiftReport rep;
  rep.family = family;
  rep.bound = D;
  for (auto& horn : horns(family, D - 1)) {
    ++rep.horns;
    std::vector<CellularOperator> gens;
    for (auto& l : horn.generators) gens.push_back(hyperface(horn.shape, l));
    const auto fillers = X->cells(horn.shape);
    for (auto& m : horn_maps(X, horn.shape, horn.generators)) {
      ++rep.maps;
      bool filled = std::any_of(fillers.begin(), fillers.end(), [&](const Cell& y) {
        for (std::size_t t = 0; t < gens.size(); ++t)
          if (X->act(y, gens[t]) != m[t]) return false;
        return true;
      });
      if (filled) {
        ++rep.filled;
        continue;
      }
      LiftFailure f{horn.name, {}};
      for (std::size_t t = 0; t < m.size(); ++t) f.images.push_back(to_string(horn.generators[t]) + " -> " + X->format(m[t]));
      rep.missing.push_back(std::move(f));
    }
  }
  return rep;
}

nlohmann::json LiftReport::to_json() const {
  nlohmann::json j;
  j["family"] = family;
  j["bound"] = bound;
  j["horns"] = horns;
  j["maps"] = maps;
  j["filled"] = filled;
  j["status"] = ok() ? "all horns fill" : "missing fillers";
  j["missing"] = nlohmann::json::array();
  for (auto& m : missing) j["missing"].push_back({{"horn", m.horn}, {"images", m.images}});
  return j;
}

}  // namespace theta2
