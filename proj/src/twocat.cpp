#include "theta2/twocat.hpp"

#include <functional>
#include <sstream>

#include "theta2/error.hpp"

namespace theta2 {

int Finite2Category::add_object(const std::string& name) {
  objects_.push_back(name);
  const int a = static_cast<int>(objects_.size()) - 1;
  id1_.push_back(-1);
  id1_[static_cast<std::size_t>(a)] = add_one_cell(a, a, "id_" + name);
  return a;
}

int Finite2Category::add_one_cell(int src, int dst, const std::string& name, std::vector<int> coords) {
  if (src < 0 || dst < 0 || src >= object_count() || dst >= object_count()) throw RangeError("unknown object");
  one_.push_back({src, dst, name, std::move(coords)});
  const int f = static_cast<int>(one_.size()) - 1;
  id2_.push_back(-1);
  two_.push_back({f, f, "id_" + name});
  id2_[static_cast<std::size_t>(f)] = static_cast<int>(two_.size()) - 1;
  return f;
}

int Finite2Category::add_two_cell(int src, int dst, const std::string& name) {
  const auto& a = one(src);
  const auto& b = one(dst);
  if (a.src != b.src || a.dst != b.dst) throw Error("2-cell " + name + " between non-parallel 1-cells");
  two_.push_back({src, dst, name});
  return static_cast<int>(two_.size()) - 1;
}

void Finite2Category::set_compose1(int f, int g, int h) { comp1_[{f, g}] = h; }
void Finite2Category::set_vertical(int a, int b, int c) { vcomp_[{a, b}] = c; }
void Finite2Category::set_horizontal(int a, int b, int c) { hcomp_[{a, b}] = c; }

void Finite2Category::complete_identities() {
  for (int f = 0; f < static_cast<int>(one_.size()); ++f) {
    comp1_[{id1(one(f).src), f}] = f;
    comp1_[{f, id1(one(f).dst)}] = f;
  }
  for (int a = 0; a < static_cast<int>(two_.size()); ++a) {
    vcomp_[{id2(two(a).src), a}] = a;
    vcomp_[{a, id2(two(a).dst)}] = a;
    const auto& f = one(two(a).src);
    hcomp_[{id2(id1(f.src)), a}] = a;
    hcomp_[{a, id2(id1(f.dst))}] = a;
  }
  for (int f = 0; f < static_cast<int>(one_.size()); ++f)
    for (int g = 0; g < static_cast<int>(one_.size()); ++g) {
      if (one(f).dst != one(g).src) continue;
      auto it = comp1_.find({f, g});
      if (it != comp1_.end()) hcomp_[{id2(f), id2(g)}] = id2(it->second);
    }
}

namespace {

int lookup(const std::map<std::pair<int, int>, int>& table, int a, int b, const char* what) {
  auto it = table.find({a, b});
  if (it == table.end()) throw Error(std::string("missing ") + what + " composite");
  return it->second;
}

}  // namespace

int Finite2Category::compose1(int f, int g) const {
  if (one(f).dst != one(g).src) throw ArityMismatch("1-cells are not composable");
  return lookup(comp1_, f, g, "1-cell");
}

int Finite2Category::vertical(int a, int b) const {
  if (two(a).dst != two(b).src) throw ArityMismatch("2-cells are not vertically composable");
  return lookup(vcomp_, a, b, "vertical");
}

int Finite2Category::horizontal(int a, int b) const {
  if (one(two(a).src).dst != one(two(b).src).src) throw ArityMismatch("2-cells are not horizontally composable");
  return lookup(hcomp_, a, b, "horizontal");
}

std::vector<int> Finite2Category::hom(int a, int b) const {
  std::vector<int> out;
  for (int f = 0; f < static_cast<int>(one_.size()); ++f)
    if (one(f).src == a && one(f).dst == b) out.push_back(f);
  return out;
}

std::vector<int> Finite2Category::two_cells_from(int f) const {
  std::vector<int> out;
  for (int a = 0; a < static_cast<int>(two_.size()); ++a)
    if (two(a).src == f) out.push_back(a);
  return out;
}

int Finite2Category::find_object(std::string_view name) const {
  for (int a = 0; a < object_count(); ++a)
    if (objects_[static_cast<std::size_t>(a)] == name) return a;
  throw ParseError("unknown object " + std::string(name));
}

int Finite2Category::find_one_cell(std::string_view name) const {
  for (int f = 0; f < static_cast<int>(one_.size()); ++f)
    if (one_[static_cast<std::size_t>(f)].name == name) return f;
  throw ParseError("unknown 1-cell " + std::string(name));
}

int Finite2Category::find_two_cell(std::string_view name) const {
  for (int a = 0; a < static_cast<int>(two_.size()); ++a)
    if (two_[static_cast<std::size_t>(a)].name == name) return a;
  throw ParseError("unknown 2-cell " + std::string(name));
}

void Finite2Category::validate() const {
  const int N1 = static_cast<int>(one_.size());
  const int N2 = static_cast<int>(two_.size());
  auto fail = [](const std::string& m) { throw Error("2-category law violated: " + m); };
  for (int f = 0; f < N1; ++f)
    for (int g = 0; g < N1; ++g) {
      if (one(f).dst != one(g).src) continue;
      const int h = compose1(f, g);
      if (one(h).src != one(f).src || one(h).dst != one(g).dst) fail("endpoints of " + one(h).name);
      for (int k = 0; k < N1; ++k)
        if (one(g).dst == one(k).src && compose1(h, k) != compose1(f, compose1(g, k))) fail("1-cell associativity");
    }
  for (int a = 0; a < N2; ++a) {
    if (vertical(id2(two(a).src), a) != a || vertical(a, id2(two(a).dst)) != a) fail("vertical unit");
    for (int b = 0; b < N2; ++b) {
      if (two(a).dst == two(b).src) {
        const int c = vertical(a, b);
        if (two(c).src != two(a).src || two(c).dst != two(b).dst) fail("vertical endpoints");
        for (int d = 0; d < N2; ++d)
          if (two(b).dst == two(d).src && vertical(c, d) != vertical(a, vertical(b, d))) fail("vertical associativity");
      }
      if (one(two(a).src).dst != one(two(b).src).src) continue;
      const int c = horizontal(a, b);
      if (two(c).src != compose1(two(a).src, two(b).src) || two(c).dst != compose1(two(a).dst, two(b).dst))
        fail("horizontal endpoints");
      for (int d = 0; d < N2; ++d)
        if (one(two(b).src).dst == one(two(d).src).src && horizontal(c, d) != horizontal(a, horizontal(b, d)))
          fail("horizontal associativity");
      // interchange against every vertically composable pair
      for (int a2 : two_cells_from(two(a).dst))
        for (int b2 : two_cells_from(two(b).dst))
          if (vertical(c, horizontal(a2, b2)) != horizontal(vertical(a, a2), vertical(b, b2))) fail("interchange");
    }
  }
  for (int f = 0; f < N1; ++f)
    for (int g = 0; g < N1; ++g)
      if (one(f).dst == one(g).src && horizontal(id2(f), id2(g)) != id2(compose1(f, g)))
        fail("identities of composites");
}

// ---- builders ----

Finite2CategoryPtr free_cell_2cat(const ThetaShape& s) {
  auto C = std::make_shared<Finite2Category>("F" + to_string(s));
  for (int k = 0; k <= s.n; ++k) C->add_object(std::to_string(k));
  std::map<std::tuple<int, int, std::vector<int>>, int> cell1;
  // all tuples of prod_{j=k+1..l} [q_j]
  auto tuples = [&](int k, int l) {
    std::vector<std::vector<int>> out{{}};
    for (int j = k + 1; j <= l; ++j) {
      std::vector<std::vector<int>> next;
      for (auto& t : out)
        for (int v = 0; v <= s.qk(j); ++v) {
          auto u = t;
          u.push_back(v);
          next.push_back(u);
        }
      out = std::move(next);
    }
    return out;
  };
  for (int k = 0; k <= s.n; ++k) {
    cell1[{k, k, {}}] = C->id1(k);
    for (int l = k + 1; l <= s.n; ++l)
      for (auto& t : tuples(k, l))
        cell1[{k, l, t}] = C->add_one_cell(k, l, std::to_string(k) + ">" + std::to_string(l) + values_to_string(t), t);
  }
  auto leq = [](const std::vector<int>& x, const std::vector<int>& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] > y[i]) return false;
    return true;
  };
  std::map<std::tuple<int, int, std::vector<int>, std::vector<int>>, int> cell2;
  for (int k = 0; k <= s.n; ++k)
    for (int l = k; l <= s.n; ++l)
      for (auto& x : tuples(k, l))
        for (auto& y : tuples(k, l)) {
          if (!leq(x, y)) continue;
          const int fx = cell1.at({k, l, x});
          cell2[{k, l, x, y}] =
              x == y ? C->id2(fx) : C->add_two_cell(fx, cell1.at({k, l, y}), C->one(fx).name + "<=" + values_to_string(y));
        }
  auto cat = [](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  for (auto& [key1, f] : cell1)
    for (auto& [key2, g] : cell1) {
      auto& [k, l, x] = key1;
      auto& [l2, r, y] = key2;
      if (l != l2) continue;
      C->set_compose1(f, g, cell1.at({k, r, cat(x, y)}));
    }
  for (auto& [ka, a] : cell2)
    for (auto& [kb, b] : cell2) {
      auto& [k, l, x, y] = ka;
      auto& [k2, l2, x2, y2] = kb;
      if (k == k2 && l == l2 && y == x2) C->set_vertical(a, b, cell2.at({k, l, x, y2}));
      if (l == k2) C->set_horizontal(a, b, cell2.at({k, l2, cat(x, x2), cat(y, y2)}));
    }
  return C;
}

Finite2CategoryPtr chaotic_2cat(int objects) {
  if (objects < 1) throw RangeError("chaotic category needs an object");
  auto C = std::make_shared<Finite2Category>("E" + std::to_string(objects));
  for (int a = 0; a < objects; ++a) C->add_object(std::to_string(a));
  std::map<std::pair<int, int>, int> arrow;
  for (int a = 0; a < objects; ++a)
    for (int b = 0; b < objects; ++b)
      arrow[{a, b}] = a == b ? C->id1(a) : C->add_one_cell(a, b, std::to_string(a) + ">" + std::to_string(b));
  for (auto& [ab, f] : arrow)
    for (auto& [bc, g] : arrow)
      if (ab.second == bc.first) C->set_compose1(f, g, arrow.at({ab.first, bc.second}));
  C->complete_identities();
  return C;
}

Finite2CategoryPtr suspension_of_chaotic(int objects) {
  if (objects < 1) throw RangeError("chaotic category needs an object");
  auto C = std::make_shared<Finite2Category>("S" + std::to_string(objects));
  C->add_object("0");
  C->add_object("1");
  std::vector<int> x;
  for (int i = 0; i < objects; ++i) x.push_back(C->add_one_cell(0, 1, "x" + std::to_string(i), {i}));
  std::map<std::pair<int, int>, int> iso;
  for (int i = 0; i < objects; ++i)
    for (int j = 0; j < objects; ++j)
      iso[{i, j}] = i == j ? C->id2(x[static_cast<std::size_t>(i)])
                           : C->add_two_cell(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)],
                                             "x" + std::to_string(i) + "=>x" + std::to_string(j));
  for (auto& [ij, a] : iso)
    for (auto& [jk, b] : iso)
      if (ij.second == jk.first) C->set_vertical(a, b, iso.at({ij.first, jk.second}));
  C->complete_identities();
  return C;
}

// ---- text format ----

Finite2CategoryPtr parse_2cat(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::shared_ptr<Finite2Category> C;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto err = [&](const std::string& m) { return ParseError("line " + std::to_string(lineno) + ": " + m); };
    try {
      if (tok[0] == "2cat") {
        if (C || tok.size() != 2) throw err("expected a single '2cat NAME' header");
        C = std::make_shared<Finite2Category>(tok[1]);
        continue;
      }
      if (!C) throw err("missing '2cat NAME' header");
      if (tok[0] == "object" && tok.size() == 2) {
        C->add_object(tok[1]);
      } else if (tok[0] == "1cell" && tok.size() == 6 && tok[2] == ":" && tok[4] == "->") {
        C->add_one_cell(C->find_object(tok[3]), C->find_object(tok[5]), tok[1]);
      } else if (tok[0] == "2cell" && tok.size() == 6 && tok[2] == ":" && tok[4] == "=>") {
        C->add_two_cell(C->find_one_cell(tok[3]), C->find_one_cell(tok[5]), tok[1]);
      } else if (tok[0] == "comp1" && tok.size() == 5 && tok[3] == "=") {
        C->set_compose1(C->find_one_cell(tok[1]), C->find_one_cell(tok[2]), C->find_one_cell(tok[4]));
      } else if ((tok[0] == "vcomp" || tok[0] == "hcomp") && tok.size() == 5 && tok[3] == "=") {
        const int a = C->find_two_cell(tok[1]), b = C->find_two_cell(tok[2]), c = C->find_two_cell(tok[4]);
        if (tok[0] == "vcomp")
          C->set_vertical(a, b, c);
        else
          C->set_horizontal(a, b, c);
      } else {
        throw err("cannot parse '" + line + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw err(e.what());
    }
  }
  if (!C) throw ParseError("empty 2-category description");
  C->complete_identities();
  try {
    C->validate();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return C;
}

std::string to_text(const Finite2Category& C) {
  std::ostringstream out;
  out << "2cat " << C.name() << "\n";
  for (int a = 0; a < C.object_count(); ++a) out << "object " << C.object_name(a) << "\n";
  auto is_id1 = [&](int f) { return C.id1(C.one(f).src) == f; };
  auto is_id2 = [&](int a) { return C.id2(C.two(a).src) == a; };
  for (int f = 0; f < static_cast<int>(C.one_cells().size()); ++f)
    if (!is_id1(f))
      out << "1cell " << C.one(f).name << " : " << C.object_name(C.one(f).src) << " -> "
          << C.object_name(C.one(f).dst) << "\n";
  for (int a = 0; a < static_cast<int>(C.two_cells().size()); ++a)
    if (!is_id2(a)) out << "2cell " << C.two(a).name << " : " << C.one(C.two(a).src).name << " => " << C.one(C.two(a).dst).name << "\n";
  const int N1 = static_cast<int>(C.one_cells().size());
  const int N2 = static_cast<int>(C.two_cells().size());
  for (int f = 0; f < N1; ++f)
    for (int g = 0; g < N1; ++g)
      if (!is_id1(f) && !is_id1(g) && C.one(f).dst == C.one(g).src)
        out << "comp1 " << C.one(f).name << " " << C.one(g).name << " = " << C.one(C.compose1(f, g)).name << "\n";
  for (int a = 0; a < N2; ++a)
    for (int b = 0; b < N2; ++b) {
      if (is_id2(a) || is_id2(b)) continue;
      if (C.two(a).dst == C.two(b).src)
        out << "vcomp " << C.two(a).name << " " << C.two(b).name << " = " << C.two(C.vertical(a, b)).name << "\n";
    }
  // whiskerings and horizontal composites not implied by identities
  for (int a = 0; a < N2; ++a)
    for (int b = 0; b < N2; ++b) {
      if (C.one(C.two(a).src).dst != C.one(C.two(b).src).src) continue;
      const bool unit_a = is_id2(a) && is_id1(C.two(a).src);
      const bool unit_b = is_id2(b) && is_id1(C.two(b).src);
      if (unit_a || unit_b || (is_id2(a) && is_id2(b))) continue;
      out << "hcomp " << C.two(a).name << " " << C.two(b).name << " = " << C.two(C.horizontal(a, b)).name << "\n";
    }
  return out.str();
}

// ---- nerves ----

namespace {

struct Functor2 {
  std::vector<int> objects;
  std::vector<int> first;                // 1-cell at vertex 0 of each interval
  std::vector<std::vector<int>> cells2;  // 2-cells of each interval
};

Functor2 parse_functor(const Cell& x) {
  Functor2 F;
  const int m = x.shape.n;
  std::size_t pos = 0;
  for (int i = 0; i <= m; ++i) F.objects.push_back(x.data.at(pos++));
  for (int i = 1; i <= m; ++i) {
    F.first.push_back(x.data.at(pos++));
    std::vector<int> c;
    for (int v = 0; v < x.shape.qk(i); ++v) c.push_back(x.data.at(pos++));
    F.cells2.push_back(std::move(c));
  }
  if (pos != x.data.size()) throw InvalidOperator("nerve cell payload has the wrong length");
  return F;
}

Cell encode_functor(const ThetaShape& s, const Functor2& F) {
  Cell c{s, F.objects};
  for (std::size_t i = 0; i < F.first.size(); ++i) {
    c.data.push_back(F.first[i]);
    c.data.insert(c.data.end(), F.cells2[i].begin(), F.cells2[i].end());
  }
  return c;
}

}  // namespace

Nerve::Nerve(Finite2CategoryPtr C, int bound) : C_(std::move(C)), bound_(bound) {}

std::string Nerve::name() const { return "N(" + C_->name() + ")"; }

std::vector<Cell> Nerve::cells(const ThetaShape& s) const {
  std::vector<Cell> out;
  const auto& C = *C_;
  Functor2 F;
  F.first.resize(static_cast<std::size_t>(s.n));
  F.cells2.resize(static_cast<std::size_t>(s.n));
  // choose objects, then the vertical chain of each interval
  std::function<void(int)> intervals = [&](int i) {
    if (i > s.n) {
      out.push_back(encode_functor(s, F));
      return;
    }
    const auto idx = static_cast<std::size_t>(i - 1);
    for (int f : C.hom(F.objects[idx], F.objects[idx + 1])) {
      F.first[idx] = f;
      auto& chain = F.cells2[idx];
      chain.clear();
      std::function<void(int)> extend = [&](int cur) {
        if (static_cast<int>(chain.size()) == s.qk(i)) {
          intervals(i + 1);
          return;
        }
        for (int a : C.two_cells_from(cur)) {
          chain.push_back(a);
          extend(C.two(a).dst);
          chain.pop_back();
        }
      };
      extend(f);
    }
  };
  std::function<void(int)> objects = [&](int i) {
    if (i > s.n) {
      intervals(1);
      return;
    }
    for (int a = 0; a < C.object_count(); ++a) {
      if (i > 0 && C.hom(F.objects.back(), a).empty()) continue;
      F.objects.push_back(a);
      objects(i + 1);
      F.objects.pop_back();
    }
  };
  objects(0);
  return out;
}

Cell Nerve::act(const Cell& x, const CellularOperator& f) const {
  if (!(f.dst() == x.shape)) throw ArityMismatch("operator target differs from cell shape");
  const auto& C = *C_;
  const auto F = parse_functor(x);
  // 1-cell at height v of interval l, and the 2-cell from height v to w
  auto one_at = [&](int l, int v) {
    const auto idx = static_cast<std::size_t>(l - 1);
    return v == 0 ? F.first[idx] : C.two(F.cells2[idx][static_cast<std::size_t>(v - 1)]).dst;
  };
  auto two_between = [&](int l, int v, int w) {
    int a = C.id2(one_at(l, v));
    for (int u = v; u < w; ++u) a = C.vertical(a, F.cells2[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(u)]);
    return a;
  };
  const auto& beta = f.horizontal();
  const ThetaShape& src = f.src();
  Functor2 G;
  for (int v : beta.values()) G.objects.push_back(F.objects[static_cast<std::size_t>(v)]);
  for (int ip = 1; ip <= src.n; ++ip) {
    const int lo = beta(ip - 1), hi = beta(ip);
    std::vector<int> chain;
    if (lo == hi) {
      const int id = C.id1(F.objects[static_cast<std::size_t>(lo)]);
      G.first.push_back(id);
      chain.assign(static_cast<std::size_t>(src.qk(ip)), C.id2(id));
    } else {
      int first = -1;
      for (int l = lo + 1; l <= hi; ++l) {
        const int g = one_at(l, f.component(l)(0));
        first = first < 0 ? g : C.compose1(first, g);
      }
      G.first.push_back(first);
      for (int v = 1; v <= src.qk(ip); ++v) {
        int a = -1;
        for (int l = lo + 1; l <= hi; ++l) {
          const auto& bl = f.component(l);
          const int b = two_between(l, bl(v - 1), bl(v));
          a = a < 0 ? b : C.horizontal(a, b);
        }
        chain.push_back(a);
      }
    }
    G.cells2.push_back(std::move(chain));
  }
  return encode_functor(src, G);
}

std::string Nerve::format(const Cell& x) const {
  const auto F = parse_functor(x);
  const auto& C = *C_;
  std::string out = to_string(x.shape) + "(";
  for (std::size_t i = 0; i < F.objects.size(); ++i) out += (i ? "," : "") + C.object_name(F.objects[i]);
  out += ")";
  for (std::size_t i = 0; i < F.first.size(); ++i) {
    out += " " + C.one(F.first[i]).name;
    for (int a : F.cells2[i]) out += " " + C.two(a).name;
    if (i + 1 < F.first.size()) out += " |";
  }
  return out;
}

std::shared_ptr<const Nerve> nerve(Finite2CategoryPtr C, int bound) { return std::make_shared<Nerve>(std::move(C), bound); }

CellularOperator free_nerve_operator(const ThetaShape& s, const Nerve& N, const Cell& x) {
  const auto& C = N.category();
  const auto F = parse_functor(x);
  std::vector<int> alpha;
  for (int a : F.objects) alpha.push_back(std::stoi(C.object_name(a)));
  SimplicialOperator h(s.n, alpha);
  std::vector<SimplicialOperator> comps;
  for (int i = 1; i <= x.shape.n; ++i) {
    const auto idx = static_cast<std::size_t>(i - 1);
    std::vector<int> heights{F.first[idx]};
    for (int a : F.cells2[idx]) heights.push_back(C.two(a).dst);
    for (int k = alpha[idx] + 1; k <= alpha[idx + 1]; ++k) {
      std::vector<int> vals;
      for (int g : heights) vals.push_back(C.one(g).coords[static_cast<std::size_t>(k - alpha[idx] - 1)]);
      comps.emplace_back(s.qk(k), vals);
    }
  }
  return {x.shape, s, h, comps};
}

// ---- 2-functors ----

void validate(const Finite2Functor& F) {
  const auto& A = *F.source;
  const auto& B = *F.target;
  auto fail = [](const std::string& m) { throw Error("not a 2-functor: " + m); };
  if (static_cast<int>(F.objects.size()) != A.object_count() || F.one.size() != A.one_cells().size() ||
      F.two.size() != A.two_cells().size())
    fail("tables have the wrong size");
  for (int f = 0; f < static_cast<int>(A.one_cells().size()); ++f) {
    const int g = F.one[static_cast<std::size_t>(f)];
    if (B.one(g).src != F.objects[static_cast<std::size_t>(A.one(f).src)] ||
        B.one(g).dst != F.objects[static_cast<std::size_t>(A.one(f).dst)])
      fail("1-cell endpoints");
  }
  for (int a = 0; a < A.object_count(); ++a)
    if (F.one[static_cast<std::size_t>(A.id1(a))] != B.id1(F.objects[static_cast<std::size_t>(a)])) fail("identity 1-cells");
  for (int a = 0; a < static_cast<int>(A.two_cells().size()); ++a) {
    const int b = F.two[static_cast<std::size_t>(a)];
    if (B.two(b).src != F.one[static_cast<std::size_t>(A.two(a).src)] ||
        B.two(b).dst != F.one[static_cast<std::size_t>(A.two(a).dst)])
      fail("2-cell endpoints");
  }
  const int N1 = static_cast<int>(A.one_cells().size());
  const int N2 = static_cast<int>(A.two_cells().size());
  auto img1 = [&](int f) { return F.one[static_cast<std::size_t>(f)]; };
  auto img2 = [&](int a) { return F.two[static_cast<std::size_t>(a)]; };
  for (int f = 0; f < N1; ++f) {
    if (img2(A.id2(f)) != B.id2(img1(f))) fail("identity 2-cells");
    for (int g = 0; g < N1; ++g)
      if (A.one(f).dst == A.one(g).src && img1(A.compose1(f, g)) != B.compose1(img1(f), img1(g))) fail("composition");
  }
  for (int a = 0; a < N2; ++a)
    for (int b = 0; b < N2; ++b) {
      if (A.two(a).dst == A.two(b).src && img2(A.vertical(a, b)) != B.vertical(img2(a), img2(b)))
        fail("vertical composition");
      if (A.one(A.two(a).src).dst == A.one(A.two(b).src).src &&
          img2(A.horizontal(a, b)) != B.horizontal(img2(a), img2(b)))
        fail("horizontal composition");
    }
}

Finite2Functor compose(const Finite2Functor& F, const Finite2Functor& G) {
  if (F.target != G.source) throw ArityMismatch("2-functors are not composable");
  Finite2Functor H{F.source, G.target, {}, {}, {}};
  for (int a : F.objects) H.objects.push_back(G.objects[static_cast<std::size_t>(a)]);
  for (int f : F.one) H.one.push_back(G.one[static_cast<std::size_t>(f)]);
  for (int a : F.two) H.two.push_back(G.two[static_cast<std::size_t>(a)]);
  return H;
}

CellularMap nerve_map(const Finite2Functor& F, const std::shared_ptr<const Nerve>& source,
                      const std::shared_ptr<const Nerve>& target) {
  if (&source->category() != F.source.get() || &target->category() != F.target.get())
    throw AmbientMismatch("nerves do not match the 2-functor");
  auto apply = [F](const Cell& x) {
    auto G = parse_functor(x);
    for (auto& a : G.objects) a = F.objects[static_cast<std::size_t>(a)];
    for (auto& f : G.first) f = F.one[static_cast<std::size_t>(f)];
    for (auto& c : G.cells2)
      for (auto& a : c) a = F.two[static_cast<std::size_t>(a)];
    return encode_functor(x.shape, G);
  };
  return {source, apply, "N(" + F.source->name() + "->" + F.target->name() + ")"};
}

}  // namespace theta2
