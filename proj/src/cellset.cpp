#include "theta2/cellset.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>

#include "theta2/error.hpp"

namespace theta2 {

namespace {

const std::vector<CellularOperator>& cached_degeneracies(const ThetaShape& s) {
  static std::mutex mu;
  static std::map<ThetaShape, std::vector<CellularOperator>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(s);
  if (it == cache.end()) it = cache.emplace(s, degeneracies_from(s)).first;
  return it->second;
}

const std::vector<Hyperface>& cached_hyperfaces(const ThetaShape& s) {
  static std::mutex mu;
  static std::map<ThetaShape, std::vector<Hyperface>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(s);
  if (it == cache.end()) it = cache.emplace(s, hyperfaces(s)).first;
  return it->second;
}

}  // namespace

// ---- generic ----

std::vector<Cell> CellularSet::nondegenerate(const ThetaShape& s) const {
  std::vector<Cell> out;
  for (auto& c : cells(s))
    if (is_nondegenerate(*this, c)) out.push_back(c);
  return out;
}

Decomposition CellularSet::decompose(const Cell& x) const {
  for (const auto& sigma : cached_degeneracies(x.shape)) {
    Cell y = act(x, section(sigma));
    if (act(y, sigma) == x) return {y, sigma};
  }
  throw Error("no Eilenberg-Zilber decomposition found in " + name());
}

std::string CellularSet::format(const Cell& x) const {
  return to_string(x.shape) + values_to_string(x.data);
}

bool CellularSet::has_cell(const Cell& x) const {
  auto cs = cells(x.shape);
  return std::find(cs.begin(), cs.end(), x) != cs.end();
}

bool is_nondegenerate(const CellularSet& X, const Cell& x) {
  return X.decompose(x).degeneracy.dst() == x.shape;
}

std::vector<Cell> nondegenerate_cells(const CellularSet& X, int max_dim) {
  std::vector<Cell> out;
  for (auto& s : all_shapes(max_dim)) {
    auto cs = X.nondegenerate(s);
    out.insert(out.end(), cs.begin(), cs.end());
  }
  return out;
}

// ---- operators as cells ----

Cell to_cell(const CellularOperator& f) {
  Cell c{f.src(), f.horizontal().values()};
  for (const auto& comp : f.components()) c.data.insert(c.data.end(), comp.values().begin(), comp.values().end());
  return c;
}

CellularOperator to_operator(const Cell& c, const ThetaShape& dst) {
  const int m = c.shape.n;
  if (static_cast<int>(c.data.size()) < m + 1) throw InvalidOperator("cell payload too short");
  SimplicialOperator h(dst.n, std::vector<int>(c.data.begin(), c.data.begin() + m + 1));
  std::size_t pos = static_cast<std::size_t>(m + 1);
  std::vector<SimplicialOperator> comps;
  for (int k = h(0) + 1; k <= h(m); ++k) {
    int l = 1;
    while (!(h(l - 1) < k && k <= h(l))) ++l;
    const std::size_t len = static_cast<std::size_t>(c.shape.qk(l) + 1);
    if (pos + len > c.data.size()) throw InvalidOperator("cell payload too short");
    comps.emplace_back(dst.qk(k), std::vector<int>(c.data.begin() + static_cast<long>(pos),
                                                   c.data.begin() + static_cast<long>(pos + len)));
    pos += len;
  }
  if (pos != c.data.size()) throw InvalidOperator("cell payload too long");
  return {c.shape, dst, h, comps};
}

// ---- representables ----

Representable::Representable(ThetaShape shape, int bound)
    : shape_(std::move(shape)), bound_(std::max(bound, shape_.dim())), faces_(faces_into(shape_)) {}

std::string Representable::name() const { return "Theta" + to_string(shape_); }

std::vector<Cell> Representable::cells(const ThetaShape& s) const {
  std::vector<Cell> out;
  for (auto& f : all_operators(s, shape_)) out.push_back(to_cell(f));
  return out;
}

Cell Representable::act(const Cell& x, const CellularOperator& f) const {
  return to_cell(compose(to_operator(x, shape_), f));
}

std::vector<Cell> Representable::nondegenerate(const ThetaShape& s) const {
  std::vector<Cell> out;
  for (auto& f : faces_)
    if (f.src() == s) out.push_back(to_cell(f));
  return out;
}

Decomposition Representable::decompose(const Cell& x) const {
  auto r = reedy_factor(to_operator(x, shape_));
  return {to_cell(r.face), r.degeneracy};
}

std::string Representable::format(const Cell& x) const { return to_string(to_operator(x, shape_)); }

bool Representable::has_cell(const Cell& x) const {
  try {
    to_operator(x, shape_);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Cell Representable::cell_of(const CellularOperator& f) const {
  if (!(f.dst() == shape_)) throw AmbientMismatch("operator does not land in " + to_string(shape_));
  return to_cell(f);
}

std::shared_ptr<const Representable> representable(const ThetaShape& shape, int bound) {
  static std::mutex mu;
  static std::map<std::pair<ThetaShape, int>, std::shared_ptr<const Representable>> cache;
  const int b = std::max(bound, shape.dim());
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(shape, b);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_shared<Representable>(shape, b)).first;
  return it->second;
}

// ---- simplicial sets ----

SimplicialEmbedding::SimplicialEmbedding(SimplicialSubset s, int bound) : s_(std::move(s)), bound_(bound) {}

std::string SimplicialEmbedding::name() const { return s_.name(); }

std::vector<Cell> SimplicialEmbedding::cells(const ThetaShape& s) const {
  std::vector<Cell> out;
  for (auto& x : s_.simplices(s.n)) out.push_back({s, x});
  return out;
}

Cell SimplicialEmbedding::act(const Cell& x, const CellularOperator& f) const {
  if (!(f.dst() == x.shape)) throw ArityMismatch("operator target differs from cell shape");
  Cell y{f.src(), {}};
  for (int v : f.horizontal().values()) y.data.push_back(x.data[static_cast<std::size_t>(v)]);
  return y;
}

Decomposition SimplicialEmbedding::decompose(const Cell& x) const {
  std::vector<int> y;
  std::vector<int> s;
  for (int v : x.data) {
    if (y.empty() || y.back() != v) y.push_back(v);
    s.push_back(static_cast<int>(y.size()) - 1);
  }
  const int mp = static_cast<int>(y.size()) - 1;
  ThetaShape target(mp, std::vector<int>(static_cast<std::size_t>(mp), 0));
  SimplicialOperator sh(mp, s);
  std::vector<SimplicialOperator> comps;
  for (int ip = 1; ip <= mp; ++ip) {
    int l = 1;
    while (!(sh(l - 1) < ip && ip <= sh(l))) ++l;
    comps.push_back(SimplicialOperator::constant(x.shape.qk(l), 0, 0));
  }
  return {Cell{target, y}, CellularOperator(x.shape, target, sh, comps)};
}

std::vector<Cell> SimplicialEmbedding::nondegenerate(const ThetaShape& s) const {
  std::vector<Cell> out;
  for (int v : s.q)
    if (v != 0) return out;
  for (auto& x : s_.nondegenerate(s.n)) out.push_back({s, x});
  return out;
}

CellularSetPtr from_simplicial(const SimplicialSubset& s, int bound) {
  return std::make_shared<SimplicialEmbedding>(s, bound);
}

// ---- products ----

ProductSet::ProductSet(CellularSetPtr x, CellularSetPtr y, int bound)
    : x_(std::move(x)), y_(std::move(y)), bound_(bound) {}

std::string ProductSet::name() const { return "(" + x_->name() + " x " + y_->name() + ")"; }

Cell ProductSet::pair(const Cell& x, const Cell& y) const {
  Cell c{x.shape, {static_cast<int>(x.data.size())}};
  c.data.insert(c.data.end(), x.data.begin(), x.data.end());
  c.data.insert(c.data.end(), y.data.begin(), y.data.end());
  return c;
}

std::pair<Cell, Cell> ProductSet::split(const Cell& c) const {
  const auto len = static_cast<std::size_t>(c.data.at(0));
  Cell x{c.shape, std::vector<int>(c.data.begin() + 1, c.data.begin() + 1 + static_cast<long>(len))};
  Cell y{c.shape, std::vector<int>(c.data.begin() + 1 + static_cast<long>(len), c.data.end())};
  return {x, y};
}

std::vector<Cell> ProductSet::cells(const ThetaShape& s) const {
  std::vector<Cell> out;
  auto xs = x_->cells(s);
  auto ys = y_->cells(s);
  for (auto& a : xs)
    for (auto& b : ys) out.push_back(pair(a, b));
  return out;
}

Cell ProductSet::act(const Cell& c, const CellularOperator& f) const {
  auto [a, b] = split(c);
  return pair(x_->act(a, f), y_->act(b, f));
}

std::string ProductSet::format(const Cell& c) const {
  auto [a, b] = split(c);
  return "(" + x_->format(a) + ", " + y_->format(b) + ")";
}

CellularSetPtr product(CellularSetPtr x, CellularSetPtr y, int bound) {
  return std::make_shared<ProductSet>(std::move(x), std::move(y), bound);
}

// ---- subobjects ----

Subobject::Subobject(CellularSetPtr ambient) : ambient_(std::move(ambient)) {}

Subobject Subobject::generated(CellularSetPtr ambient, const std::vector<Cell>& generators) {
  Subobject s(std::move(ambient));
  for (auto& g : generators) s.add(g);
  return s;
}

Subobject Subobject::from_predicate(CellularSetPtr ambient, const std::function<bool(const Cell&)>& pred,
                                    int max_dim) {
  Subobject s(ambient);
  for (auto& c : nondegenerate_cells(*ambient, max_dim))
    if (pred(c)) s.cells_.insert(c);
  return s;
}

Subobject Subobject::full(CellularSetPtr ambient, int max_dim) {
  return from_predicate(std::move(ambient), [](const Cell&) { return true; }, max_dim);
}

bool Subobject::contains(const Cell& c) const {
  return cells_.count(ambient_->decompose(c).nondegenerate) > 0;
}

std::vector<Cell> Subobject::add(const Cell& c) {
  std::vector<Cell> fresh;
  Cell start = ambient_->decompose(c).nondegenerate;
  if (!cells_.insert(start).second) return fresh;
  fresh.push_back(start);
  std::deque<Cell> queue{start};
  while (!queue.empty()) {
    Cell y = std::move(queue.front());
    queue.pop_front();
    for (const auto& h : cached_hyperfaces(y.shape)) {
      Cell z = ambient_->decompose(ambient_->act(y, h.op)).nondegenerate;
      if (cells_.insert(z).second) {
        fresh.push_back(z);
        queue.push_back(z);
      }
    }
  }
  return fresh;
}

std::vector<Cell> Subobject::generators() const {
  std::set<Cell> covered;
  for (const auto& y : cells_)
    for (const auto& h : cached_hyperfaces(y.shape))
      covered.insert(ambient_->decompose(ambient_->act(y, h.op)).nondegenerate);
  std::vector<Cell> out;
  for (const auto& y : cells_)
    if (!covered.count(y)) out.push_back(y);
  return out;
}

Subobject Subobject::truncated(int max_dim) const {
  Subobject s(ambient_);
  for (const auto& c : cells_)
    if (c.shape.dim() <= max_dim) s.cells_.insert(c);
  return s;
}

int Subobject::max_dim() const {
  int d = -1;
  for (const auto& c : cells_) d = std::max(d, c.shape.dim());
  return d;
}

bool operator==(const Subobject& a, const Subobject& b) {
  return same_ambient(*a.ambient_, *b.ambient_) && a.cells_ == b.cells_;
}

bool same_ambient(const CellularSet& a, const CellularSet& b) { return a.name() == b.name(); }

namespace {

void require_same(const Subobject& a, const Subobject& b) {
  if (!same_ambient(a.ambient(), b.ambient()))
    throw AmbientMismatch("subobjects of " + a.ambient().name() + " and " + b.ambient().name());
}

}  // namespace

Subobject unite(const Subobject& a, const Subobject& b) {
  require_same(a, b);
  Subobject s = a;
  for (const auto& c : b.cells()) s.add(c);
  return s;
}

Subobject intersect(const Subobject& a, const Subobject& b) {
  require_same(a, b);
  return Subobject::from_predicate(
      a.ambient_ptr(), [&](const Cell& c) { return a.contains_nondegenerate(c) && b.contains_nondegenerate(c); },
      std::max(a.max_dim(), 0));
}

bool is_subset(const Subobject& a, const Subobject& b) {
  require_same(a, b);
  return std::includes(b.cells().begin(), b.cells().end(), a.cells().begin(), a.cells().end());
}

bool same_cells(const Subobject& a, const Subobject& b) { return a.cells() == b.cells(); }

Subobject pullback_along(const Subobject& sub, const Cell& phi) {
  auto rep = representable(phi.shape);
  Subobject out(rep);
  const auto& X = sub.ambient();
  for (auto& h : faces_into(phi.shape))
    if (sub.contains(X.act(phi, h))) out.cells_.insert(to_cell(h));
  return out;
}

CellularMap yoneda_map(CellularSetPtr ambient, const Cell& phi) {
  auto rep = representable(phi.shape);
  return {rep,
          [ambient, phi](const Cell& x) { return ambient->act(phi, to_operator(x, phi.shape)); },
          ambient->format(phi)};
}

Subobject pullback_along(const Subobject& sub, const CellularMap& f, int max_dim) {
  Subobject out(f.source);
  for (auto& x : nondegenerate_cells(*f.source, max_dim))
    if (sub.contains(f.apply(x))) out.cells_.insert(x);
  return out;
}

}  // namespace theta2
