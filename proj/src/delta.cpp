#include "theta2/delta.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "theta2/error.hpp"

namespace theta2 {

SimplicialOperator::SimplicialOperator(int dst, std::vector<int> values)
    : dst_(dst), values_(std::move(values)) {
  if (values_.empty()) throw InvalidOperator("simplicial operator needs at least one value");
  if (dst_ < 0) throw InvalidOperator("negative target");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0 || values_[i] > dst_)
      throw InvalidOperator("value out of range in " + values_to_string(values_));
    if (i > 0 && values_[i] < values_[i - 1])
      throw InvalidOperator("not monotone: " + values_to_string(values_));
  }
}

SimplicialOperator SimplicialOperator::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = i;
  return {n, v};
}

SimplicialOperator SimplicialOperator::face(int n, int i) {
  if (n < 1 || i < 0 || i > n) throw RangeError("face index out of range");
  std::vector<int> v;
  for (int j = 0; j <= n; ++j)
    if (j != i) v.push_back(j);
  return {n, v};
}

SimplicialOperator SimplicialOperator::degeneracy(int n, int i) {
  if (n < 0 || i < 0 || i > n) throw RangeError("degeneracy index out of range");
  std::vector<int> v;
  for (int j = 0; j <= n; ++j) {
    v.push_back(j);
    if (j == i) v.push_back(j);
  }
  return {n, v};
}

SimplicialOperator SimplicialOperator::constant(int m, int n, int value) {
  return {n, std::vector<int>(static_cast<std::size_t>(m + 1), value)};
}

bool SimplicialOperator::is_mono() const {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] == values_[i - 1]) return false;
  return true;
}

bool SimplicialOperator::is_epi() const {
  if (values_.front() != 0 || values_.back() != dst_) return false;
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] > values_[i - 1] + 1) return false;
  return true;
}

bool SimplicialOperator::is_inert() const {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] != values_[i - 1] + 1) return false;
  return true;
}

bool SimplicialOperator::preserves_endpoints() const {
  return values_.front() == 0 && values_.back() == dst_;
}

SimplicialOperator compose(const SimplicialOperator& f, const SimplicialOperator& g) {
  if (g.dst() != f.src())
    throw ArityMismatch("cannot compose " + to_string(f) + " after " + to_string(g));
  std::vector<int> v;
  v.reserve(g.values().size());
  for (int x : g.values()) v.push_back(f(x));
  return {f.dst(), v};
}

SimplicialFlags classify(const SimplicialOperator& a) {
  return {a.is_mono(), a.is_epi(), a.is_inert(), a.preserves_endpoints()};
}

SimplicialOperator op_dual(const SimplicialOperator& a) {
  const int m = a.src();
  std::vector<int> v(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) v[static_cast<std::size_t>(i)] = a.dst() - a(m - i);
  return {a.dst(), v};
}

EpiMono ez_factor(const SimplicialOperator& a) {
  std::vector<int> image;
  std::vector<int> epi;
  for (int x : a.values()) {
    if (image.empty() || image.back() != x) image.push_back(x);
    epi.push_back(static_cast<int>(image.size()) - 1);
  }
  const int k = static_cast<int>(image.size()) - 1;
  return {SimplicialOperator(k, epi), SimplicialOperator(a.dst(), image)};
}

namespace {

void extend_monotone(int m, int n, std::vector<int>& cur, std::vector<SimplicialOperator>& out) {
  if (static_cast<int>(cur.size()) == m + 1) {
    out.emplace_back(n, cur);
    return;
  }
  const int lo = cur.empty() ? 0 : cur.back();
  for (int v = lo; v <= n; ++v) {
    cur.push_back(v);
    extend_monotone(m, n, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<SimplicialOperator> all_operators(int m, int n) {
  std::vector<SimplicialOperator> out;
  if (m < 0 || n < 0) return out;
  std::vector<int> cur;
  extend_monotone(m, n, cur, out);
  return out;
}

std::vector<SimplicialOperator> all_monos(int m, int n) {
  std::vector<SimplicialOperator> out;
  for (auto& a : all_operators(m, n))
    if (a.is_mono()) out.push_back(a);
  return out;
}

std::vector<SimplicialOperator> all_epis(int m, int n) {
  std::vector<SimplicialOperator> out;
  for (auto& a : all_operators(m, n))
    if (a.is_epi()) out.push_back(a);
  return out;
}

std::string values_to_string(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + "}";
}

std::string to_string(const SimplicialOperator& a) {
  return values_to_string(a.values()) + ":[" + std::to_string(a.src()) + "]->[" +
         std::to_string(a.dst()) + "]";
}

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
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ParseError("expected integer, got '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::vector<int> parse_value_list(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw ParseError("expected {..} list, got '" + std::string(text) + "'");
  text = text.substr(1, text.size() - 2);
  std::vector<int> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    out.push_back(parse_int(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

SimplicialOperator parse_simplicial(std::string_view text, int dst_hint) {
  text = trim(text);
  auto close = text.find('}');
  if (close == std::string_view::npos) throw ParseError("missing '}' in simplicial operator");
  auto values = parse_value_list(text.substr(0, close + 1));
  if (values.empty()) throw ParseError("empty simplicial operator");
  auto rest = trim(text.substr(close + 1));
  int dst = dst_hint >= 0 ? dst_hint : *std::max_element(values.begin(), values.end());
  if (!rest.empty()) {
    if (rest.front() != ':') throw ParseError("expected ':' after value list");
    rest = trim(rest.substr(1));
    auto arrow = rest.find("->");
    if (arrow == std::string_view::npos) throw ParseError("expected '->'");
    auto lhs = trim(rest.substr(0, arrow));
    auto rhs = trim(rest.substr(arrow + 2));
    if (lhs.size() < 3 || lhs.front() != '[' || lhs.back() != ']' || rhs.size() < 3 ||
        rhs.front() != '[' || rhs.back() != ']')
      throw ParseError("expected [m]->[n]");
    int src = parse_int(lhs.substr(1, lhs.size() - 2));
    dst = parse_int(rhs.substr(1, rhs.size() - 2));
    if (src + 1 != static_cast<int>(values.size()))
      throw ParseError("source [" + std::to_string(src) + "] does not match value count");
  }
  try {
    return {dst, values};
  } catch (const InvalidOperator& e) {
    throw ParseError(e.what());
  }
}

// ---- shuffles ----

Shuffle::Shuffle(int m, int n, std::vector<int> alpha) : m_(m), n_(n), alpha_(std::move(alpha)) {
  if (m < 0 || n < 0) throw InvalidOperator("negative shuffle parameters");
  if (static_cast<int>(alpha_.size()) != m + n + 1)
    throw InvalidOperator("shuffle of type (" + std::to_string(m) + "," + std::to_string(n) +
                          ") needs " + std::to_string(m + n + 1) + " values");
  SimplicialOperator a(m, alpha_);
  if (!a.is_epi()) throw InvalidOperator("shuffle alpha not surjective: " + values_to_string(alpha_));
  SimplicialOperator b(n, alpha_prime());
  if (!b.is_epi()) throw InvalidOperator("shuffle alpha' not surjective: " + values_to_string(alpha_));
}

std::vector<int> Shuffle::alpha_prime() const {
  std::vector<int> v(alpha_.size());
  for (std::size_t i = 0; i < alpha_.size(); ++i) v[i] = static_cast<int>(i) - alpha_[i];
  return v;
}

SimplicialOperator Shuffle::alpha_operator() const { return {m_, alpha_}; }
SimplicialOperator Shuffle::alpha_prime_operator() const { return {n_, alpha_prime()}; }

std::vector<int> Shuffle::lower_corners() const {
  std::vector<int> out;
  for (int i = 1; i + 1 <= m_ + n_; ++i) {
    auto a = [&](int j) { return alpha_[static_cast<std::size_t>(j)]; };
    if (a(i + 1) == a(i) && a(i) == a(i - 1) + 1) out.push_back(i);
  }
  return out;
}

std::vector<int> Shuffle::upper_corners() const {
  std::vector<int> out;
  for (int i = 1; i + 1 <= m_ + n_; ++i) {
    auto a = [&](int j) { return alpha_[static_cast<std::size_t>(j)]; };
    if (a(i + 1) == a(i) + 1 && a(i) == a(i - 1)) out.push_back(i);
  }
  return out;
}

PointKind Shuffle::classify_point(int i) const {
  if (i < 0 || i > m_ + n_) throw RangeError("point out of range");
  auto lc = lower_corners();
  if (std::find(lc.begin(), lc.end(), i) != lc.end()) return PointKind::LowerCorner;
  auto uc = upper_corners();
  if (std::find(uc.begin(), uc.end(), i) != uc.end()) return PointKind::UpperCorner;
  const int v = alpha_[static_cast<std::size_t>(i)];
  if (std::count(alpha_.begin(), alpha_.end(), v) == 1) return PointKind::AlphaSingleton;
  return PointKind::AlphaPrimeSingleton;
}

std::vector<Shuffle> Shuffle::predecessors() const {
  std::vector<Shuffle> out;
  for (int i : lower_corners()) {
    auto a = alpha_;
    a[static_cast<std::size_t>(i)] -= 1;
    out.emplace_back(m_, n_, a);
  }
  return out;
}

std::vector<Shuffle> Shuffle::successors() const {
  std::vector<Shuffle> out;
  for (int i : upper_corners()) {
    auto a = alpha_;
    a[static_cast<std::size_t>(i)] += 1;
    out.emplace_back(m_, n_, a);
  }
  return out;
}

std::vector<Shuffle> shuffles(int m, int n) {
  std::vector<Shuffle> out;
  for (auto& a : all_operators(m + n, m)) {
    if (!a.is_epi()) continue;
    std::vector<int> prime(a.values().size());
    bool ok = true;
    for (std::size_t i = 0; i < prime.size(); ++i) prime[i] = static_cast<int>(i) - a.values()[i];
    for (std::size_t i = 1; i < prime.size() && ok; ++i)
      if (prime[i] < prime[i - 1] || prime[i] > prime[i - 1] + 1) ok = false;
    if (ok) out.emplace_back(m, n, a.values());
  }
  return out;
}

bool shuffle_leq(const Shuffle& a, const Shuffle& b) {
  if (a.m() != b.m() || a.n() != b.n()) throw ArityMismatch("shuffles of different type");
  for (std::size_t i = 0; i < a.alpha().size(); ++i)
    if (a.alpha()[i] > b.alpha()[i]) return false;
  return true;
}

std::string to_string(const Shuffle& s) {
  return "<" + values_to_string(s.alpha()) + "," + values_to_string(s.alpha_prime()) + ">";
}

Shuffle parse_shuffle(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '<' || text.back() != '>')
    throw ParseError("expected <{..},{..}>");
  text = text.substr(1, text.size() - 2);
  auto close = text.find('}');
  if (close == std::string_view::npos) throw ParseError("malformed shuffle");
  auto a = parse_value_list(text.substr(0, close + 1));
  auto rest = trim(text.substr(close + 1));
  if (rest.empty() || rest.front() != ',') throw ParseError("expected ',' between shuffle halves");
  auto b = parse_value_list(rest.substr(1));
  if (a.size() != b.size() || a.empty()) throw ParseError("shuffle halves differ in length");
  const int m = *std::max_element(a.begin(), a.end());
  const int n = *std::max_element(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] + b[i] != static_cast<int>(i)) throw ParseError("shuffle halves do not sum to identity");
  try {
    return {m, n, a};
  } catch (const InvalidOperator& e) {
    throw ParseError(e.what());
  }
}

std::string shuffle_poset_dot(int m, int n) {
  std::ostringstream os;
  os << "digraph Sh_" << m << "_" << n << " {\n";
  auto all = shuffles(m, n);
  for (auto& s : all) os << "  \"" << values_to_string(s.alpha()) << "\";\n";
  for (auto& s : all)
    for (auto& t : s.successors())
      os << "  \"" << values_to_string(s.alpha()) << "\" -> \"" << values_to_string(t.alpha()) << "\";\n";
  os << "}\n";
  return os.str();
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace theta2
