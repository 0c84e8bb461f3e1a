#include "theta2/simplicial.hpp"

#include <functional>

#include "theta2/error.hpp"

namespace theta2 {

SimplicialSubset SimplicialSubset::standard(int n) {
  if (n < 0) throw RangeError("negative simplex dimension");
  return {n + 1, false, Kind::Full, 0};
}

SimplicialSubset SimplicialSubset::boundary(int n) {
  if (n < 0) throw RangeError("negative simplex dimension");
  return {n + 1, false, Kind::Boundary, 0};
}

SimplicialSubset SimplicialSubset::horn(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw RangeError("horn index out of range");
  return {n + 1, false, Kind::Horn, k};
}

SimplicialSubset SimplicialSubset::interval() { return {2, true, Kind::Full, 0}; }

SimplicialSubset SimplicialSubset::interval_point(int v) {
  if (v < 0 || v > 1) throw RangeError("J has two objects");
  return {2, true, Kind::Point, v};
}

SimplicialSubset SimplicialSubset::chaotic(int objects) {
  if (objects < 1) throw RangeError("chaotic category needs an object");
  return {objects, true, Kind::Full, 0};
}

SimplicialSubset SimplicialSubset::point_of(const SimplicialSubset& a, int v) {
  if (v < 0 || v >= a.objects_) throw RangeError("object out of range");
  return {a.objects_, a.chaotic_, Kind::Point, v};
}

SimplicialSubset SimplicialSubset::empty_of(const SimplicialSubset& a) {
  return {a.objects_, a.chaotic_, Kind::Empty, 0};
}

bool SimplicialSubset::is_ambient_simplex(const int* s, int len) const {
  if (len < 1) return false;
  for (int i = 0; i < len; ++i) {
    if (s[i] < 0 || s[i] >= objects_) return false;
    if (!chaotic_ && i > 0 && s[i] < s[i - 1]) return false;
  }
  return true;
}

bool SimplicialSubset::contains(const int* s, int len) const {
  if (!is_ambient_simplex(s, len)) return false;
  switch (kind_) {
    case Kind::Full:
      return true;
    case Kind::Empty:
      return false;
    case Kind::Point:
      for (int i = 0; i < len; ++i)
        if (s[i] != index_) return false;
      return true;
    case Kind::Boundary:
    case Kind::Horn: {
      std::vector<char> hit(static_cast<std::size_t>(objects_), 0);
      for (int i = 0; i < len; ++i) hit[static_cast<std::size_t>(s[i])] = 1;
      if (kind_ == Kind::Horn) hit[static_cast<std::size_t>(index_)] = 1;
      for (char h : hit)
        if (!h) return true;
      return false;
    }
  }
  return false;
}

bool SimplicialSubset::contains(const std::vector<int>& s) const {
  return contains(s.data(), static_cast<int>(s.size()));
}

std::vector<std::vector<int>> SimplicialSubset::simplices(int p) const {
  std::vector<std::vector<int>> out;
  if (p < 0) return out;
  std::vector<int> cur;
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == p + 1) {
      if (contains(cur)) out.push_back(cur);
      return;
    }
    const int lo = (!chaotic_ && !cur.empty()) ? cur.back() : 0;
    for (int v = lo; v < objects_; ++v) {
      cur.push_back(v);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

std::vector<std::vector<int>> SimplicialSubset::nondegenerate(int p) const {
  std::vector<std::vector<int>> out;
  for (auto& s : simplices(p)) {
    bool nd = true;
    for (std::size_t i = 1; i < s.size() && nd; ++i) nd = s[i] != s[i - 1];
    if (nd) out.push_back(s);
  }
  return out;
}

bool SimplicialSubset::same_ambient(const SimplicialSubset& o) const {
  return objects_ == o.objects_ && chaotic_ == o.chaotic_;
}

std::string SimplicialSubset::name() const {
  if (chaotic_) {
    std::string base = objects_ == 2 ? "J" : "E" + std::to_string(objects_);
    switch (kind_) {
      case Kind::Full:
        return base;
      case Kind::Point:
        return "{" + std::to_string(index_) + "}<" + base;
      case Kind::Empty:
        return "0<" + base;
      case Kind::Boundary:
        return "d" + base;
      case Kind::Horn:
        return "L" + std::to_string(index_) + base;
    }
  }
  const std::string n = std::to_string(objects_ - 1);
  switch (kind_) {
    case Kind::Full:
      return "D[" + n + "]";
    case Kind::Boundary:
      return "dD[" + n + "]";
    case Kind::Horn:
      return "L" + std::to_string(index_) + "[" + n + "]";
    case Kind::Point:
      return "{" + std::to_string(index_) + "}<D[" + n + "]";
    case Kind::Empty:
      return "0<D[" + n + "]";
  }
  return "?";
}

}  // namespace theta2
