#pragma once

#include <string>
#include <vector>

namespace theta2 {

// Simplicial subset of the nerve of a finite preorder on {0..size-1}: either
// the chain [size-1] or the chaotic category (every pair uniquely isomorphic).
// A p-simplex is a list of p+1 objects, monotone in the chain case.
class SimplicialSubset {
 public:
  enum class Kind { Full, Boundary, Horn, Point, Empty };

  static SimplicialSubset standard(int n);
  static SimplicialSubset boundary(int n);
  static SimplicialSubset horn(int n, int k);
  // J: the chaotic category on {0 = diamond, 1 = filled diamond}.
  static SimplicialSubset interval();
  static SimplicialSubset interval_point(int v);
  static SimplicialSubset chaotic(int objects);
  static SimplicialSubset point_of(const SimplicialSubset& ambient, int v);
  static SimplicialSubset empty_of(const SimplicialSubset& ambient);

  int objects() const { return objects_; }
  bool is_chaotic() const { return chaotic_; }
  Kind kind() const { return kind_; }
  int index() const { return index_; }

  // s is a simplex of the ambient nerve lying in this subset.
  bool contains(const std::vector<int>& s) const;
  bool contains(const int* s, int len) const;
  bool is_ambient_simplex(const int* s, int len) const;
  // Every p-simplex in lexicographic order.
  std::vector<std::vector<int>> simplices(int p) const;
  std::vector<std::vector<int>> nondegenerate(int p) const;
  // Same ambient nerve, subset relation as sets of simplices.
  bool same_ambient(const SimplicialSubset& o) const;

  std::string name() const;

  bool operator==(const SimplicialSubset&) const = default;

 private:
  SimplicialSubset(int objects, bool chaotic, Kind kind, int index)
      : objects_(objects), chaotic_(chaotic), kind_(kind), index_(index) {}
  int objects_ = 1;
  bool chaotic_ = false;
  Kind kind_ = Kind::Full;
  int index_ = 0;
};

}  // namespace theta2
