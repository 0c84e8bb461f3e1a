#pragma once

#include <set>
#include <string>
#include <vector>

#include "theta2/anodyne.hpp"

namespace theta2::detail {

std::vector<std::string> label_strings(const std::vector<HyperfaceLabel>& S);
const std::vector<CellularOperator>& faces_of(const ThetaShape& s);
std::vector<Cell> source_cells(const CellularMap& f, int max_dim);
std::string describe(const CellularSet& X, const std::vector<Cell>& cells, std::size_t limit);
std::vector<Cell> difference(const std::set<Cell>& a, const std::set<Cell>& b);
std::set<Cell> difference_set(const std::set<Cell>& a, const std::set<Cell>& b);
int agreement_dim(const std::set<Cell>& a, const std::set<Cell>& b, int max_dim);

HyperfaceLabel h(int k);
HyperfaceLabel h(int k, const Shuffle& s);
HyperfaceLabel v(int k, int i);
std::vector<HyperfaceLabel> normalized(std::vector<HyperfaceLabel> S);
bool contains(const std::vector<HyperfaceLabel>& S, const HyperfaceLabel& l);
// d_h^n (last) or d_h^0 of s, for n >= 2.
CellularOperator outer_horizontal_face(const ThetaShape& s, bool last);
Subobject full(const ThetaShape& s);
nlohmann::json shape_params(const ThetaShape& s);

// Runs a sequence of gluing squares against a growing subobject.
class Engine {
 public:
  Engine(std::string script, nlohmann::json params, CellularSetPtr ambient, Subobject start, int max_dim,
         const ReplayOptions& opt);

  bool glue(GluingStep step, const std::string& stage, nlohmann::json extra = nullptr);
  void side_check(bool ok, const std::string& what);
  // Compares Y with target through dimension upto.
  void stage_check(const Subobject& target, const std::string& stage, int upto);
  void finish(const Subobject& target, int target_dim);
  void finish_truncated(const Subobject& target, int D);
  void trivial(const std::string& why);
  bool failed() const { return failed_; }
  const CellularSetPtr& ambient() const { return ambient_; }
  int max_dim() const { return max_dim_; }

  Subobject Y;
  ReplayReport report;

 private:
  CellularSetPtr ambient_;
  int max_dim_;
  ReplayOptions opt_;
  bool failed_ = false;
  int counter_ = 0;
};

}  // namespace theta2::detail
