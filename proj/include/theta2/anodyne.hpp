#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "theta2/boxprod.hpp"
#include "theta2/cellset.hpp"
#include "theta2/theta.hpp"

namespace theta2 {

// Named attachment locus of a gluing step.
struct HornTag {
  std::string family;  // horn_h, horn_v, horn_h_alt, spine, spine_S, upsilon, lambda, psi, e, none
  int k = -1;
  int i = -1;
  std::optional<Shuffle> shuffle;
  std::vector<HyperfaceLabel> set;
};

nlohmann::json to_json(const HornTag& t);

// Attach `attach` (a map from a representable or a box into `ambient`) to the
// running subobject, expecting it to be glued along expected_W.
struct GluingStep {
  CellularSetPtr ambient;
  CellularMap attach;
  Subobject expected_W;
  HornTag horn;
  std::string label;  // printable name of the attached cell
  ThetaShape shape;   // shape of the attached cell (its top cell for box sources)
};

struct GluingChecks {
  bool pullback = false;
  bool cover = false;
  bool injective = false;
  bool ok() const { return pullback && cover && injective; }
};

struct GluingResult {
  GluingChecks checks;
  Subobject after;
  std::vector<std::string> failures;
};

// Step attaching a single cell phi of the ambient.
GluingStep attach_cell(const CellularSetPtr& ambient, const Cell& phi, Subobject expected_W, HornTag horn);

// (a) the pullback of `before` along the attaching map is expected_W;
// (b) the new nondegenerate cells are exactly the images of the cells outside expected_W;
// (c) those images are nondegenerate and pairwise distinct.
// Source cells are enumerated up to max_dim.
GluingResult verify_gluing(const Subobject& before, const GluingStep& step, int max_dim);

// Pullback of the closure of `target` along the hyperface `along`, in the source of `along`.
Subobject pullback_hyperface(const ThetaShape& s, const HyperfaceLabel& target, const HyperfaceLabel& along);

struct Admissibility {
  bool admissible = false;
  std::optional<int> k_S;
  std::string reason;
};

// Throws RangeError unless every label is an inner hyperface of s.
Admissibility is_admissible(const ThetaShape& s, const std::vector<HyperfaceLabel>& S);

// ---- replays ----

struct StepRecord {
  int index = 0;
  std::string stage;
  std::string cell;
  ThetaShape shape;
  HornTag horn;
  GluingChecks checks;
  std::vector<std::string> failures;
  nlohmann::json extra;  // T-sets, ordering keys, side checks
};

struct ReplayReport {
  std::string script;
  nlohmann::json params;
  int bound = 0;
  bool trivial = false;
  std::vector<StepRecord> steps;
  bool equals_target = false;
  int certified_dim = -1;
  int target_dim = -1;  // -1 when the target is not finite-dimensional
  std::string ordering;
  std::vector<std::string> notes;
  std::vector<std::string> failures;  // failed side checks outside individual squares

  bool ok() const;
  nlohmann::json to_json() const;
};

enum class Mutation { None, DropStep, CorruptW };

struct ReplayOptions {
  int bound = 4;        // truncation D for replays through J
  int glue_slack = 2;   // J replays glue cells up to dim D + glue_slack; squares are checked through D - 1
  Mutation mutation = Mutation::None;
  int mutation_step = 0;
};

ReplayReport spine_anodyne(const ThetaShape& s, const ReplayOptions& opt = {});
// S: a prefix of outer_hyperface_order(s).
ReplayReport sigma_S(const ThetaShape& s, const std::vector<HyperfaceLabel>& S, const ReplayOptions& opt = {});
ReplayReport upsilon_vertical(const ThetaShape& s, const std::vector<HyperfaceLabel>& S,
                              const ReplayOptions& opt = {});
ReplayReport upsilon_full(const ThetaShape& s, const std::vector<HyperfaceLabel>& S, const ReplayOptions& opt = {});
// S: non-empty k-th vertical set, or non-empty upward closed k-th horizontal set.
ReplayReport oury_from_alt(const ThetaShape& s, const std::vector<HyperfaceLabel>& S,
                           const ReplayOptions& opt = {});
// I_S: non-empty downward closed subset of {beta >= alpha} in Sh(q_k, q_{k+1}).
ReplayReport alt_trivial(const ThetaShape& s, int k, const Shuffle& alpha, const std::vector<Shuffle>& I_S,
                         const ReplayOptions& opt = {});
ReplayReport vert_equiv(const ThetaShape& s, int k, const ReplayOptions& opt = {});
ReplayReport horiz_equiv(const ThetaShape& s, const ReplayOptions& opt = {});

// T-set predictions, exposed for the oracles.
std::vector<HyperfaceLabel> sigma_T(const ThetaShape& s, const HyperfaceLabel& delta);
std::vector<HyperfaceLabel> upsilon_T(const ThetaShape& s, const std::vector<HyperfaceLabel>& S, int k,
                                      const Shuffle& alpha);
std::vector<HyperfaceLabel> alt_T(const ThetaShape& s, int k, const Shuffle& alpha, const Shuffle& beta);

// Parameter enumerations used by the acceptance matrix.
std::vector<std::vector<HyperfaceLabel>> downward_closed_outer_sets(const ThetaShape& s);
std::vector<std::vector<HyperfaceLabel>> admissible_sets(const ThetaShape& s, bool vertical_only);
std::vector<std::vector<HyperfaceLabel>> oury_sets(const ThetaShape& s);
std::vector<std::vector<Shuffle>> alt_index_sets(const Shuffle& alpha);

// ---- claims ----

struct ClaimCheck {
  std::string claim;
  std::string detail;
  bool ok = false;
};

// Claims 0-4 for the horizontal hyperface (k; alpha) of s.
std::vector<ClaimCheck> claims_oracle(const ThetaShape& s, int k, const Shuffle& alpha);
// Claims 0'-5 for beta > alpha.
std::vector<ClaimCheck> claims_prime_oracle(const ThetaShape& s, int k, const Shuffle& alpha, const Shuffle& beta);

// ---- lifting ----

// The cells of a subobject, as a cellular set in its own right.
CellularSetPtr subobject_set(const Subobject& sub, std::string name);

struct LiftFailure {
  std::string horn;
  std::vector<std::string> images;
};

struct LiftReport {
  std::string family;
  int bound = 0;
  long horns = 0;
  long maps = 0;
  long filled = 0;
  std::vector<LiftFailure> missing;
  bool ok() const { return missing.empty(); }
  nlohmann::json to_json() const;
};

// family: inner, inner-h, inner-v, alt-h. Horns of shape dim <= D-1.
LiftReport lift_check(const CellularSetPtr& X, const std::string& family, int D);

// Maps from a horn domain into X, listed by the images of its hyperfaces.
std::vector<std::vector<Cell>> horn_maps(const CellularSetPtr& X, const ThetaShape& s,
                                         const std::vector<HyperfaceLabel>& generators);

}  // namespace theta2
