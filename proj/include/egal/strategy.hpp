#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "egal/mechanism.hpp"

namespace egal {

// How "weakly benefit" is judged. kAllSinglePeaked uses the betweenness
// criterion: an improvement under it is an improvement under every
// single-peaked preference, so an attack found this way falsifies the
// theorems outright. kDistanceToPeak fixes one concrete single-peaked
// preference and hunts for some-preference attacks.
enum class PreferenceMode { kAllSinglePeaked, kDistanceToPeak };

enum class PreferenceOrder { kBetter, kEqual, kWorse, kIncomparable };

PreferenceOrder weakly_prefers(const Rational& value_new, const Rational& value_old,
                               const Rational& peak, PreferenceMode mode);

enum class Side { kSupplier, kDemander };

struct AgentRef {
  Side side = Side::kSupplier;
  int index = 0;

  friend bool operator==(const AgentRef&, const AgentRef&) = default;
  friend auto operator<=>(const AgentRef&, const AgentRef&) = default;
};

std::string to_string(const AgentRef& agent);

// A joint misreport: peak overrides and/or kept-link subsets for the
// coalition members. Reported links are always subsets of the true links;
// agents can hide partners, not invent them.
struct Manipulation {
  std::vector<AgentRef> coalition;
  std::vector<std::pair<AgentRef, Rational>> reported_peaks;
  std::vector<std::pair<AgentRef, IndexSet>> reported_links;  // kept neighbors
  PreferenceMode mode = PreferenceMode::kAllSinglePeaked;
};

struct MemberOutcome {
  AgentRef agent;
  Rational truthful_value;
  Rational manipulated_value;
  PreferenceOrder order = PreferenceOrder::kEqual;
};

struct AttackReport {
  bool found = false;
  std::optional<Manipulation> manipulation;
  std::vector<Rational> truthful_x, truthful_y;
  std::vector<Rational> manipulated_x, manipulated_y;
  std::vector<MemberOutcome> improvement;  // one entry per coalition member
  std::uint64_t candidates_tried = 0;
  std::uint64_t candidate_ordinal = 0;  // position of the attack in the scan order
  std::uint64_t seed = 0;               // 0 for exhaustive scans
};

// Allocation rules the searches attack. Defaults are the egalitarian
// mechanism; tests also plug in deliberately manipulable baselines.
using OneSidedRule = std::function<std::vector<Rational>(const OneSidedInstance&)>;
using TwoSidedRule =
    std::function<std::pair<std::vector<Rational>, std::vector<Rational>>(const TwoSidedInstance&)>;

OneSidedRule egalitarian_one_sided_rule();
TwoSidedRule egalitarian_two_sided_rule();

// Exhaustive peak-misreport search over every deviation set of at most
// max_coalition agents and every grid value combination. Returns the first
// successful attack in scan order, or found=false. One-sided misreports are
// clipped to the common-knowledge bounds [lower_i, upper_i]. Throws
// BudgetExceeded when the candidate count exceeds `budget`.
AttackReport attack_peaks(const OneSidedInstance& inst, int max_coalition,
                          const std::vector<Rational>& peak_grid,
                          PreferenceMode mode = PreferenceMode::kAllSinglePeaked,
                          std::uint64_t budget = 100'000'000,
                          const OneSidedRule& rule = egalitarian_one_sided_rule());

// Two-sided variant; when verify_identities is set, every evaluated misreport
// also re-checks the cross-decomposition flow inequalities the proofs rely
// on, failing loudly if any is violated.
AttackReport attack_peaks(const TwoSidedInstance& inst, int max_coalition,
                          const std::vector<Rational>& peak_grid,
                          PreferenceMode mode = PreferenceMode::kAllSinglePeaked,
                          std::uint64_t budget = 100'000'000,
                          const TwoSidedRule& rule = egalitarian_two_sided_rule(),
                          bool verify_identities = true);

enum class CoalitionSide { kSuppliersOnly, kDemandersOnly, kMixed };

// Exhaustive link-hiding search in the two-sided model. A link survives only
// if both endpoints report it.
AttackReport attack_links(const TwoSidedInstance& inst, CoalitionSide side, int max_coalition,
                          std::uint64_t budget = 100'000'000);

// Link hiding by supplier coalitions in the one-sided model. Demanders left
// with no links drop out of the reported market; misreports that make the
// remaining problem infeasible are skipped.
AttackReport attack_links(const OneSidedInstance& inst, int max_coalition,
                          std::uint64_t budget = 100'000'000);

// Random single-agent peak perturbations inside the hypotheses of the two
// decomposition-invariance lemmas; re-decomposes and reports any change.
struct LemmaCheckReport {
  int trials = 0;
  struct Violation {
    int supplier = 0;
    Rational reported_peak;
    std::string lemma;
    Decomposition before, after;
  };
  std::vector<Violation> violations;
  std::uint64_t seed = 0;
};
LemmaCheckReport check_decomposition_lemmas(const OneSidedInstance& inst, int trials,
                                            std::uint64_t seed);

// A misreport that leaves the reporter's own allocation unchanged while
// moving someone else's.
struct BossinessWitness {
  AgentRef agent;
  Rational reported_peak;
  std::vector<Rational> truthful_x, truthful_y;
  std::vector<Rational> new_x, new_y;
};

std::optional<BossinessWitness> check_bossiness(const OneSidedInstance& inst, AgentRef agent,
                                                const std::vector<Rational>& peak_grid);
std::optional<BossinessWitness> check_bossiness(const TwoSidedInstance& inst, AgentRef agent,
                                                const std::vector<Rational>& peak_grid);

// The inequality bookkeeping used by the two-sided group-strategyproofness
// proof, instantiated with an actual truthful/misreported run pair. Throws
// InvariantViolation if any identity fails.
void verify_proof_identities(const TwoSidedInstance& truth, const TwoSidedInstance& reported,
                             const Allocation& truthful, const Allocation& manipulated);

}  // namespace egal
