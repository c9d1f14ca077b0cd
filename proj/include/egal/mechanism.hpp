#pragma once

#include <optional>
#include <vector>

#include "egal/flow.hpp"
#include "egal/instance.hpp"

namespace egal {

// Canonical partition of the agents derived from a min-cut of the auxiliary
// network. One-sided reading: (M-, M+, Q+, Q-) with M- the inclusion-minimal
// min-cut supplier set of the peak network. Two-sided reading: the same
// record carries (S-, S+, D+, D-) with S- taken from the inclusion-maximal
// min-cut.
struct Decomposition {
  IndexSet m_minus;  // suppliers at or below peak in every Pareto optimum
  IndexSet m_plus;   // suppliers at or above peak
  IndexSet q_plus;   // demanders adjacent to m_minus
  IndexSet q_minus;  // the remaining demanders

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

enum class BreakpointKind { kType1, kType2 };

// A breakpoint of the parametric max-flow value. Type-2 breakpoints carry the
// largest bottleneck supplier set whose capacity schedule exactly covers the
// demand it can reach.
struct Breakpoint {
  Rational lambda;
  BreakpointKind kind = BreakpointKind::kType2;
  IndexSet bottleneck;  // nonempty iff kind == kType2

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

// Net transfers together with a flow that implements them. The witness
// carries no flow across blocks of the canonical decomposition.
struct Allocation {
  std::vector<Rational> x;  // supplier net transfers
  std::vector<Rational> y;  // demander net transfers
  FlowResult flow_witness;
};

// True iff the one-sided problem admits a feasible transfer vector: the lower
// bounds must be shippable and the demands coverable within the upper bounds.
bool check_feasible(const OneSidedInstance& inst);

// Canonical one-sided decomposition from the inclusion-minimal min-cut of the
// peak network. Throws InfeasibleInstance when check_feasible fails.
Decomposition decompose_one_sided(const OneSidedInstance& inst);

// Canonical two-sided decomposition from the inclusion-maximal min-cut.
Decomposition decompose_two_sided(const TwoSidedInstance& inst);

// First lambda at which some supplier set's capacity schedule
// median(caps_low, lambda, caps_high) exactly covers the demand adjacent to
// it, together with the largest such set, certified by a min-cut. Returns
// nullopt when no set ever binds; the caller then assigns every supplier its
// high cap. Search is discrete Newton on min-cuts interleaved with the sorted
// ladder of schedule kinks.
std::optional<Breakpoint> first_type2_breakpoint(const BipartiteGraph& graph,
                                                 const std::vector<Rational>& caps_low,
                                                 const std::vector<Capacity>& caps_high,
                                                 const std::vector<Rational>& demands);

// Egalitarian allocation for the one-sided model: iterated water-filling of
// the M- block under schedule median(lower, lambda, peak) and of the M+ block
// under median(peak, lambda, upper); every demander receives exactly its
// demand. Throws InfeasibleInstance.
Allocation egalitarian_one_sided(const OneSidedInstance& inst);

// One water-filling pass of the two-sided mechanism: suppliers fill up toward
// their peaks against receiver caps; nobody exceeds their peak. The demander
// side of the two-sided mechanism is this same pass on the transposed graph.
std::vector<Rational> one_sided_with_peak_caps(const BipartiteGraph& graph,
                                               const std::vector<Rational>& peaks,
                                               const std::vector<Rational>& receiver_caps);

// Egalitarian allocation for the two-sided model: a supplier pass and a
// demander pass of one_sided_with_peak_caps, glued by a joint flow witness.
Allocation egalitarian_two_sided(const TwoSidedInstance& inst);

namespace detail {

// Same as egalitarian_one_sided, for callers that already verified
// feasibility (peak misreports cannot change it).
Allocation egalitarian_one_sided_assuming_feasible(const OneSidedInstance& inst);

}  // namespace detail

}  // namespace egal
