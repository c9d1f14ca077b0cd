#pragma once

#include <optional>
#include <vector>

#include "egal/mechanism.hpp"

namespace egal {

// Sprumont's uniform rule: with total shortage every agent gets
// min(peak, lambda), with excess max(peak, lambda), lambda chosen so the
// values sum to `total`. Exact lambda from a sorted breakpoint scan.
std::vector<Rational> uniform_rule(const std::vector<Rational>& peaks, const Rational& total);

// Lorenz order on vectors of equal length and equal total: a weakly
// dominates b iff every ascending partial sum of a is at least that of b.
// Throws UnequalTotals when the sums differ.
bool lorenz_dominates_weakly(const std::vector<Rational>& a, const std::vector<Rational>& b);
bool lorenz_dominates_strictly(const std::vector<Rational>& a, const std::vector<Rational>& b);

// Grid oracle for the two-sided model: all feasible peak-capped grid
// allocations that are undominated within the enumerated set. Throws TooLarge
// when the grid would exceed the candidate guard.
std::vector<Allocation> enumerate_pareto_star(const TwoSidedInstance& inst,
                                              const Rational& grid_step);

// One-sided grid oracle, one block at a time: every grid vector over the
// block's suppliers within the stated bounds that covers the block demands
// exactly and is implementable by a flow. Pareto optimality inside a block is
// automatic (totals are fixed), so this is the comparison set for the Lorenz
// dominance claim.
struct OneSidedBlockOracle {
  IndexSet suppliers;                            // block members, ascending
  std::vector<std::vector<Rational>> allocations;  // aligned with `suppliers`
};
OneSidedBlockOracle enumerate_block_allocations(const OneSidedInstance& inst,
                                                const Decomposition& dec, bool low_block,
                                                const Rational& grid_step);

// Lexicographic optimality of the sorted-ascending value vector against the
// grid enumeration: blockwise for the one-sided model, per side for the
// two-sided model.
bool is_lex_optimal(const Allocation& alloc, const OneSidedInstance& inst,
                    const Rational& grid_step);
bool is_lex_optimal(const Allocation& alloc, const TwoSidedInstance& inst,
                    const Rational& grid_step);

// Dominance report for a two-sided allocation. The dominator search
// enumerates the toward-peak box around the allocation on the grid, so a
// false verdict always carries a dominating witness.
struct ParetoReport {
  bool is_pareto = true;
  bool is_pareto_star = true;
  std::optional<Allocation> witness;
};
ParetoReport pareto_report(const Allocation& alloc, const TwoSidedInstance& inst,
                           const Rational& grid_step);

// Independent oracle for first_type2_breakpoint: for every nonempty supplier
// subset, solve the schedule equation on every kink interval and take the
// earliest solution. Exponential in the supplier count; guarded by TooLarge.
std::optional<Breakpoint> first_type2_breakpoint_by_enumeration(
    const BipartiteGraph& graph, const std::vector<Rational>& caps_low,
    const std::vector<Capacity>& caps_high, const std::vector<Rational>& demands);

}  // namespace egal
