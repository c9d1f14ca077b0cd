#include "egal/mechanism.hpp"

#include <algorithm>
#include <optional>

namespace egal {

namespace {

std::vector<char> all_active(int count) {
  return std::vector<char>(static_cast<std::size_t>(count), 1);
}

std::vector<Capacity> as_capacities(const std::vector<Rational>& values) {
  return std::vector<Capacity>(values.begin(), values.end());
}

// A masked parametric block: active suppliers carry the capacity schedule
// m_i(lambda) = median(lo_i, lambda, hi_i) against the active demanders.
struct Block {
  const BipartiteGraph& graph;
  const std::vector<Rational>& lo;
  const std::vector<Capacity>& hi;
  const std::vector<Rational>& demands;
  std::vector<char> sup_act;
  std::vector<char> dem_act;

  Rational schedule_at(int i, const Rational& lambda) const {
    Rational v = lambda < lo[i] ? lo[i] : lambda;
    if (hi[i].is_finite() && v > hi[i].value()) v = hi[i].value();
    return v;
  }

  Rational reachable_demand(const IndexSet& suppliers) const {
    std::vector<char> seen(static_cast<std::size_t>(graph.n_demanders()), 0);
    Rational sum;
    for (int i : suppliers) {
      for (int j : graph.neighbors_of_supplier(i)) {
        if (dem_act[j] && !seen[j]) {
          seen[j] = 1;
          sum += demands[j];
        }
      }
    }
    return sum;
  }
};

// Sign of g(lambda) = min over nonempty active X of [D(X) - m_X(lambda)]
// together with the union of the minimizing sets. The union is empty iff the
// minimum is strictly positive; when g(lambda) = 0 it is the largest
// bottleneck set, certified as the maximal min-cut of G(m(lambda)).
struct GEval {
  int sign = 1;
  IndexSet binding;
};

GEval evaluate_g(const Block& b, const Rational& lambda) {
  std::vector<Capacity> caps(static_cast<std::size_t>(b.graph.n_suppliers()));
  Rational total;
  for (int i = 0; i < b.graph.n_suppliers(); ++i) {
    if (!b.sup_act[i]) continue;
    Rational m = b.schedule_at(i, lambda);
    total += m;
    caps[i] = Capacity(m);
  }
  CutProfile p = cut_profile(b.graph, caps, b.demands, b.sup_act, b.dem_act);
  GEval out;
  out.binding = p.maximal;
  if (p.min_capacity < total) {
    out.sign = -1;
  } else {
    internal_check(p.min_capacity == total, "min cut above the empty cut");
    out.sign = out.binding.empty() ? 1 : 0;
  }
  return out;
}

// Root of m_X(lambda) = D(X) inside the kink-free segment (seg_lo, seg_hi].
// Every schedule is affine there, so the root is an exact linear solve.
Rational solve_root(const Block& b, const IndexSet& suppliers, const Rational& seg_lo,
                    const Rational& seg_hi) {
  Rational demand = b.reachable_demand(suppliers);
  Rational constant;
  std::int64_t slope = 0;
  for (int i : suppliers) {
    if (b.hi[i].is_finite() && b.hi[i].value() <= seg_lo) {
      constant += b.hi[i].value();
    } else if (b.lo[i] >= seg_hi) {
      constant += b.lo[i];
    } else {
      ++slope;
    }
  }
  internal_check(slope > 0, "binding set with a flat schedule inside a segment");
  return (demand - constant) / Rational(slope);
}

// Discrete Newton inside the kink-free segment (seg_lo, cur]. Precondition:
// g(seg_lo) > 0 and g(cur) <= 0 with `at_cur` the evaluation at cur. All
// schedule pieces are affine and strictly decreasing toward their root here,
// so g has a unique root in the segment and the iteration walks down to it.
Breakpoint newton_in_segment(const Block& b, const Rational& seg_lo, Rational cur, GEval at_cur) {
  int cap = b.graph.n_suppliers() + 8;
  for (int iter = 0; iter < cap; ++iter) {
    if (at_cur.sign == 0) {
      return Breakpoint{cur, BreakpointKind::kType2, at_cur.binding};
    }
    Rational next = solve_root(b, at_cur.binding, seg_lo, cur);
    internal_check(next > seg_lo && next < cur, "newton step left its segment");
    cur = next;
    at_cur = evaluate_g(b, cur);
    internal_check(at_cur.sign <= 0, "newton step overshot the root");
  }
  internal_check(false, "discrete newton did not converge");
  return {};
}

// First type-2 breakpoint of the block strictly above `start` (or from zero
// when `start` is empty, in which case the schedule floor is validated).
std::optional<Breakpoint> first_breakpoint_in_block(const Block& b,
                                                    const std::optional<Rational>& start) {
  Rational base = start.value_or(Rational(0));
  if (!start) {
    GEval g0 = evaluate_g(b, Rational(0));
    if (g0.sign < 0) {
      throw ContractViolation(
          "schedule floor is not shippable within the reachable demands of the block");
    }
    if (g0.sign == 0) return Breakpoint{Rational(0), BreakpointKind::kType2, g0.binding};
  }

  // Ladder of type-1 kinks above the start point.
  std::vector<Rational> ladder;
  bool any_unbounded = false;
  for (int i = 0; i < b.graph.n_suppliers(); ++i) {
    if (!b.sup_act[i]) continue;
    if (b.lo[i] > base) ladder.push_back(b.lo[i]);
    if (b.hi[i].is_unbounded()) {
      any_unbounded = true;
    } else if (b.hi[i].value() > base) {
      ladder.push_back(b.hi[i].value());
    }
  }
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());

  // g is non-increasing, so the first kink with g <= 0 brackets the root.
  std::size_t lo_idx = 0, hi_idx = ladder.size();
  std::optional<GEval> at_found;
  while (lo_idx < hi_idx) {
    std::size_t mid = lo_idx + (hi_idx - lo_idx) / 2;
    GEval e = evaluate_g(b, ladder[mid]);
    if (e.sign <= 0) {
      at_found = std::move(e);
      hi_idx = mid;
    } else {
      lo_idx = mid + 1;
    }
  }
  if (lo_idx < ladder.size()) {
    const Rational& seg_lo = lo_idx == 0 ? base : ladder[lo_idx - 1];
    if (at_found->sign == 0) {
      // A zero at a kink is the unique root of its segment.
      return Breakpoint{ladder[lo_idx], BreakpointKind::kType2, at_found->binding};
    }
    return newton_in_segment(b, seg_lo, ladder[lo_idx], *at_found);
  }

  // No kink binds. Beyond the last kink only unbounded schedules still grow.
  if (!any_unbounded) return std::nullopt;
  Rational last = ladder.empty() ? base : ladder.back();
  IndexSet active;
  for (int i = 0; i < b.graph.n_suppliers(); ++i) {
    if (b.sup_act[i]) active.push_back(i);
  }
  if (active.empty()) return std::nullopt;
  Rational seed = solve_root(b, active, last, last + Rational(1));
  internal_check(seed > last, "full-set root below the explored ladder");
  GEval at_seed = evaluate_g(b, seed);
  internal_check(at_seed.sign <= 0, "full-set root did not bound the search");
  if (at_seed.sign == 0) return Breakpoint{seed, BreakpointKind::kType2, at_seed.binding};
  return newton_in_segment(b, last, seed, at_seed);
}

// Iterated reduction: freeze the largest bottleneck at each breakpoint,
// remove it with the demand it covers, repeat. Frozen values land in `x`.
void water_fill(const BipartiteGraph& graph, const std::vector<Rational>& lo,
                const std::vector<Capacity>& hi, const std::vector<Rational>& demands,
                std::vector<char> sup_act, std::vector<char> dem_act, std::vector<Rational>& x,
                bool expect_demand_coverage) {
  Block b{graph, lo, hi, demands, std::move(sup_act), std::move(dem_act)};
  std::optional<Rational> last_lambda;
  for (;;) {
    // Suppliers with no reachable demand left can never ship anything.
    int n_active = 0;
    for (int i = 0; i < graph.n_suppliers(); ++i) {
      if (!b.sup_act[i]) continue;
      Rational reach;
      for (int j : graph.neighbors_of_supplier(i)) {
        if (b.dem_act[j]) reach += demands[j];
      }
      if (reach.is_zero()) {
        internal_check(lo[i].is_zero(), "positive floor with no reachable demand");
        x[i] = Rational(0);
        b.sup_act[i] = 0;
      } else {
        ++n_active;
      }
    }
    if (n_active == 0) break;

    auto bp = first_breakpoint_in_block(b, last_lambda);
    if (!bp) {
      for (int i = 0; i < graph.n_suppliers(); ++i) {
        if (!b.sup_act[i]) continue;
        internal_check(b.hi[i].is_finite(), "no breakpoint despite an unbounded schedule");
        x[i] = b.hi[i].value();
        b.sup_act[i] = 0;
      }
      break;
    }
    if (last_lambda) {
      internal_check(bp->lambda > *last_lambda, "type-2 breakpoints must strictly increase");
    }
    internal_check(!bp->bottleneck.empty(), "type-2 breakpoint with empty bottleneck");

    Rational frozen_total, covered_demand;
    for (int i : bp->bottleneck) {
      internal_check(b.sup_act[i], "bottleneck contains an inactive supplier");
      x[i] = b.schedule_at(i, bp->lambda);
      frozen_total += x[i];
      b.sup_act[i] = 0;
    }
    for (int j : graph.demanders_adjacent_to(bp->bottleneck)) {
      if (b.dem_act[j]) {
        covered_demand += demands[j];
        b.dem_act[j] = 0;
      }
    }
    internal_check(frozen_total == covered_demand, "bottleneck set is not tight");
    last_lambda = bp->lambda;
  }

  if (expect_demand_coverage) {
    for (int j = 0; j < graph.n_demanders(); ++j) {
      if (b.dem_act[j]) {
        internal_check(demands[j].is_zero(), "positive demand left uncovered by water filling");
      }
    }
  }
}

// Witness assembled block by block, so cross-block links provably carry no
// flow: sources outside the block are capped at zero.
FlowResult blockwise_witness(const BipartiteGraph& graph, const std::vector<Rational>& x,
                             const std::vector<Rational>& y, const Decomposition& dec) {
  auto run_block = [&](const IndexSet& sups, const IndexSet& dems) {
    std::vector<Rational> src(static_cast<std::size_t>(graph.n_suppliers()));
    std::vector<Rational> snk(static_cast<std::size_t>(graph.n_demanders()));
    Rational want;
    for (int i : sups) {
      src[i] = x[i];
      want += x[i];
    }
    Rational sink_total;
    for (int j : dems) {
      snk[j] = y[j];
      sink_total += y[j];
    }
    internal_check(want == sink_total, "block totals differ between the two sides");
    FlowResult fr = max_flow(make_network(graph, src, snk));
    internal_check(fr.value == want, "block allocation is not implementable by a flow");
    return fr;
  };

  FlowResult lo_block = run_block(dec.m_minus, dec.q_plus);
  FlowResult hi_block = run_block(dec.m_plus, dec.q_minus);
  FlowResult witness;
  witness.edge_flow.resize(graph.links().size());
  for (std::size_t e = 0; e < graph.links().size(); ++e) {
    witness.edge_flow[e] = lo_block.edge_flow[e] + hi_block.edge_flow[e];
  }
  witness.source_flow = x;
  witness.sink_flow = y;
  witness.value = lo_block.value + hi_block.value;
  verify_flow(make_network(graph, x, y), witness);
  // no flow between the high block and the low block's demanders
  for (std::size_t e = 0; e < graph.links().size(); ++e) {
    const auto& [i, j] = graph.links()[e];
    if (set_contains(dec.m_plus, i) && set_contains(dec.q_plus, j)) {
      internal_check(witness.edge_flow[e].is_zero(), "cross-block link carries flow");
    }
  }
  return witness;
}

Decomposition decomposition_from_cut(const BipartiteGraph& graph, IndexSet cut_suppliers) {
  Decomposition dec;
  dec.m_minus = std::move(cut_suppliers);
  dec.q_plus = graph.demanders_adjacent_to(dec.m_minus);
  IndexSet all_s, all_d;
  for (int i = 0; i < graph.n_suppliers(); ++i) all_s.push_back(i);
  for (int j = 0; j < graph.n_demanders(); ++j) all_d.push_back(j);
  dec.m_plus = set_difference(all_s, dec.m_minus);
  dec.q_minus = set_difference(all_d, dec.q_plus);
  return dec;
}

}  // namespace

bool check_feasible(const OneSidedInstance& inst) {
  const auto sup_all = all_active(inst.graph.n_suppliers());
  const auto dem_all = all_active(inst.graph.n_demanders());
  Rational lower_total;
  for (const auto& l : inst.lower) lower_total += l;
  CutProfile at_lower =
      cut_profile(inst.graph, as_capacities(inst.lower), inst.d, sup_all, dem_all);
  if (at_lower.min_capacity != lower_total) return false;

  Rational demand_total;
  for (const auto& dj : inst.d) demand_total += dj;
  CutProfile at_upper = cut_profile(inst.graph, inst.upper, inst.d, sup_all, dem_all);
  return at_upper.min_capacity == demand_total;
}

Decomposition decompose_one_sided(const OneSidedInstance& inst) {
  if (!check_feasible(inst)) {
    throw InfeasibleInstance("one-sided instance admits no feasible transfer vector");
  }
  CutProfile peaks = cut_profile(inst.graph, as_capacities(inst.s), inst.d,
                                 all_active(inst.graph.n_suppliers()),
                                 all_active(inst.graph.n_demanders()));
  return decomposition_from_cut(inst.graph, std::move(peaks.minimal));
}

Decomposition decompose_two_sided(const TwoSidedInstance& inst) {
  CutProfile peaks = cut_profile(inst.graph, as_capacities(inst.s), inst.d,
                                 all_active(inst.graph.n_suppliers()),
                                 all_active(inst.graph.n_demanders()));
  return decomposition_from_cut(inst.graph, std::move(peaks.maximal));
}

std::optional<Breakpoint> first_type2_breakpoint(const BipartiteGraph& graph,
                                                 const std::vector<Rational>& caps_low,
                                                 const std::vector<Capacity>& caps_high,
                                                 const std::vector<Rational>& demands) {
  const auto n = static_cast<std::size_t>(graph.n_suppliers());
  require(caps_low.size() == n && caps_high.size() == n, "capacity vectors must match the graph");
  require(demands.size() == static_cast<std::size_t>(graph.n_demanders()),
          "demand vector must match the graph");
  Rational high_total;
  bool high_finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    require(caps_low[i].sign() >= 0, "negative low cap");
    if (caps_high[i].is_finite()) {
      require(caps_low[i] <= caps_high[i].value(), "low cap above high cap");
      high_total += caps_high[i].value();
    } else {
      high_finite = false;
    }
  }
  Rational demand_total;
  for (const auto& dj : demands) {
    require(dj.sign() >= 0, "negative demand");
    demand_total += dj;
  }
  require(!high_finite || demand_total <= high_total, "demands exceed total high caps");

  Block b{graph, caps_low, caps_high, demands, all_active(graph.n_suppliers()),
          all_active(graph.n_demanders())};
  return first_breakpoint_in_block(b, std::nullopt);
}

namespace detail {

Allocation egalitarian_one_sided_assuming_feasible(const OneSidedInstance& inst) {
  Decomposition dec = [&] {
    CutProfile peaks = cut_profile(inst.graph, as_capacities(inst.s), inst.d,
                                   all_active(inst.graph.n_suppliers()),
                                   all_active(inst.graph.n_demanders()));
    return decomposition_from_cut(inst.graph, std::move(peaks.minimal));
  }();

  const int n = inst.graph.n_suppliers();
  const int m = inst.graph.n_demanders();
  std::vector<Rational> x(static_cast<std::size_t>(n));

  auto mask_of = [](int count, const IndexSet& members) {
    std::vector<char> mask(static_cast<std::size_t>(count), 0);
    for (int v : members) mask[v] = 1;
    return mask;
  };

  // M- block: schedules median(lower, lambda, peak), demands met exactly.
  water_fill(inst.graph, inst.lower, as_capacities(inst.s), inst.d, mask_of(n, dec.m_minus),
             mask_of(m, dec.q_plus), x, /*expect_demand_coverage=*/true);
  // M+ block: schedules median(peak, lambda, upper).
  water_fill(inst.graph, inst.s, inst.upper, inst.d, mask_of(n, dec.m_plus),
             mask_of(m, dec.q_minus), x, /*expect_demand_coverage=*/true);

  for (int i : dec.m_minus) {
    internal_check(inst.lower[i] <= x[i] && x[i] <= inst.s[i], "M- allocation out of range");
  }
  for (int i : dec.m_plus) {
    internal_check(inst.s[i] <= x[i], "M+ allocation below peak");
    internal_check(!inst.upper[i].is_finite() || x[i] <= inst.upper[i].value(),
                   "M+ allocation above upper bound");
  }

  Allocation out;
  out.x = std::move(x);
  out.y = inst.d;
  out.flow_witness = blockwise_witness(inst.graph, out.x, out.y, dec);
  return out;
}

}  // namespace detail

Allocation egalitarian_one_sided(const OneSidedInstance& inst) {
  if (!check_feasible(inst)) {
    throw InfeasibleInstance("one-sided instance admits no feasible transfer vector");
  }
  return detail::egalitarian_one_sided_assuming_feasible(inst);
}

std::vector<Rational> one_sided_with_peak_caps(const BipartiteGraph& graph,
                                               const std::vector<Rational>& peaks,
                                               const std::vector<Rational>& receiver_caps) {
  require(peaks.size() == static_cast<std::size_t>(graph.n_suppliers()),
          "peak vector must match the graph");
  require(receiver_caps.size() == static_cast<std::size_t>(graph.n_demanders()),
          "receiver cap vector must match the graph");
  const int n = graph.n_suppliers();
  const int m = graph.n_demanders();
  CutProfile profile = cut_profile(graph, as_capacities(peaks), receiver_caps, all_active(n),
                                   all_active(m));
  std::vector<Rational> x(peaks);
  if (profile.minimal.empty()) return x;  // everyone reaches their peak

  std::vector<char> sup_mask(static_cast<std::size_t>(n), 0);
  for (int i : profile.minimal) sup_mask[i] = 1;
  std::vector<char> dem_mask(static_cast<std::size_t>(m), 0);
  for (int j : graph.demanders_adjacent_to(profile.minimal)) dem_mask[j] = 1;
  std::vector<Rational> zeros(static_cast<std::size_t>(n));
  water_fill(graph, zeros, as_capacities(peaks), receiver_caps, std::move(sup_mask),
             std::move(dem_mask), x, /*expect_demand_coverage=*/true);
  return x;
}

Allocation egalitarian_two_sided(const TwoSidedInstance& inst) {
  const int n = inst.graph.n_suppliers();
  const int m = inst.graph.n_demanders();

  // Demanders with a zero peak trade nothing; drop them up front.
  std::vector<int> kept, dem_pos(static_cast<std::size_t>(m), -1);
  for (int j = 0; j < m; ++j) {
    if (inst.d[j].sign() > 0) {
      dem_pos[j] = static_cast<int>(kept.size());
      kept.push_back(j);
    }
  }
  std::vector<std::pair<int, int>> red_links;
  for (const auto& [i, j] : inst.graph.links()) {
    if (dem_pos[j] >= 0) red_links.emplace_back(i, dem_pos[j]);
  }
  BipartiteGraph red_graph(n, static_cast<int>(kept.size()), std::move(red_links));
  std::vector<Rational> red_d;
  for (int j : kept) red_d.push_back(inst.d[j]);

  std::vector<Rational> x = one_sided_with_peak_caps(red_graph, inst.s, red_d);
  std::vector<Rational> red_y = one_sided_with_peak_caps(red_graph.transposed(), red_d, inst.s);

  Rational x_total, y_total;
  for (const auto& v : x) x_total += v;
  for (const auto& v : red_y) y_total += v;
  internal_check(x_total == y_total, "supplier and demander passes disagree on the total");

  for (int i = 0; i < n; ++i) {
    internal_check(x[i].sign() >= 0 && x[i] <= inst.s[i], "supplier allocation not peak-capped");
  }
  for (std::size_t k = 0; k < kept.size(); ++k) {
    internal_check(red_y[k].sign() >= 0 && red_y[k] <= red_d[k],
                   "demander allocation not peak-capped");
  }

  TwoSidedInstance red_inst(red_graph, inst.s, red_d);
  Decomposition red_dec = decompose_two_sided(red_inst);
  for (int i : red_dec.m_plus) {
    internal_check(x[i] == inst.s[i], "supplier outside the cut is not at peak");
  }
  for (int j : red_dec.q_plus) {
    internal_check(red_y[j] == red_d[j], "demander inside the cut is not at peak");
  }

  FlowResult red_witness = blockwise_witness(red_graph, x, red_y, red_dec);

  Allocation out;
  out.x = std::move(x);
  out.y.assign(static_cast<std::size_t>(m), Rational(0));
  for (std::size_t k = 0; k < kept.size(); ++k) out.y[kept[k]] = red_y[k];

  // Map the witness back onto the original link set; dropped demanders carry
  // no flow.
  out.flow_witness.edge_flow.assign(inst.graph.links().size(), Rational(0));
  for (std::size_t e = 0; e < inst.graph.links().size(); ++e) {
    const auto& [i, j] = inst.graph.links()[e];
    if (dem_pos[j] >= 0) {
      out.flow_witness.edge_flow[e] = red_witness.flow_on(red_graph, i, dem_pos[j]);
    }
  }
  out.flow_witness.source_flow = out.x;
  out.flow_witness.sink_flow = out.y;
  out.flow_witness.value = red_witness.value;
  verify_flow(make_network(inst.graph, out.x, out.y), out.flow_witness);
  return out;
}

}  // namespace egal
