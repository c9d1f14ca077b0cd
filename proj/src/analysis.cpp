#include "egal/analysis.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>

namespace egal {

namespace {

constexpr std::uint64_t kEnumerationGuard = 10'000'000;

Rational sum_of(const std::vector<Rational>& v) {
  Rational total;
  for (const auto& r : v) total += r;
  return total;
}

std::vector<Rational> sorted_ascending(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Multiples of `step` inside [lo, hi] plus both interval endpoints, so every
// achievable bound stays representable even when it is off the grid.
std::vector<Rational> grid_points(const Rational& lo, const Rational& hi, const Rational& step) {
  require(step.sign() > 0, "grid step must be positive");
  require(lo.sign() >= 0 && lo <= hi, "grid interval must be ordered and non-negative");
  std::vector<Rational> out{lo};
  Rational q = lo / step;
  std::int64_t k = q.numerator() / q.denominator();  // trunc; q >= 0 here
  while (Rational(k) * step < lo) ++k;
  for (Rational v = Rational(k) * step; v <= hi; v = Rational(++k) * step) out.push_back(v);
  out.push_back(hi);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool lex_greater_sorted(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  auto sa = sorted_ascending(a);
  auto sb = sorted_ascending(b);
  internal_check(sa.size() == sb.size(), "lexicographic comparison of unequal lengths");
  for (std::size_t k = 0; k < sa.size(); ++k) {
    if (sa[k] != sb[k]) return sa[k] > sb[k];
  }
  return false;
}

// Enumerates grid vectors with component i drawn from boxes[i], invoking
// visit on each. Counts candidates against the guard up front.
void enumerate_boxes(const std::vector<std::vector<Rational>>& boxes,
                     const std::function<void(const std::vector<Rational>&)>& visit) {
  std::uint64_t count = 1;
  for (const auto& box : boxes) {
    require(!box.empty(), "empty grid box");
    if (count > kEnumerationGuard / box.size()) {
      throw TooLarge("grid enumeration exceeds the candidate guard");
    }
    count *= box.size();
  }
  std::vector<std::size_t> idx(boxes.size(), 0);
  std::vector<Rational> value;
  value.reserve(boxes.size());
  for (const auto& box : boxes) value.push_back(box[0]);
  for (;;) {
    visit(value);
    std::size_t pos = 0;
    while (pos < boxes.size()) {
      if (++idx[pos] < boxes[pos].size()) {
        value[pos] = boxes[pos][idx[pos]];
        break;
      }
      idx[pos] = 0;
      value[pos] = boxes[pos][0];
      ++pos;
    }
    if (pos == boxes.size()) break;
  }
}

// Feasibility of exact net transfers (x, y): implementable by a flow iff the
// max-flow with these caps moves the full total.
std::optional<FlowResult> implementing_flow(const BipartiteGraph& graph,
                                            const std::vector<Rational>& x,
                                            const std::vector<Rational>& y) {
  Rational total_x = sum_of(x);
  if (total_x != sum_of(y)) return std::nullopt;
  FlowResult fr = max_flow(make_network(graph, x, y));
  if (fr.value != total_x) return std::nullopt;
  return fr;
}

}  // namespace

std::vector<Rational> uniform_rule(const std::vector<Rational>& peaks, const Rational& total) {
  require(total.sign() >= 0, "uniform rule needs a non-negative total");
  for (const auto& p : peaks) require(p.sign() >= 0, "uniform rule needs non-negative peaks");
  Rational peak_sum = sum_of(peaks);
  std::vector<Rational> out(peaks.size());
  if (peaks.empty()) {
    require(total.is_zero(), "positive total with no agents");
    return out;
  }

  std::vector<Rational> sorted = sorted_ascending(peaks);
  const auto n = static_cast<std::int64_t>(peaks.size());
  if (peak_sum >= total) {
    // shortage side: x_i = min(peak_i, lambda)
    Rational assigned;  // sum of peaks already below the water level
    for (std::int64_t k = 0; k < n; ++k) {
      // with the k smallest agents at their peaks, the rest sit at lambda
      Rational lambda = (total - assigned) / Rational(n - k);
      if (lambda <= sorted[k]) {
        for (std::size_t i = 0; i < peaks.size(); ++i) out[i] = min(peaks[i], lambda);
        return out;
      }
      assigned += sorted[k];
    }
    internal_check(assigned == total, "uniform rule shortage scan fell through");
    return peaks;
  }
  // excess side: x_i = max(peak_i, lambda); the k smallest agents sit at the
  // water level, the rest keep their peaks
  Rational suffix;  // sum of the peaks kept as-is
  for (std::int64_t k = n; k >= 1; --k) {
    Rational lambda = (total - suffix) / Rational(k);
    if (lambda >= sorted[k - 1] && (k == n || lambda <= sorted[k])) {
      for (std::size_t i = 0; i < peaks.size(); ++i) out[i] = max(peaks[i], lambda);
      return out;
    }
    suffix += sorted[k - 1];
  }
  internal_check(false, "uniform rule excess scan fell through");
  return out;
}

bool lorenz_dominates_weakly(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  require(a.size() == b.size(), "Lorenz comparison of unequal lengths");
  if (sum_of(a) != sum_of(b)) throw UnequalTotals("Lorenz comparison requires equal totals");
  auto sa = sorted_ascending(a);
  auto sb = sorted_ascending(b);
  Rational pa, pb;
  for (std::size_t k = 0; k < sa.size(); ++k) {
    pa += sa[k];
    pb += sb[k];
    if (pa < pb) return false;
  }
  return true;
}

bool lorenz_dominates_strictly(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (!lorenz_dominates_weakly(a, b)) return false;
  return sorted_ascending(a) != sorted_ascending(b);
}

std::vector<Allocation> enumerate_pareto_star(const TwoSidedInstance& inst,
                                              const Rational& grid_step) {
  std::vector<std::vector<Rational>> sup_boxes, dem_boxes;
  for (const auto& p : inst.s) sup_boxes.push_back(grid_points(Rational(0), p, grid_step));
  for (const auto& p : inst.d) dem_boxes.push_back(grid_points(Rational(0), p, grid_step));

  std::uint64_t count = 1;
  for (const auto& box : sup_boxes) {
    if (count > kEnumerationGuard / box.size()) throw TooLarge("Pareto* grid too large");
    count *= box.size();
  }
  for (const auto& box : dem_boxes) {
    if (count > kEnumerationGuard / box.size()) throw TooLarge("Pareto* grid too large");
    count *= box.size();
  }

  // Bucket both sides by total: only equal totals can pair into a feasible
  // allocation, and dominance is impossible within a total.
  std::map<Rational, std::vector<std::vector<Rational>>, std::greater<>> sup_by_total,
      dem_by_total;
  enumerate_boxes(sup_boxes,
                  [&](const std::vector<Rational>& x) { sup_by_total[sum_of(x)].push_back(x); });
  enumerate_boxes(dem_boxes,
                  [&](const std::vector<Rational>& y) { dem_by_total[sum_of(y)].push_back(y); });

  std::vector<Allocation> kept;
  auto dominates = [](const Allocation& big, const std::vector<Rational>& x,
                      const std::vector<Rational>& y) {
    bool strict = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (big.x[i] < x[i]) return false;
      strict = strict || big.x[i] > x[i];
    }
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (big.y[j] < y[j]) return false;
      strict = strict || big.y[j] > y[j];
    }
    return strict;
  };

  // Descending totals: a dominator always has a strictly larger total, so
  // checking against earlier survivors is exhaustive.
  for (const auto& [total, xs] : sup_by_total) {
    auto it = dem_by_total.find(total);
    if (it == dem_by_total.end()) continue;
    for (const auto& x : xs) {
      for (const auto& y : it->second) {
        auto witness = implementing_flow(inst.graph, x, y);
        if (!witness) continue;
        bool dominated = false;
        for (const auto& survivor : kept) {
          if (dominates(survivor, x, y)) {
            dominated = true;
            break;
          }
        }
        if (!dominated) kept.push_back(Allocation{x, y, std::move(*witness)});
      }
    }
  }
  return kept;
}

OneSidedBlockOracle enumerate_block_allocations(const OneSidedInstance& inst,
                                                const Decomposition& dec, bool low_block,
                                                const Rational& grid_step) {
  OneSidedBlockOracle out;
  out.suppliers = low_block ? dec.m_minus : dec.m_plus;
  const IndexSet& dems = low_block ? dec.q_plus : dec.q_minus;

  Rational block_demand;
  std::vector<Rational> sink(static_cast<std::size_t>(inst.graph.n_demanders()));
  for (int j : dems) {
    sink[j] = inst.d[j];
    block_demand += inst.d[j];
  }

  std::vector<std::vector<Rational>> boxes;
  for (int i : out.suppliers) {
    Rational lo = low_block ? inst.lower[i] : inst.s[i];
    Rational hi = low_block ? inst.s[i]
                            : (inst.upper[i].is_finite() ? min(inst.upper[i].value(),
                                                               inst.s[i] + block_demand)
                                                         : inst.s[i] + block_demand);
    boxes.push_back(grid_points(lo, hi, grid_step));
  }

  enumerate_boxes(boxes, [&](const std::vector<Rational>& values) {
    if (sum_of(values) != block_demand) return;
    std::vector<Rational> src(static_cast<std::size_t>(inst.graph.n_suppliers()));
    for (std::size_t k = 0; k < out.suppliers.size(); ++k) src[out.suppliers[k]] = values[k];
    FlowResult fr = max_flow(make_network(inst.graph, src, sink));
    if (fr.value == block_demand) out.allocations.push_back(values);
  });
  return out;
}

bool is_lex_optimal(const Allocation& alloc, const OneSidedInstance& inst,
                    const Rational& grid_step) {
  Decomposition dec = decompose_one_sided(inst);
  for (bool low_block : {true, false}) {
    OneSidedBlockOracle oracle = enumerate_block_allocations(inst, dec, low_block, grid_step);
    std::vector<Rational> mine;
    for (int i : oracle.suppliers) mine.push_back(alloc.x[i]);
    for (const auto& other : oracle.allocations) {
      if (lex_greater_sorted(other, mine)) return false;
    }
  }
  return true;
}

bool is_lex_optimal(const Allocation& alloc, const TwoSidedInstance& inst,
                    const Rational& grid_step) {
  // supplier side: every peak-capped x that some peak-capped y can implement
  auto side_optimal = [&](const BipartiteGraph& graph, const std::vector<Rational>& peaks,
                          const std::vector<Rational>& other_caps,
                          const std::vector<Rational>& mine) {
    std::vector<std::vector<Rational>> boxes;
    for (const auto& p : peaks) boxes.push_back(grid_points(Rational(0), p, grid_step));
    bool optimal = true;
    enumerate_boxes(boxes, [&](const std::vector<Rational>& x) {
      if (!optimal) return;
      FlowResult fr = max_flow(make_network(graph, x, other_caps));
      if (fr.value != sum_of(x)) return;  // not implementable within the caps
      if (lex_greater_sorted(x, mine)) optimal = false;
    });
    return optimal;
  };
  if (!side_optimal(inst.graph, inst.s, inst.d, alloc.x)) return false;
  return side_optimal(inst.graph.transposed(), inst.d, inst.s, alloc.y);
}

ParetoReport pareto_report(const Allocation& alloc, const TwoSidedInstance& inst,
                           const Rational& grid_step) {
  ParetoReport report;
  bool peak_capped = true;
  for (std::size_t i = 0; i < inst.s.size(); ++i) {
    peak_capped = peak_capped && alloc.x[i].sign() >= 0 && alloc.x[i] <= inst.s[i];
  }
  for (std::size_t j = 0; j < inst.d.size(); ++j) {
    peak_capped = peak_capped && alloc.y[j].sign() >= 0 && alloc.y[j] <= inst.d[j];
  }

  // A dominating allocation moves every agent weakly toward their peak, so it
  // lives in the grid box between the allocation and the peak vector.
  std::vector<std::vector<Rational>> boxes;
  for (std::size_t i = 0; i < inst.s.size(); ++i) {
    boxes.push_back(grid_points(min(alloc.x[i], inst.s[i]), max(alloc.x[i], inst.s[i]),
                                grid_step));
  }
  for (std::size_t j = 0; j < inst.d.size(); ++j) {
    boxes.push_back(grid_points(min(alloc.y[j], inst.d[j]), max(alloc.y[j], inst.d[j]),
                                grid_step));
  }

  const std::size_t n = inst.s.size();
  enumerate_boxes(boxes, [&](const std::vector<Rational>& candidate) {
    if (report.witness) return;
    std::vector<Rational> x(candidate.begin(), candidate.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<Rational> y(candidate.begin() + static_cast<std::ptrdiff_t>(n), candidate.end());
    bool strict = false;
    for (std::size_t i = 0; i < n; ++i) strict = strict || x[i] != alloc.x[i];
    for (std::size_t j = 0; j < y.size(); ++j) strict = strict || y[j] != alloc.y[j];
    if (!strict) return;
    auto witness = implementing_flow(inst.graph, x, y);
    if (!witness) return;
    report.witness = Allocation{std::move(x), std::move(y), std::move(*witness)};
  });

  report.is_pareto = !report.witness.has_value();
  report.is_pareto_star = report.is_pareto && peak_capped;
  return report;
}

std::optional<Breakpoint> first_type2_breakpoint_by_enumeration(
    const BipartiteGraph& graph, const std::vector<Rational>& caps_low,
    const std::vector<Capacity>& caps_high, const std::vector<Rational>& demands) {
  const int n = graph.n_suppliers();
  require(n <= 20, "breakpoint enumeration limited to 20 suppliers");

  auto schedule = [&](int i, const Rational& lambda) {
    Rational v = max(caps_low[i], lambda);
    if (caps_high[i].is_finite()) v = min(v, caps_high[i].value());
    return v;
  };
  auto schedule_sum = [&](std::uint32_t mask, const Rational& lambda) {
    Rational sum;
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint32_t(1) << i)) sum += schedule(i, lambda);
    }
    return sum;
  };

  std::optional<Rational> best;
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
    // demand reachable from the subset
    Rational demand;
    {
      IndexSet members;
      for (int i = 0; i < n; ++i) {
        if (mask & (std::uint32_t(1) << i)) members.push_back(i);
      }
      for (int j : graph.demanders_adjacent_to(members)) demand += demands[j];
    }
    // kink ladder for this subset
    std::vector<Rational> kinks{Rational(0)};
    bool unbounded = false;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (std::uint32_t(1) << i))) continue;
      if (caps_low[i].sign() > 0) kinks.push_back(caps_low[i]);
      if (caps_high[i].is_finite()) {
        kinks.push_back(caps_high[i].value());
      } else {
        unbounded = true;
      }
    }
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

    std::optional<Rational> root;
    Rational prev_val = schedule_sum(mask, kinks[0]);
    if (prev_val == demand) {
      root = kinks[0];
    } else if (prev_val < demand) {
      for (std::size_t t = 1; t + 0 < kinks.size() && !root; ++t) {
        Rational val = schedule_sum(mask, kinks[t]);
        if (val >= demand) {
          // linear inside (kinks[t-1], kinks[t]]
          Rational span = kinks[t] - kinks[t - 1];
          Rational rise = val - prev_val;
          internal_check(rise.sign() > 0, "flat segment crossing the demand level");
          root = kinks[t - 1] + span * (demand - prev_val) / rise;
        }
        prev_val = val;
      }
      if (!root && unbounded) {
        // beyond the last kink every unbounded schedule grows with slope one
        std::int64_t slope = 0;
        for (int i = 0; i < n; ++i) {
          if ((mask & (std::uint32_t(1) << i)) && caps_high[i].is_unbounded()) ++slope;
        }
        root = kinks.back() + (demand - prev_val) / Rational(slope);
      }
    }
    if (root && (!best || *root < *best)) best = root;
  }

  if (!best) return std::nullopt;
  // The bottleneck is the union of every subset binding at the first root.
  std::vector<char> in_union(static_cast<std::size_t>(n), 0);
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
    IndexSet members;
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint32_t(1) << i)) members.push_back(i);
    }
    Rational demand;
    for (int j : graph.demanders_adjacent_to(members)) demand += demands[j];
    if (schedule_sum(mask, *best) == demand) {
      for (int i : members) in_union[i] = 1;
    }
  }
  Breakpoint bp;
  bp.lambda = *best;
  bp.kind = BreakpointKind::kType2;
  for (int i = 0; i < n; ++i) {
    if (in_union[i]) bp.bottleneck.push_back(i);
  }
  return bp;
}

}  // namespace egal
