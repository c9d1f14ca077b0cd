#pragma once

#include <vector>

#include "egal/graph.hpp"
#include "egal/rational.hpp"

namespace egal {

// One-sided model: demands must be met exactly, only suppliers are strategic,
// and supplier i must send between lower[i] and upper[i] units.
struct OneSidedInstance {
  BipartiteGraph graph;
  std::vector<Rational> s;      // supplier peaks
  std::vector<Rational> d;      // demands, met exactly
  std::vector<Rational> lower;  // per-supplier minimum transfer
  std::vector<Capacity> upper;  // per-supplier maximum transfer, may be unbounded

  OneSidedInstance() = default;
  OneSidedInstance(BipartiteGraph g, std::vector<Rational> peaks, std::vector<Rational> demands,
                   std::vector<Rational> lo, std::vector<Capacity> hi);

  friend bool operator==(const OneSidedInstance&, const OneSidedInstance&) = default;
};

// Two-sided model: both sides strategic and peak-capped; the traded quantity
// is endogenous.
struct TwoSidedInstance {
  BipartiteGraph graph;
  std::vector<Rational> s;  // supplier peaks
  std::vector<Rational> d;  // demander peaks

  TwoSidedInstance() = default;
  TwoSidedInstance(BipartiteGraph g, std::vector<Rational> peaks_s, std::vector<Rational> peaks_d);

  friend bool operator==(const TwoSidedInstance&, const TwoSidedInstance&) = default;
};

}  // namespace egal
