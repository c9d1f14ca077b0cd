#pragma once

#include <utility>
#include <vector>

#include "egal/graph.hpp"
#include "egal/rational.hpp"

namespace egal {

// Single-source single-sink network over a bipartite graph: one arc from the
// source to every supplier, one arc from every demander to the sink, and an
// uncapacitated arc across every link.
struct FlowNetwork {
  BipartiteGraph graph;
  std::vector<Capacity> source_caps;  // one per supplier, may be unbounded
  std::vector<Rational> sink_caps;    // one per demander, always finite

  FlowNetwork() = default;
  FlowNetwork(BipartiteGraph g, std::vector<Capacity> src, std::vector<Rational> snk);
};

FlowNetwork make_network(const BipartiteGraph& graph, const std::vector<Rational>& source_caps,
                         const std::vector<Rational>& sink_caps);

struct FlowResult {
  // Aligned with graph.links(): edge_flow[e] is the transfer on links()[e].
  std::vector<Rational> edge_flow;
  std::vector<Rational> source_flow;  // x(phi)
  std::vector<Rational> sink_flow;    // y(phi)
  Rational value;

  Rational flow_on(const BipartiteGraph& graph, int supplier, int demander) const;
};

struct CutResult {
  IndexSet suppliers_in_cut;   // X
  IndexSet demanders_in_cut;   // always f(X)
  Rational capacity;
};

// Maximum s-t flow via shortest augmenting paths with a fixed exploration
// order, so identical inputs produce identical flows.
FlowResult max_flow(const FlowNetwork& net);

// The unique min-cut whose supplier set X is inclusion-minimal: the source
// side is the set of nodes reachable from s in the residual graph.
CutResult min_cut_minimal(const FlowNetwork& net, const FlowResult& fr);

// The unique min-cut whose supplier set X is inclusion-maximal: the source
// side is the complement of the nodes that can reach t in the residual graph.
CutResult min_cut_maximal(const FlowNetwork& net, const FlowResult& fr);

// Verifies conservation, capacity bounds and the value identity; throws
// InvariantViolation on any failure. max_flow runs this before returning.
void verify_flow(const FlowNetwork& net, const FlowResult& fr);

// Min-cut value plus both canonical min-cut supplier sets, restricted to an
// active sub-network. Small blocks are profiled by direct enumeration of
// supplier subsets; larger blocks run the augmenting-path solver on the
// induced subnetwork. Equivalent to max_flow + min_cut_minimal/maximal by
// the max-flow min-cut theorem.
struct CutProfile {
  Rational min_capacity;  // equals the max-flow value
  IndexSet minimal;       // intersection of all min-cut supplier sets
  IndexSet maximal;       // union of all min-cut supplier sets
};

CutProfile cut_profile(const BipartiteGraph& graph, const std::vector<Capacity>& source_caps,
                       const std::vector<Rational>& sink_caps,
                       const std::vector<char>& active_suppliers,
                       const std::vector<char>& active_demanders);

}  // namespace egal
