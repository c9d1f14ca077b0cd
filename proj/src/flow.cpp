#include "egal/flow.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>

namespace egal {

FlowNetwork::FlowNetwork(BipartiteGraph g, std::vector<Capacity> src, std::vector<Rational> snk)
    : graph(std::move(g)), source_caps(std::move(src)), sink_caps(std::move(snk)) {
  require(source_caps.size() == static_cast<std::size_t>(graph.n_suppliers()),
          "source capacity vector size mismatch");
  require(sink_caps.size() == static_cast<std::size_t>(graph.n_demanders()),
          "sink capacity vector size mismatch");
  for (const auto& c : source_caps) {
    if (c.is_finite()) require(c.value().sign() >= 0, "negative source capacity");
  }
  for (const auto& c : sink_caps) require(c.sign() >= 0, "negative sink capacity");
}

FlowNetwork make_network(const BipartiteGraph& graph, const std::vector<Rational>& source_caps,
                         const std::vector<Rational>& sink_caps) {
  std::vector<Capacity> src(source_caps.begin(), source_caps.end());
  return FlowNetwork(graph, std::move(src), sink_caps);
}

Rational FlowResult::flow_on(const BipartiteGraph& graph, int supplier, int demander) const {
  const auto& links = graph.links();
  auto it = std::lower_bound(links.begin(), links.end(), std::make_pair(supplier, demander));
  if (it == links.end() || *it != std::make_pair(supplier, demander)) return Rational(0);
  return edge_flow[static_cast<std::size_t>(it - links.begin())];
}

namespace {

// Node ids: 0 = source, 1..n = suppliers, n+1..n+m = demanders, n+m+1 = sink.
struct Solver {
  const FlowNetwork& net;
  int n, m, sink_id;
  std::vector<Rational> src_flow, link_flow, snk_flow;
  // link index lookup per (supplier, position in its adjacency)
  std::vector<std::vector<int>> sup_link_ids;  // parallel to neighbors_of_supplier
  std::vector<std::vector<int>> dem_link_ids;  // parallel to neighbors_of_demander

  explicit Solver(const FlowNetwork& network)
      : net(network),
        n(network.graph.n_suppliers()),
        m(network.graph.n_demanders()),
        sink_id(n + m + 1),
        src_flow(static_cast<std::size_t>(n)),
        link_flow(network.graph.links().size()),
        snk_flow(static_cast<std::size_t>(m)) {
    sup_link_ids.assign(static_cast<std::size_t>(n), {});
    dem_link_ids.assign(static_cast<std::size_t>(m), {});
    const auto& links = net.graph.links();
    for (int e = 0; e < static_cast<int>(links.size()); ++e) {
      sup_link_ids[links[e].first].push_back(e);
    }
    // links are sorted by (supplier, demander), so sup_link_ids[i] parallels
    // neighbors_of_supplier(i); demander lists need explicit pairing.
    for (int j = 0; j < m; ++j) {
      for (int i : net.graph.neighbors_of_demander(j)) {
        const auto& row = net.graph.neighbors_of_supplier(i);
        auto pos = std::lower_bound(row.begin(), row.end(), j) - row.begin();
        dem_link_ids[j].push_back(sup_link_ids[i][static_cast<std::size_t>(pos)]);
      }
    }
  }

  bool src_residual_positive(int i) const {
    const Capacity& cap = net.source_caps[i];
    return cap.is_unbounded() || src_flow[i] < cap.value();
  }

  // One BFS round; returns true when an augmenting path was applied.
  bool augment() {
    // parent[v] = (previous node, link id used or -1)
    std::vector<std::pair<int, int>> parent(static_cast<std::size_t>(sink_id + 1), {-1, -1});
    parent[0] = {0, -1};
    std::deque<int> queue{0};
    while (!queue.empty() && parent[sink_id].first < 0) {
      int v = queue.front();
      queue.pop_front();
      if (v == 0) {
        for (int i = 0; i < n; ++i) {
          if (parent[1 + i].first < 0 && src_residual_positive(i)) {
            parent[1 + i] = {0, -1};
            queue.push_back(1 + i);
          }
        }
      } else if (v <= n) {
        int i = v - 1;
        // cross arcs are uncapacitated: always usable forward
        for (int j : net.graph.neighbors_of_supplier(i)) {
          if (parent[1 + n + j].first < 0) {
            parent[1 + n + j] = {v, -1};
            queue.push_back(1 + n + j);
          }
        }
      } else if (v < sink_id) {
        int j = v - 1 - n;
        const auto& row = net.graph.neighbors_of_demander(j);
        for (std::size_t k = 0; k < row.size(); ++k) {
          int i = row[k];
          int e = dem_link_ids[j][k];
          if (parent[1 + i].first < 0 && link_flow[e].sign() > 0) {
            parent[1 + i] = {v, e};
            queue.push_back(1 + i);
          }
        }
        if (parent[sink_id].first < 0 && snk_flow[j] < net.sink_caps[j]) {
          parent[sink_id] = {v, -1};
        }
      }
    }
    if (parent[sink_id].first < 0) return false;

    // Bottleneck over the path (cross arcs forward are unbounded).
    bool have_delta = false;
    Rational delta;
    auto tighten = [&](const Rational& r) {
      if (!have_delta || r < delta) {
        delta = r;
        have_delta = true;
      }
    };
    for (int v = sink_id; v != 0;) {
      auto [u, e] = parent[v];
      if (v == sink_id) {
        int j = u - 1 - n;
        tighten(net.sink_caps[j] - snk_flow[j]);
      } else if (v <= n && u == 0) {
        int i = v - 1;
        if (net.source_caps[i].is_finite()) tighten(net.source_caps[i].value() - src_flow[i]);
      } else if (v <= n) {
        tighten(link_flow[e]);  // backward over a loaded link
      }
      v = u;
    }
    internal_check(have_delta && delta.sign() > 0, "augmenting path with empty bottleneck");

    for (int v = sink_id; v != 0;) {
      auto [u, e] = parent[v];
      if (v == sink_id) {
        snk_flow[u - 1 - n] += delta;
      } else if (v <= n && u == 0) {
        src_flow[v - 1] += delta;
      } else if (v <= n) {
        link_flow[e] -= delta;  // backward arc
      } else {
        // forward cross arc u(supplier) -> v(demander)
        int i = u - 1;
        int j = v - 1 - n;
        const auto& row = net.graph.neighbors_of_supplier(i);
        auto pos = std::lower_bound(row.begin(), row.end(), j) - row.begin();
        link_flow[sup_link_ids[i][static_cast<std::size_t>(pos)]] += delta;
      }
      v = u;
    }
    return true;
  }

  // Forward residual reachability from the source.
  std::vector<char> reachable_from_source() const {
    std::vector<char> seen(static_cast<std::size_t>(sink_id + 1), 0);
    seen[0] = 1;
    std::deque<int> queue{0};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (v == 0) {
        for (int i = 0; i < n; ++i) {
          if (!seen[1 + i] && src_residual_positive(i)) {
            seen[1 + i] = 1;
            queue.push_back(1 + i);
          }
        }
      } else if (v <= n) {
        for (int j : net.graph.neighbors_of_supplier(v - 1)) {
          if (!seen[1 + n + j]) {
            seen[1 + n + j] = 1;
            queue.push_back(1 + n + j);
          }
        }
      } else if (v < sink_id) {
        int j = v - 1 - n;
        const auto& row = net.graph.neighbors_of_demander(j);
        for (std::size_t k = 0; k < row.size(); ++k) {
          if (!seen[1 + row[k]] && link_flow[dem_link_ids[j][k]].sign() > 0) {
            seen[1 + row[k]] = 1;
            queue.push_back(1 + row[k]);
          }
        }
        if (snk_flow[j] < net.sink_caps[j]) seen[sink_id] = 1;
      }
    }
    return seen;
  }

  // Residual reachability to the sink (reverse search from t). A node joins
  // the set when it has a positive-residual arc into a member.
  std::vector<char> reaches_sink() const {
    std::vector<char> seen(static_cast<std::size_t>(sink_id + 1), 0);
    seen[sink_id] = 1;
    std::deque<int> queue;
    for (int j = 0; j < m; ++j) {
      if (snk_flow[j] < net.sink_caps[j]) {
        seen[1 + n + j] = 1;
        queue.push_back(1 + n + j);
      }
    }
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (v <= n) {
        // arcs into supplier i: backward residuals j->i on loaded links
        int i = v - 1;
        const auto& row = net.graph.neighbors_of_supplier(i);
        for (std::size_t k = 0; k < row.size(); ++k) {
          if (!seen[1 + n + row[k]] && link_flow[sup_link_ids[i][k]].sign() > 0) {
            seen[1 + n + row[k]] = 1;
            queue.push_back(1 + n + row[k]);
          }
        }
      } else {
        // arcs into demander j: every linked supplier, cross arcs are unbounded
        int j = v - 1 - n;
        for (int i : net.graph.neighbors_of_demander(j)) {
          if (!seen[1 + i]) {
            seen[1 + i] = 1;
            queue.push_back(1 + i);
          }
        }
      }
    }
    return seen;
  }

  FlowResult result() const {
    FlowResult fr;
    fr.edge_flow = link_flow;
    fr.source_flow = src_flow;
    fr.sink_flow = snk_flow;
    fr.value = Rational(0);
    for (const auto& x : src_flow) fr.value += x;
    return fr;
  }
};

CutResult cut_from_suppliers(const FlowNetwork& net, const FlowResult& fr, IndexSet suppliers) {
  CutResult cut;
  cut.suppliers_in_cut = std::move(suppliers);
  cut.demanders_in_cut = net.graph.demanders_adjacent_to(cut.suppliers_in_cut);
  cut.capacity = Rational(0);
  std::size_t next = 0;
  for (int i = 0; i < net.graph.n_suppliers(); ++i) {
    if (next < cut.suppliers_in_cut.size() && cut.suppliers_in_cut[next] == i) {
      ++next;
      continue;
    }
    internal_check(net.source_caps[i].is_finite(),
                   "unbounded source arc crossing a minimum cut");
    cut.capacity += net.source_caps[i].value();
  }
  for (int j : cut.demanders_in_cut) cut.capacity += net.sink_caps[j];
  // max-flow min-cut certificate, checked on every extraction
  internal_check(cut.capacity == fr.value, "cut capacity differs from max-flow value");
  return cut;
}

}  // namespace

void verify_flow(const FlowNetwork& net, const FlowResult& fr) {
  const auto& g = net.graph;
  internal_check(fr.edge_flow.size() == g.links().size(), "edge flow size mismatch");
  internal_check(fr.source_flow.size() == static_cast<std::size_t>(g.n_suppliers()),
                 "source flow size mismatch");
  internal_check(fr.sink_flow.size() == static_cast<std::size_t>(g.n_demanders()),
                 "sink flow size mismatch");
  std::vector<Rational> sup_total(static_cast<std::size_t>(g.n_suppliers()));
  std::vector<Rational> dem_total(static_cast<std::size_t>(g.n_demanders()));
  for (std::size_t e = 0; e < g.links().size(); ++e) {
    internal_check(fr.edge_flow[e].sign() >= 0, "negative link flow");
    sup_total[g.links()[e].first] += fr.edge_flow[e];
    dem_total[g.links()[e].second] += fr.edge_flow[e];
  }
  Rational total;
  for (int i = 0; i < g.n_suppliers(); ++i) {
    internal_check(sup_total[i] == fr.source_flow[i], "conservation failure at supplier");
    internal_check(fr.source_flow[i].sign() >= 0, "negative source flow");
    if (net.source_caps[i].is_finite()) {
      internal_check(fr.source_flow[i] <= net.source_caps[i].value(),
                     "source capacity exceeded");
    }
    total += fr.source_flow[i];
  }
  Rational sink_total;
  for (int j = 0; j < g.n_demanders(); ++j) {
    internal_check(dem_total[j] == fr.sink_flow[j], "conservation failure at demander");
    internal_check(fr.sink_flow[j] <= net.sink_caps[j], "sink capacity exceeded");
    sink_total += fr.sink_flow[j];
  }
  internal_check(total == fr.value && sink_total == fr.value,
                 "flow value differs from side totals");
}

FlowResult max_flow(const FlowNetwork& net) {
  Solver solver(net);
  while (solver.augment()) {
  }
  FlowResult fr = solver.result();
  verify_flow(net, fr);
  return fr;
}

CutResult min_cut_minimal(const FlowNetwork& net, const FlowResult& fr) {
  Solver solver(net);
  solver.src_flow = fr.source_flow;
  solver.link_flow = fr.edge_flow;
  solver.snk_flow = fr.sink_flow;
  auto seen = solver.reachable_from_source();
  internal_check(!seen[static_cast<std::size_t>(solver.sink_id)],
                 "residual path to sink: flow is not maximum");
  IndexSet suppliers;
  for (int i = 0; i < net.graph.n_suppliers(); ++i) {
    if (seen[1 + i]) suppliers.push_back(i);
  }
  return cut_from_suppliers(net, fr, std::move(suppliers));
}

CutResult min_cut_maximal(const FlowNetwork& net, const FlowResult& fr) {
  Solver solver(net);
  solver.src_flow = fr.source_flow;
  solver.link_flow = fr.edge_flow;
  solver.snk_flow = fr.sink_flow;
  auto to_sink = solver.reaches_sink();
  IndexSet suppliers;
  for (int i = 0; i < net.graph.n_suppliers(); ++i) {
    if (!to_sink[1 + i]) suppliers.push_back(i);
  }
  return cut_from_suppliers(net, fr, std::move(suppliers));
}

namespace {

constexpr int kEnumSupplierLimit = 12;
constexpr int kEnumDemanderLimit = 64;

CutProfile cut_profile_by_enumeration(const BipartiteGraph& graph,
                                      const std::vector<Capacity>& source_caps,
                                      const std::vector<Rational>& sink_caps,
                                      const std::vector<char>& sup_act,
                                      const std::vector<char>& dem_act) {
  // Suppliers with unbounded source arcs sit inside every min-cut.
  std::vector<int> pinned, free_sups;
  for (int i = 0; i < graph.n_suppliers(); ++i) {
    if (!sup_act[i]) continue;
    (source_caps[i].is_unbounded() ? pinned : free_sups).push_back(i);
  }
  std::vector<int> dem_pos(static_cast<std::size_t>(graph.n_demanders()), -1);
  std::vector<int> dems;
  for (int j = 0; j < graph.n_demanders(); ++j) {
    if (dem_act[j]) {
      dem_pos[j] = static_cast<int>(dems.size());
      dems.push_back(j);
    }
  }
  const std::size_t f = free_sups.size();
  std::uint64_t base_mask = 0;
  auto dem_mask_of = [&](int supplier) {
    std::uint64_t mask = 0;
    for (int j : graph.neighbors_of_supplier(supplier)) {
      if (dem_pos[j] >= 0) mask |= std::uint64_t(1) << dem_pos[j];
    }
    return mask;
  };
  for (int i : pinned) base_mask |= dem_mask_of(i);
  std::vector<std::uint64_t> sup_mask(f);
  for (std::size_t k = 0; k < f; ++k) sup_mask[k] = dem_mask_of(free_sups[k]);

  auto demand_sum = [&](std::uint64_t mask) {
    Rational sum;
    while (mask != 0) {
      int bit = std::countr_zero(mask);
      sum += sink_caps[dems[static_cast<std::size_t>(bit)]];
      mask &= mask - 1;
    }
    return sum;
  };

  const std::uint32_t n_masks = std::uint32_t(1) << f;
  std::vector<Rational> cap_sum(n_masks);       // sum of source caps inside X
  std::vector<std::uint64_t> f_mask(n_masks);   // demanders adjacent to X
  f_mask[0] = base_mask;
  Rational total_free_cap;
  for (std::size_t k = 0; k < f; ++k) total_free_cap += source_caps[free_sups[k]].value();

  Rational best;
  std::uint32_t best_and = 0, best_or = 0;
  bool have_best = false;
  for (std::uint32_t x = 0; x < n_masks; ++x) {
    if (x != 0) {
      std::uint32_t low = x & (~x + 1);
      std::uint32_t rest = x & (x - 1);
      int bit = std::countr_zero(low);
      cap_sum[x] = cap_sum[rest] + source_caps[free_sups[static_cast<std::size_t>(bit)]].value();
      f_mask[x] = f_mask[rest] | sup_mask[static_cast<std::size_t>(bit)];
    }
    Rational cap = total_free_cap - cap_sum[x] + demand_sum(f_mask[x]);
    if (!have_best || cap < best) {
      best = cap;
      best_and = best_or = x;
      have_best = true;
    } else if (cap == best) {
      best_and &= x;
      best_or |= x;
    }
  }

  CutProfile out;
  out.min_capacity = best;
  auto to_set = [&](std::uint32_t mask) {
    IndexSet s = pinned;
    for (std::size_t k = 0; k < f; ++k) {
      if (mask & (std::uint32_t(1) << k)) s.push_back(free_sups[k]);
    }
    std::sort(s.begin(), s.end());
    return s;
  };
  out.minimal = to_set(best_and);
  out.maximal = to_set(best_or);
  return out;
}

}  // namespace

CutProfile cut_profile(const BipartiteGraph& graph, const std::vector<Capacity>& source_caps,
                       const std::vector<Rational>& sink_caps,
                       const std::vector<char>& sup_act, const std::vector<char>& dem_act) {
  int n_free = 0, n_dem = 0;
  for (int i = 0; i < graph.n_suppliers(); ++i) {
    if (sup_act[i] && source_caps[i].is_finite()) ++n_free;
  }
  for (int j = 0; j < graph.n_demanders(); ++j) n_dem += dem_act[j] ? 1 : 0;
  if (n_free <= kEnumSupplierLimit && n_dem <= kEnumDemanderLimit) {
    return cut_profile_by_enumeration(graph, source_caps, sink_caps, sup_act, dem_act);
  }

  // Induced subnetwork, then residual-based canonical cuts mapped back.
  std::vector<int> sup_ids, dem_ids;
  std::vector<int> sup_pos(static_cast<std::size_t>(graph.n_suppliers()), -1);
  std::vector<int> dem_pos(static_cast<std::size_t>(graph.n_demanders()), -1);
  for (int i = 0; i < graph.n_suppliers(); ++i) {
    if (sup_act[i]) {
      sup_pos[i] = static_cast<int>(sup_ids.size());
      sup_ids.push_back(i);
    }
  }
  for (int j = 0; j < graph.n_demanders(); ++j) {
    if (dem_act[j]) {
      dem_pos[j] = static_cast<int>(dem_ids.size());
      dem_ids.push_back(j);
    }
  }
  std::vector<std::pair<int, int>> links;
  for (const auto& [i, j] : graph.links()) {
    if (sup_pos[i] >= 0 && dem_pos[j] >= 0) links.emplace_back(sup_pos[i], dem_pos[j]);
  }
  std::vector<Capacity> src;
  std::vector<Rational> snk;
  for (int i : sup_ids) src.push_back(source_caps[i]);
  for (int j : dem_ids) snk.push_back(sink_caps[j]);
  FlowNetwork net(BipartiteGraph(static_cast<int>(sup_ids.size()),
                                 static_cast<int>(dem_ids.size()), std::move(links)),
                  std::move(src), std::move(snk));
  FlowResult fr = max_flow(net);
  CutProfile out;
  out.min_capacity = fr.value;
  for (int i : min_cut_minimal(net, fr).suppliers_in_cut) out.minimal.push_back(sup_ids[i]);
  for (int i : min_cut_maximal(net, fr).suppliers_in_cut) out.maximal.push_back(sup_ids[i]);
  return out;
}

}  // namespace egal
