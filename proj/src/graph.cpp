#include "egal/graph.hpp"

#include <algorithm>

namespace egal {

bool is_sorted_set(const IndexSet& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i - 1] >= s[i]) return false;
  }
  return true;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const IndexSet& s, int value) {
  return std::binary_search(s.begin(), s.end(), value);
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

BipartiteGraph::BipartiteGraph(int n_suppliers, int n_demanders,
                               std::vector<std::pair<int, int>> links)
    : n_suppliers_(n_suppliers), n_demanders_(n_demanders), links_(std::move(links)) {
  if (n_suppliers_ < 0 || n_demanders_ < 0) {
    throw ValidationError("negative side size in bipartite graph");
  }
  std::sort(links_.begin(), links_.end());
  if (std::adjacent_find(links_.begin(), links_.end()) != links_.end()) {
    throw ValidationError("duplicate link in bipartite graph");
  }
  supplier_adj_.assign(static_cast<std::size_t>(n_suppliers_), {});
  demander_adj_.assign(static_cast<std::size_t>(n_demanders_), {});
  for (const auto& [i, j] : links_) {
    if (i < 0 || i >= n_suppliers_ || j < 0 || j >= n_demanders_) {
      throw ValidationError("link endpoint out of range");
    }
    supplier_adj_[i].push_back(j);
    demander_adj_[j].push_back(i);
  }
  // links_ is sorted, so every adjacency list comes out sorted as well.
}

bool BipartiteGraph::has_link(int supplier, int demander) const {
  return std::binary_search(links_.begin(), links_.end(), std::make_pair(supplier, demander));
}

IndexSet BipartiteGraph::demanders_adjacent_to(const IndexSet& suppliers) const {
  std::vector<char> seen(static_cast<std::size_t>(n_demanders_), 0);
  for (int i : suppliers) {
    for (int j : supplier_adj_[i]) seen[j] = 1;
  }
  IndexSet out;
  for (int j = 0; j < n_demanders_; ++j) {
    if (seen[j]) out.push_back(j);
  }
  return out;
}

IndexSet BipartiteGraph::suppliers_adjacent_to(const IndexSet& demanders) const {
  std::vector<char> seen(static_cast<std::size_t>(n_suppliers_), 0);
  for (int j : demanders) {
    for (int i : demander_adj_[j]) seen[i] = 1;
  }
  IndexSet out;
  for (int i = 0; i < n_suppliers_; ++i) {
    if (seen[i]) out.push_back(i);
  }
  return out;
}

BipartiteGraph BipartiteGraph::transposed() const {
  std::vector<std::pair<int, int>> flipped;
  flipped.reserve(links_.size());
  for (const auto& [i, j] : links_) flipped.emplace_back(j, i);
  return BipartiteGraph(n_demanders_, n_suppliers_, std::move(flipped));
}

}  // namespace egal
