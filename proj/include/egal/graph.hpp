#pragma once

#include <utility>
#include <vector>

#include "egal/errors.hpp"

namespace egal {

// Index sets are kept sorted ascending and duplicate free.
using IndexSet = std::vector<int>;

bool is_sorted_set(const IndexSet& s);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
bool set_contains(const IndexSet& s, int value);
bool is_subset(const IndexSet& a, const IndexSet& b);

// Bipartite compatibility graph between suppliers (0..n_suppliers-1) and
// demanders (0..n_demanders-1).
class BipartiteGraph {
 public:
  BipartiteGraph() : n_suppliers_(0), n_demanders_(0) {}
  BipartiteGraph(int n_suppliers, int n_demanders, std::vector<std::pair<int, int>> links);

  int n_suppliers() const { return n_suppliers_; }
  int n_demanders() const { return n_demanders_; }
  const std::vector<std::pair<int, int>>& links() const { return links_; }
  bool has_link(int supplier, int demander) const;

  const IndexSet& neighbors_of_supplier(int i) const { return supplier_adj_[i]; }
  const IndexSet& neighbors_of_demander(int j) const { return demander_adj_[j]; }

  // f(T): demanders adjacent to any supplier in T.
  IndexSet demanders_adjacent_to(const IndexSet& suppliers) const;
  // g(C): suppliers adjacent to any demander in C.
  IndexSet suppliers_adjacent_to(const IndexSet& demanders) const;

  // Same graph with the two sides swapped.
  BipartiteGraph transposed() const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.n_suppliers_ == b.n_suppliers_ && a.n_demanders_ == b.n_demanders_ &&
           a.links_ == b.links_;
  }

 private:
  int n_suppliers_;
  int n_demanders_;
  std::vector<std::pair<int, int>> links_;  // sorted, unique
  std::vector<IndexSet> supplier_adj_;
  std::vector<IndexSet> demander_adj_;
};

}  // namespace egal
