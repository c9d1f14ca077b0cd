#include "egal/instance.hpp"

namespace egal {

OneSidedInstance::OneSidedInstance(BipartiteGraph g, std::vector<Rational> peaks,
                                   std::vector<Rational> demands, std::vector<Rational> lo,
                                   std::vector<Capacity> hi)
    : graph(std::move(g)), s(std::move(peaks)), d(std::move(demands)), lower(std::move(lo)),
      upper(std::move(hi)) {
  const auto n = static_cast<std::size_t>(graph.n_suppliers());
  const auto m = static_cast<std::size_t>(graph.n_demanders());
  if (s.size() != n || lower.size() != n || upper.size() != n || d.size() != m) {
    throw ValidationError("instance vector sizes do not match the graph");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (lower[i].sign() < 0) throw ValidationError("negative lower bound");
    if (lower[i] > s[i]) throw ValidationError("lower bound above peak");
    if (upper[i].is_finite() && s[i] > upper[i].value()) {
      throw ValidationError("peak above upper bound");
    }
  }
  for (const auto& dj : d) {
    if (dj.sign() < 0) throw ValidationError("negative demand");
  }
}

TwoSidedInstance::TwoSidedInstance(BipartiteGraph g, std::vector<Rational> peaks_s,
                                   std::vector<Rational> peaks_d)
    : graph(std::move(g)), s(std::move(peaks_s)), d(std::move(peaks_d)) {
  if (s.size() != static_cast<std::size_t>(graph.n_suppliers()) ||
      d.size() != static_cast<std::size_t>(graph.n_demanders())) {
    throw ValidationError("instance vector sizes do not match the graph");
  }
  for (const auto& v : s) {
    if (v.sign() < 0) throw ValidationError("negative supplier peak");
  }
  for (const auto& v : d) {
    if (v.sign() < 0) throw ValidationError("negative demander peak");
  }
}

}  // namespace egal
