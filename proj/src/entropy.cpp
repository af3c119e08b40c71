#include "boxdim/entropy.hpp"

#include <cmath>

#include "boxdim/errors.hpp"
#include "boxdim/spectral.hpp"

namespace boxdim {

EntropyValue entropy(const DeterministicPresentation& d) {
  const auto live = reachable_states(d, {d.root});
  std::vector<long> local(d.size(), -1);
  for (std::size_t i = 0; i < live.size(); ++i) local[live[i]] = static_cast<long>(i);
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t s : live) {
    for (const auto& [label, t] : d.transitions[s]) entries.emplace_back(local[s], local[t], 1.0);
  }
  const auto n = static_cast<Eigen::Index>(live.size());
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());  // duplicates add up

  const auto est = spectral_radius<double>(a, kPowerTolerance, kPowerIterationCap);
  EntropyValue out;
  out.spectral_radius = est.radius;
  out.residual = est.residual / std::max(1.0, est.radius);
  if (!est.converged || out.residual > kResidualLimit) {
    throw ConvergenceError("power iteration did not converge: residual " + std::to_string(out.residual) +
                           " after " + std::to_string(est.iterations) + " iterations");
  }
  if (est.radius <= 0) {
    out.empty = true;
    out.value = 0;
    return out;
  }
  out.value = std::max(0.0, std::log(est.radius));
  return out;
}

EntropyValue entropy(const Presentation& p, std::size_t state_cap) {
  return entropy(determinize_from(p, VertexSet::all(p.vertex_count()), state_cap));
}

std::vector<ComponentEntropy> component_entropies(const Presentation& p, const Condensation& c,
                                                  std::size_t state_cap) {
  std::vector<ComponentEntropy> table;
  table.reserve(c.size());
  for (const auto& comp : c.components) {
    const Presentation sub = induced(p, comp);
    table.push_back({entropy(sub, state_cap), entropy(project(sub), state_cap)});
  }
  return table;
}

}  // namespace boxdim
