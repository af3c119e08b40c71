#pragma once

#include <cstddef>
#include <vector>

#include "boxdim/condensation.hpp"
#include "boxdim/determinize.hpp"
#include "boxdim/presentation.hpp"

namespace boxdim {

inline constexpr double kPowerTolerance = 1e-13;
inline constexpr double kResidualLimit = 1e-12;
inline constexpr int kPowerIterationCap = 100'000;

/// Topological entropy in natural-log units.
struct EntropyValue {
  double value = 0;            // log(spectral_radius), or 0 when empty
  double spectral_radius = 0;
  double residual = 0;
  bool empty = false;
};

/// log of the spectral radius of the label-count matrix of the deterministic
/// automaton, restricted to states reachable from its root. Throws
/// ConvergenceError when the power-iteration residual stays above 1e-12.
EntropyValue entropy(const DeterministicPresentation& d);

/// Determinizes first; throws BudgetExceeded past `state_cap`.
EntropyValue entropy(const Presentation& p, std::size_t state_cap = kDefaultStateCap);

struct ComponentEntropy {
  EntropyValue h;     // h(Sigma_{G_i})
  EntropyValue h_pi;  // h(pi Sigma_{G_i})
};

/// Entropy of each component's induced sub-presentation and of its projection.
std::vector<ComponentEntropy> component_entropies(const Presentation& p, const Condensation& c,
                                                  std::size_t state_cap = kDefaultStateCap);

}  // namespace boxdim
