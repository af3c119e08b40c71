#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "boxdim/alphabet.hpp"
#include "boxdim/condensation.hpp"
#include "boxdim/entropy.hpp"

namespace boxdim {

inline constexpr double kTieTolerance = 1e-12;
inline constexpr double kGapMargin = 1e-9;

struct TrivialBounds {
  double lower = 0;
  double upper = 0;
};

/// lower = max{h_pi/log m, h/log n}, upper = h_pi/log m + (h - h_pi)/log n.
/// Throws DomainError when h_pi exceeds h by more than 1e-9.
TrivialBounds trivial_bounds(const EntropyValue& h_sigma, const EntropyValue& h_pi,
                             const Alphabet& alphabet);

/// The mixing formula; numerically the trivial upper bound.
double kp_mixing_formula(const EntropyValue& h_sigma, const EntropyValue& h_pi,
                         const Alphabet& alphabet);

/// One candidate of the component maximisation, 0-based indices.
struct FormulaTerm {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0;
};

struct SourceSinkCertificate {
  enum class Kind { source, sink };
  Kind kind = Kind::source;
  std::size_t component = 0;
};

struct DimensionFlags {
  bool transitive_formula_applies = false;
  bool source_sink_applies = false;
  bool dimension_gap_detected = false;
};

struct DimensionReport {
  double lower_trivial = 0;
  double upper_trivial = 0;
  std::optional<double> box_dimension;
  double kp_formula = 0;
  std::vector<FormulaTerm> formula_terms;
  std::pair<std::size_t, std::size_t> attaining_pair{0, 0};
  /// Every pair within 1e-12 of the maximum, attaining_pair first.
  std::vector<std::pair<std::size_t, std::size_t>> ties;
  DimensionFlags flags;
  std::optional<SourceSinkCertificate> source_sink;
  /// Entropies of the whole shift and of its projection.
  double h_sigma = 0;
  double h_pi = 0;
};

/// max_i [ h_i/log n + max_{j in {i}^+} h_pi_j (1/log m - 1/log n) ].
/// The trivial bounds use h = max_i h_i and h_pi = max_i h_pi_i. Throws
/// DomainError on an empty condensation or a table of the wrong size.
DimensionReport box_dimension_sofic(const std::vector<ComponentEntropy>& table,
                                    const Condensation& c, const Alphabet& alphabet);

/// A source component attaining max h, or a sink component attaining max h_pi.
std::optional<SourceSinkCertificate> source_sink_check(const std::vector<ComponentEntropy>& table,
                                                       const Condensation& c);

/// Sufficient certificate (not an equivalence) that the Hausdorff dimension is
/// strictly below the box dimension: the box value beats the best diagonal
/// term by more than 1e-9.
bool dimension_gap_check(const std::vector<ComponentEntropy>& table, const Condensation& c,
                         const DimensionReport& report);

/// Whole pipeline on a presentation: condensation, entropies, report, flags.
DimensionReport analyse_dimension(const Presentation& p, std::size_t state_cap = kDefaultStateCap);

/// Rounds to 12 significant digits for output.
double round12(double x);

/// {schema, lower, upper, box, kp_formula, terms, attaining, ties, flags, ...};
/// component indices are 1-based.
nlohmann::ordered_json to_json(const DimensionReport& report);

}  // namespace boxdim
