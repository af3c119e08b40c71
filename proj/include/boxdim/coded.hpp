#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "boxdim/alphabet.hpp"
#include "boxdim/bigint.hpp"
#include "boxdim/determinize.hpp"
#include "boxdim/presentation.hpp"

namespace boxdim {

/// Growth information on #C_n with proven constants:
///   #C_n <= upper_constant * n^degree * e^(rate n)  for every n >= 1,
///   #C_n >= recurrent_constant * e^(rate n)         for infinitely many n
/// (the second only when recurrent_constant > 0). `rate` is the exact limsup.
struct CountEnvelope {
  double rate = 0;
  double upper_constant = 1;
  double degree = 0;
  double recurrent_constant = 0;
};

/// Finite automaton whose follower language from `roots` agrees with the
/// factor language of the coded shift for every length <= exact_up_to.
struct FactorAutomaton {
  Presentation graph;
  std::vector<std::size_t> roots;
  /// Vertices where a path may stand at the base vertex of the loop graph,
  /// i.e. right after a complete generator.
  std::vector<bool> at_boundary;
  std::optional<std::size_t> exact_up_to;  // nullopt: exact at every length
};

/// A countable generator set C for a coded shift.
///
/// Counts are exact big integers. The enumerator returns C_n sorted; for an
/// infinite family it is only expected to be called for small n.
struct GeneratorFamily {
  std::string name;
  Alphabet alphabet;
  LabelKind kind = LabelKind::digit;

  std::function<BigInt(std::size_t)> count;
  std::function<std::vector<Word>(std::size_t)> generators;
  /// Optional fast log #C_n (-inf when zero), used by series evaluation.
  std::function<long double(std::size_t)> log_count;
  /// Longest generator, when the family is finite.
  std::optional<std::size_t> max_length;
  std::optional<CountEnvelope> envelope;

  /// Optional closed form for #L_n and its exponential rate.
  std::function<BigInt(std::size_t)> affix_count;
  std::optional<double> affix_rate;

  /// Entropies known in closed form, overriding the renewal computation.
  std::optional<double> declared_h;
  bool unique_decomposition_asserted = false;

  /// pi C, when available.
  std::shared_ptr<const GeneratorFamily> projected;

  /// Factor automaton exact up to at least the requested length.
  std::function<FactorAutomaton(std::size_t)> factor_automaton;

  std::size_t symbol_count() const { return alphabet.symbol_count(kind); }
};

/// A finite family from explicit words, deduplicated. Its projection and loop
/// graph are derived.
GeneratorFamily explicit_family(const Alphabet& alphabet, LabelKind kind, std::vector<Word> words,
                                std::string name = "explicit");

/// Enumerator-backed projection of a family: pi C_n is the set of distinct
/// projections of C_n. Envelope and finiteness carry over.
std::shared_ptr<const GeneratorFamily> project_family(const GeneratorFamily& fam);

/// Loop graph of a finite family: one base vertex, one cycle per generator.
FactorAutomaton loop_graph(const GeneratorFamily& fam);

struct UniqueDecompositionResult {
  bool pass = true;
  std::optional<Word> witness;  // shortest, then lexicographically least
  std::size_t checked_up_to = 0;
};

/// Counts factorisations of every concatenation of length <= up_to and
/// reports the first word with two. Throws BudgetExceeded past `cap` words.
UniqueDecompositionResult unique_decomposition_check(const GeneratorFamily& fam, std::size_t up_to,
                                                     std::size_t cap = kDefaultEnumerationCap);

inline constexpr std::size_t kDecompositionCheckLength = 12;

/// #G_1..#G_up_to by the renewal recurrence (index 0 holds #G_0 = 1). Runs
/// unique_decomposition_check up to min(up_to, 12) first unless the family
/// asserts unique decomposition; throws DomainError carrying the witness.
std::vector<BigInt> g_counts(const GeneratorFamily& fam, std::size_t up_to);

/// #L_1..#L_up_to (index 0 holds 1): distinct words that are a prefix or a
/// suffix of some generator. Uses the closed form when declared, else needs a
/// finite family.
std::vector<BigInt> affix_counts(const GeneratorFamily& fam, std::size_t up_to);

/// Value of f(x) = sum_n #C_n e^(-n x).
struct SeriesValue {
  enum class Status { finite, divergent, inconclusive };
  Status status = Status::inconclusive;
  /// Certified enclosure lower <= f(x) <= upper when finite. When
  /// inconclusive, `lower` is still a valid lower bound (partial sum).
  long double lower = 0;
  long double upper = 0;
  std::size_t terms = 0;

  /// Never true for an inconclusive evaluation.
  bool certainly_above(long double t) const {
    return status == Status::divergent || (status == Status::finite && lower > t);
  }
};

inline constexpr long double kSeriesTail = 1e-12L;
inline constexpr std::size_t kSeriesTermCap = 2'000'000;

/// Evaluates f (or f_pi when `projected`). Divergence is only reported from a
/// declared envelope: x below the rate, or x at the rate with a recurrent
/// lower bound. Without an envelope an infinite family is inconclusive.
SeriesValue f_eval(const GeneratorFamily& fam, double x, bool projected = false);

/// The renewal root: inf{x >= rate : f(x) <= 1}, which is the growth rate of
/// #G_n under unique decomposition. nullopt when f cannot be bracketed.
std::optional<double> renewal_entropy(const GeneratorFamily& fam);

struct GrowthRates {
  enum class Method { closed_form, extrapolated };
  double h = 0;
  double h_pi = 0;
  double ell = 0;
  double ell_pi = 0;
  std::size_t window_lo = 0;
  std::size_t window_hi = 0;
  Method method = Method::closed_form;
};

/// Closed forms when every rate has one (declared entropy, renewal root,
/// declared affix rate, finite family); otherwise max over the top half of the
/// window of (1/n) log count. Throws DomainError for windows with fewer than
/// 8 values.
GrowthRates growth_rates(const GeneratorFamily& fam, std::size_t window_lo, std::size_t window_hi);

struct CriterionReport {
  GrowthRates rates;
  SeriesValue f_ell;
  SeriesValue f_pi_ell_pi;
  UniqueDecompositionResult decomposition;
  UniqueDecompositionResult projected_decomposition;
  bool certified = false;
  std::optional<double> box_dimension;
  std::vector<std::string> notes;
};

/// Checks f(ell) > 1 and f_pi(ell_pi) > 1 on certified enclosures. Certifies
/// only when both hold and both families pass (or assert) unique
/// decomposition; the box dimension is then the trivial upper bound.
CriterionReport fgeq1_check(const GeneratorFamily& fam, std::size_t window_lo = 8,
                            std::size_t window_hi = 24);

/// Brute-force Sigma_n for a coded shift, built from generators of length at
/// most `generator_cap`: factors of concatenations. Exact when every
/// generator that can contribute a length-n factor is within the cap.
std::vector<Word> enumerate_language(const GeneratorFamily& fam, std::size_t n,
                                     std::size_t generator_cap,
                                     std::size_t cap = kDefaultEnumerationCap);

/// Brute-force I_n: words s g with s a suffix (possibly empty or whole) of a
/// generator and g a concatenation, from generators up to `generator_cap`.
std::vector<Word> enumerate_boundary_words(const GeneratorFamily& fam, std::size_t n,
                                           std::size_t generator_cap,
                                           std::size_t cap = kDefaultEnumerationCap);

/// Distinct concatenations of generators, #G_0..#G_up_to, by enumeration.
/// Valid with or without unique decomposition.
std::vector<BigInt> concatenation_counts(const GeneratorFamily& fam, std::size_t up_to,
                                         std::size_t cap = kDefaultEnumerationCap);

/// #Sigma_0..#Sigma_up_to through the factor automaton.
std::vector<BigInt> language_counts(const GeneratorFamily& fam, std::size_t up_to,
                                    std::size_t state_cap = kDefaultStateCap);

/// #I_0..#I_up_to through the factor automaton.
std::vector<BigInt> boundary_counts(const GeneratorFamily& fam, std::size_t up_to,
                                    std::size_t state_cap = kDefaultStateCap);

}  // namespace boxdim
