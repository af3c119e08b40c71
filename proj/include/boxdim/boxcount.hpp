#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "boxdim/bigint.hpp"
#include "boxdim/coded.hpp"
#include "boxdim/determinize.hpp"
#include "boxdim/presentation.hpp"
#include "boxdim/scale.hpp"

namespace boxdim {

/// Number of approximate squares at levels (k, l): pairs (i in Sigma_k,
/// distinct column word of length l - k following i).
struct ApproxSquareCount {
  int k = 0;
  int l = 0;
  BigInt count;
};

struct BoxcountOptions {
  std::size_t state_cap = kDefaultStateCap;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
};

/// Exact count through the follower-set DP. Falls back to brute force when a
/// state cap is hit and the enumeration budget allows.
ApproxSquareCount count_approx_squares(const Presentation& p, int k, int l,
                                       const BoxcountOptions& options = {});

/// Same, counting words read from `root` only.
ApproxSquareCount count_approx_squares_from(const Presentation& p, const VertexSet& root, int k,
                                            int l, const BoxcountOptions& options = {});

/// Reference count: enumerate Sigma_l and group by (prefix_k, pi(suffix)).
ApproxSquareCount count_approx_squares_bruteforce(const Presentation& p, int k, int l,
                                                  std::size_t cap = kDefaultEnumerationCap);

/// Grouped count over an explicit word list of equal length l.
BigInt grouped_count(const Alphabet& alphabet, LabelKind kind, const std::vector<Word>& words, int k);

struct ScalePoint {
  ScalePair scale;
  BigInt count;
  long double log_count = 0;
  double ratio = 0;  // log count / -log delta
};

struct DimensionEstimate {
  std::vector<ScalePoint> points;
  /// Least-squares slope of log count against -log delta over the top half
  /// of the scales (all of them when that leaves fewer than two).
  double slope = 0;
};

/// Throws DomainError when scales is empty or not sorted by decreasing delta.
DimensionEstimate dimension_estimate(const Presentation& p, const std::vector<ScalePair>& scales,
                                     const BoxcountOptions& options = {});

/// Anchored scales n^-k for k in [k_min, k_max].
std::vector<ScalePair> anchored_scales(const Alphabet& alphabet, int k_min, int k_max);

/// CSV with header k,l,delta,count_log,ratio_estimate.
std::string scale_table_csv(const DimensionEstimate& estimate);

/// Approximate-square count of a coded shift: through the factor automaton
/// when one is exact to length l, else by brute-force language enumeration.
ApproxSquareCount coded_box_trend(const GeneratorFamily& fam, int k, int l,
                                  const BoxcountOptions& options = {});

/// Brute-force variant from generators up to `generator_cap`.
ApproxSquareCount coded_box_trend_bruteforce(const GeneratorFamily& fam, int k, int l,
                                             std::size_t generator_cap,
                                             std::size_t cap = kDefaultEnumerationCap);

}  // namespace boxdim
