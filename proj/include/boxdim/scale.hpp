#pragma once

#include <string>
#include <string_view>

#include "boxdim/alphabet.hpp"
#include "boxdim/bigint.hpp"

namespace boxdim {

/// Covering scale held as an exact positive rational num/den.
struct Delta {
  BigInt num = 1;
  BigInt den = 2;

  /// -log(delta) in extended precision.
  long double neg_log() const { return log_big(den) - log_big(num); }
  double value() const;
  std::string text;  // source form, e.g. "0.1" or "5^-3"
};

/// Exact delta = base^-exponent.
Delta power_delta(int base, int exponent);

/// Parses a decimal ("0.1", "2.5e-3") or an exact power ("n^-k", "m^-l",
/// "4^-7"); the letters resolve against the alphabet's bases.
Delta parse_delta(std::string_view text, const Alphabet& alphabet);

/// delta with its vertical level k and horizontal level l:
/// n^-k <= delta < n^(1-k) and m^-l <= delta < m^(1-l).
struct ScalePair {
  Delta delta;
  int k = 1;
  int l = 1;
};

/// Throws DomainError unless 0 < delta < 1. All comparisons are exact.
ScalePair scale_pair(const Delta& delta, const Alphabet& alphabet);

/// The anchored scale delta = n^-k.
ScalePair anchored_scale(int k, const Alphabet& alphabet);

}  // namespace boxdim
