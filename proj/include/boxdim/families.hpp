#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boxdim/coded.hpp"

namespace boxdim {

/// A set of positive integers: finitely many members plus an optional
/// arithmetic tail {start + step k : k >= 0}.
struct IntegerSetSpec {
  std::vector<std::size_t> finite;
  std::optional<std::size_t> tail_start;
  std::size_t tail_step = 1;

  bool contains(std::size_t s) const;
  bool empty() const { return finite.empty() && !tail_start; }
  bool infinite() const { return tail_start.has_value(); }
  /// Largest member of a finite set.
  std::size_t max() const;
  std::string text() const;
};

/// Parses "2,3,5+3k" (a trailing "a+bk" term is the tail; "a+k" means step 1).
IntegerSetSpec parse_integer_set(std::string_view text);

/// Generalised S-gap family: generators w marker with w in (I \ {marker})^(s-1)
/// for s in S, so #C_s = (#I - 1)^(s-1). The marker's column must not be used
/// by any other digit. The projection is the S-gap family on columns.
GeneratorFamily builtin_sgap(const Alphabet& alphabet, Digit marker, const IntegerSetSpec& s);

/// Default digit set for an S-gap file without a digits list: the marker plus
/// every digit of Delta_{m,n} outside the marker's column.
Alphabet sgap_default_alphabet(int m, int n, Digit marker);

/// Eventually periodic digit sequence b_1 b_2 ...: preperiod then period
/// repeated forever. A finite expansion has period (0).
struct DigitSequence {
  std::vector<int> preperiod;
  std::vector<int> period;
  int at(std::size_t i) const;  // 1-based
  std::string text() const;
};

/// Parses "2,1/0,1" (preperiod/period) or "1,1,0" (finite, zero tail).
DigitSequence parse_digit_sequence(std::string_view text);

/// Strict shift-maximality: sigma^k(b) < b for every k >= 1, with
/// #I - 1 = b_1 and every b_i <= #I - 1. Returns the reason on failure.
std::optional<std::string> beta_sequence_problem(const DigitSequence& b, std::size_t q);

/// beta-shift family over the ordered digit list `order` (order[j] codes
/// the value j): generators b_1..b_{n-1} j for 0 <= j < b_n, so #C_n = b_n.
GeneratorFamily builtin_beta(const Alphabet& alphabet, const std::vector<Digit>& order,
                             const DigitSequence& b);

/// The six-digit dimension-drop family on Delta_{m,n}:
///   A=(1,1), B=(2,1), P=(1,2), Omega={(1,3),(1,4),(1,5)},
///   C = {A} u {B} u {w P^k : w in Omega*, k >= 2^|w|},
/// with w = empty excluded unless `include_empty_w`.
GeneratorFamily builtin_dimdrop(int m, int n, bool include_empty_w = false);

/// #{(w, k)} generator count of the dimension-drop family, by direct summation.
BigInt dimdrop_count(std::size_t length, bool include_empty_w);

/// Explicit finite presentation of an S-gap family with finite S (loop graph
/// on the generators), for sofic cross-checks.
Presentation sgap_presentation(const GeneratorFamily& sgap);

/// Parses a family file:
///   family sgap m=3 n=5 marker=(1,1) S=2,3,5+3k [digits=(1,1),(2,2)...]
///   family beta m=2 n=3 order=(1,1),(2,1) b=1,1/0
///   family dimdrop m=2 n=5
///   family explicit m=2 n=3 [kind=column]
///   (1,1)(2,3)          # one generator per line
/// `include_empty_w` applies to dimdrop. Throws ParseError.
GeneratorFamily parse_family(std::string_view text, bool include_empty_w = false);

/// True when the text's first token is "family".
bool is_family_text(std::string_view text);

}  // namespace boxdim
