#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace boxdim {

using BigInt = boost::multiprecision::cpp_int;

/// Natural log of a positive big integer, carried in long double.
/// Returns -inf for zero.
inline long double log_big(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<long double>::infinity();
  const unsigned msb = boost::multiprecision::msb(x);
  constexpr unsigned kKeep = 100;
  if (msb < kKeep) return std::log(x.convert_to<long double>());
  const unsigned shift = msb - kKeep;
  const BigInt head = x >> shift;
  return std::log(head.convert_to<long double>()) + static_cast<long double>(shift) * std::log(2.0L);
}

inline BigInt pow_big(unsigned long long base, unsigned exponent) {
  return boost::multiprecision::pow(BigInt(base), exponent);
}

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace boxdim
