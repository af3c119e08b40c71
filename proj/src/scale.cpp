#include "boxdim/scale.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "boxdim/errors.hpp"

namespace boxdim {

double Delta::value() const { return static_cast<double>(std::exp(-neg_log())); }

Delta power_delta(int base, int exponent) {
  if (base < 2 || exponent < 1) throw DomainError("power scale needs base >= 2 and exponent >= 1");
  Delta d;
  d.num = 1;
  d.den = pow_big(static_cast<unsigned long long>(base), static_cast<unsigned>(exponent));
  d.text = std::to_string(base) + "^-" + std::to_string(exponent);
  return d;
}

namespace {

std::optional<long> to_long(std::string_view s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

Delta parse_delta(std::string_view text, const Alphabet& alphabet) {
  const std::string original(text);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (const auto caret = text.find('^'); caret != std::string_view::npos) {
    const std::string_view base_text = text.substr(0, caret);
    std::string_view exp_text = text.substr(caret + 1);
    long base = 0;
    if (base_text == "n") {
      base = alphabet.n();
    } else if (base_text == "m") {
      base = alphabet.m();
    } else if (auto b = to_long(base_text)) {
      base = *b;
    } else {
      throw DomainError("bad scale base in '" + original + "'");
    }
    if (exp_text.empty() || exp_text.front() != '-') throw DomainError("scale exponent must be negative in '" + original + "'");
    exp_text.remove_prefix(1);
    const auto e = to_long(exp_text);
    if (!e || *e < 1 || base < 2) throw DomainError("bad scale '" + original + "'");
    Delta d = power_delta(static_cast<int>(base), static_cast<int>(*e));
    d.text = original;
    return d;
  }

  // Decimal mantissa with optional exponent, converted exactly.
  std::string_view mant = text;
  long exp10 = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    if (!exp_part.empty() && exp_part.front() == '+') exp_part.remove_prefix(1);
    const auto x = to_long(exp_part);
    if (!x) throw DomainError("bad scale '" + original + "'");
    exp10 = *x;
    mant = text.substr(0, e);
  }
  BigInt num = 0;
  long frac_digits = 0;
  bool seen_point = false;
  bool any = false;
  for (char c : mant) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      num = num * 10 + (c - '0');
      if (seen_point) ++frac_digits;
      any = true;
    } else {
      throw DomainError("bad scale '" + original + "'");
    }
  }
  if (!any) throw DomainError("bad scale '" + original + "'");
  const long shift = exp10 - frac_digits;
  BigInt den = 1;
  if (shift >= 0) {
    num *= pow_big(10, static_cast<unsigned>(shift));
  } else {
    den = pow_big(10, static_cast<unsigned>(-shift));
  }
  if (num <= 0 || num >= den) throw DomainError("scale must lie in (0, 1), got '" + original + "'");
  const BigInt g = boost::multiprecision::gcd(num, den);
  Delta d;
  d.num = num / g;
  d.den = den / g;
  d.text = original;
  return d;
}

namespace {

// Smallest e >= 1 with base^-e <= num/den, i.e. den <= num * base^e.
int level(const Delta& d, int base) {
  BigInt scaled = d.num * base;
  int e = 1;
  while (scaled < d.den) {
    scaled *= base;
    ++e;
  }
  return e;
}

}  // namespace

ScalePair scale_pair(const Delta& delta, const Alphabet& alphabet) {
  if (delta.num <= 0 || delta.den <= 0 || delta.num >= delta.den) {
    throw DomainError("scale must lie in (0, 1)");
  }
  ScalePair s;
  s.delta = delta;
  s.k = level(delta, alphabet.n());
  s.l = level(delta, alphabet.m());
  return s;
}

ScalePair anchored_scale(int k, const Alphabet& alphabet) {
  return scale_pair(power_delta(alphabet.n(), k), alphabet);
}

}  // namespace boxdim
