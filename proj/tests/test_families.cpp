#include <doctest.h>

#include <cmath>

#include "boxdim/coded.hpp"
#include "boxdim/dimension.hpp"
#include "boxdim/families.hpp"
#include "support.hpp"

using namespace boxdim;
using boxdim::testing::read_data;

namespace {

// Value j of each symbol under the beta ordering.
std::vector<int> beta_values(const Alphabet& alphabet, const std::vector<Digit>& order) {
  std::vector<int> value(alphabet.size(), -1);
  for (std::size_t j = 0; j < order.size(); ++j) value[*alphabet.find(order[j])] = static_cast<int>(j);
  return value;
}

}  // namespace

TEST_SUITE("families") {

TEST_CASE("integer sets") {
  const IntegerSetSpec s = parse_integer_set("2,3,5+3k");
  CHECK(s.contains(2));
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(4));
  CHECK(s.contains(5));
  CHECK(s.contains(11));
  CHECK_FALSE(s.contains(12));
  CHECK(s.infinite());
  const IntegerSetSpec t = parse_integer_set("4+k");
  CHECK(t.contains(100));
  CHECK_FALSE(t.contains(3));
  CHECK(parse_integer_set("1,7").max() == 7);
  CHECK_THROWS_AS(parse_integer_set("0,2"), Error);
  CHECK_THROWS_AS(parse_integer_set("x"), Error);
}

TEST_CASE("digit sequences") {
  const DigitSequence b = parse_digit_sequence("2,1/0,1");
  CHECK(b.at(1) == 2);
  CHECK(b.at(2) == 1);
  CHECK(b.at(3) == 0);
  CHECK(b.at(4) == 1);
  CHECK(b.at(5) == 0);
  const DigitSequence finite = parse_digit_sequence("1,1,0");
  CHECK(finite.at(3) == 0);
  CHECK(finite.at(40) == 0);
}

TEST_CASE("beta sequence validity") {
  CHECK_FALSE(beta_sequence_problem(parse_digit_sequence("1,1,0"), 2));
  CHECK_FALSE(beta_sequence_problem(parse_digit_sequence("2,1/0,1"), 3));
  CHECK(beta_sequence_problem(parse_digit_sequence("/1,0"), 2));
  CHECK(beta_sequence_problem(parse_digit_sequence("/1"), 2));
  CHECK(beta_sequence_problem(parse_digit_sequence("2/2"), 3));
  CHECK(beta_sequence_problem(parse_digit_sequence("1,1,0"), 3));  // b_1 must be #I - 1
  CHECK(beta_sequence_problem(parse_digit_sequence("1,2"), 2));
}

TEST_CASE("golden-mean beta shift") {
  const GeneratorFamily fam = parse_family(read_data("beta.fam"));
  CHECK(fam.count(1) == 1);
  CHECK(fam.count(2) == 1);
  CHECK(fam.count(3) == 0);
  const auto lc = language_counts(fam, 10);
  const std::vector<int> fibonacci{2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
  for (std::size_t n = 1; n <= 10; ++n) CHECK(lc[n] == fibonacci[n - 1]);
  const auto h = renewal_entropy(fam);
  REQUIRE(h);
  CHECK(std::abs(*h - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-9);
}

TEST_CASE("beta automaton matches enumeration") {
  const Alphabet alphabet(2, 3, {{1, 1}, {1, 2}, {2, 1}});
  const std::vector<Digit> order{{1, 1}, {2, 1}, {1, 2}};
  const auto value = beta_values(alphabet, order);
  for (const char* text : {"2,1/0,1", "2,0,1", "2,2,1/1,0", "2/1"}) {
    const DigitSequence b = parse_digit_sequence(text);
    REQUIRE_FALSE(beta_sequence_problem(b, 3));
    const GeneratorFamily fam = builtin_beta(alphabet, order, b);
    const auto lc = language_counts(fam, 8);
    const auto bc = boundary_counts(fam, 8);
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto words = enumerate_language(fam, n, 2 * n + 8);
      CHECK(lc[n] == words.size());
      CHECK(bc[n] == enumerate_boundary_words(fam, n, 2 * n + 8).size());
      for (const Word& w : words) {
        for (std::size_t s = 0; s < w.size(); ++s) {
          std::vector<int> tail;
          for (std::size_t i = s; i < w.size(); ++i) tail.push_back(value[w[i]]);
          std::vector<int> head;
          for (std::size_t i = 1; i <= tail.size(); ++i) head.push_back(b.at(i));
          CHECK(tail <= head);
        }
      }
    }
  }
}

TEST_CASE("s-gap family") {
  const GeneratorFamily fam = parse_family(read_data("sgap.fam"));
  CHECK(fam.count(1) == 0);
  CHECK(fam.count(2) == 3);
  CHECK(fam.count(5) == 81);
  CHECK(fam.count(6) == 0);
  CHECK(fam.count(8) == 3 * 3 * 3 * 3 * 3 * 3 * 3);
  CHECK(fam.generators(2).size() == 3);
  REQUIRE(fam.projected);
  CHECK(fam.projected->count(5) == 16);
  CHECK(fam.projected->generators(5).size() == 16);
  CHECK_THROWS_AS(builtin_sgap(Alphabet(2, 3, {{1, 1}, {1, 2}}), {1, 1}, parse_integer_set("2")),
                  DomainError);
}

TEST_CASE("finite s-gap agrees with its explicit presentation") {
  const GeneratorFamily fam = parse_family(read_data("sgap_finite.fam"));
  const GrowthRates r = growth_rates(fam, 8, 24);
  const DimensionReport d = analyse_dimension(sgap_presentation(fam));
  CHECK(std::abs(r.h - d.h_sigma) < 1e-6);
  CHECK(std::abs(r.h_pi - d.h_pi) < 1e-6);
  const auto lc = language_counts(fam, 8);
  const auto counts = count_words(determinize(sgap_presentation(fam)), 8);
  for (std::size_t n = 1; n <= 8; ++n) CHECK(lc[n] == counts[n]);
}

TEST_CASE("dimension-drop family") {
  const GeneratorFamily fam = builtin_dimdrop(2, 5);
  const std::vector<int> generators{2, 0, 3, 3, 3, 12, 12, 12, 12, 12, 39, 39};
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(fam.count(n) == generators[n - 1]);
    CHECK(dimdrop_count(n, false) == generators[n - 1]);
  }
  const auto lc = language_counts(fam, 6);
  const std::vector<int> language{6, 28, 111, 412, 1458, 4972};
  for (std::size_t n = 1; n <= 6; ++n) CHECK(lc[n] == language[n - 1]);
  const auto bc = boundary_counts(fam, 6);
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(bc[n] == enumerate_boundary_words(fam, n, n + (std::size_t{1} << n) + 1).size());
  }
  REQUIRE(fam.projected);
  CHECK(fam.projected->count(1) == 2);
  CHECK(fam.projected->count(3) == 1);
  const GeneratorFamily with_empty = builtin_dimdrop(2, 5, true);
  CHECK(with_empty.count(1) == 3);
  CHECK(dimdrop_count(1, true) == 3);
}

TEST_CASE("family file errors") {
  CHECK(is_family_text("family sgap m=2 n=3 marker=(1,1) S=2"));
  CHECK_FALSE(is_family_text("bases 2 3"));
  CHECK_THROWS_AS(parse_family("family nope m=2 n=3"), ParseError);
  CHECK_THROWS_AS(parse_family("family sgap m=2 n=3 S=2"), ParseError);
  CHECK_THROWS_AS(parse_family("family beta m=2 n=3 order=(1,1),(2,2) b=/1,0"), Error);
  const GeneratorFamily fam = parse_family(read_data("explicit.fam"));
  CHECK(fam.max_length == 2u);
}

}  // TEST_SUITE
