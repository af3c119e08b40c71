#include <doctest.h>

#include <cmath>
#include <functional>

#include "boxdim/boxcount.hpp"
#include "boxdim/dimension.hpp"
#include "boxdim/families.hpp"
#include "support.hpp"

using namespace boxdim;
using boxdim::testing::load_presentation;
using boxdim::testing::random_presentation;

TEST_SUITE("boxcount") {

TEST_CASE("frozen brute-force counts") {
  const Presentation fig = load_presentation("figure1.pres");
  CHECK(count_approx_squares(fig, 1, 2).count == 25);
  CHECK(count_approx_squares(fig, 2, 4).count == 217);
  CHECK(count_approx_squares(fig, 4, 8).count == 16513);
  CHECK(count_approx_squares(fig, 3, 9).count == 29027);
  const Presentation intro = load_presentation("intro.pres");
  CHECK(count_approx_squares(intro, 2, 4).count == 25);
  CHECK(count_approx_squares(intro, 3, 6).count == 91);
  CHECK(count_approx_squares(intro, 5, 10).count == 1267);
}

TEST_CASE("fast count equals brute force on random presentations") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const Presentation p = random_presentation(rng);
    for (int l = 1; l <= 7; ++l) {
      for (int k = 1; k <= l; ++k) {
        CHECK(count_approx_squares(p, k, l).count == count_approx_squares_bruteforce(p, k, l).count);
      }
    }
  }
}

TEST_CASE("counts are monotone and sandwiched") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const Presentation p = random_presentation(rng);
    const Presentation q = project(p);
    for (int l = 2; l <= 7; ++l) {
      const BigInt words_l = enumerate_words(p, static_cast<std::size_t>(l)).size();
      const BigInt columns_l = enumerate_words(q, static_cast<std::size_t>(l)).size();
      for (int k = 1; k <= l; ++k) {
        const BigInt c = count_approx_squares(p, k, l).count;
        CHECK(c <= words_l);
        CHECK(c >= columns_l);
        CHECK(c >= BigInt(enumerate_words(p, static_cast<std::size_t>(k)).size()));
        CHECK(count_approx_squares(p, k, l + 1).count >= c);
        if (k < l) CHECK(count_approx_squares(p, k + 1, l).count >= c);
      }
    }
  }
}

TEST_CASE("full shift on a digit set counts N^k r^(l-k)") {
  const Alphabet alphabet(3, 5, {{1, 1}, {1, 4}, {2, 2}, {3, 5}, {3, 1}});
  std::vector<Edge> edges;
  for (Symbol s = 0; s < alphabet.size(); ++s) edges.push_back({0, 0, s});
  const Presentation p(alphabet, LabelKind::digit, {"v"}, edges);
  for (int l = 1; l <= 12; ++l) {
    for (int k = 1; k <= l; ++k) {
      CHECK(count_approx_squares(p, k, l).count ==
            pow_big(5, static_cast<unsigned>(k)) * pow_big(3, static_cast<unsigned>(l - k)));
    }
  }
}

TEST_CASE("estimates approach the closed form") {
  const Presentation p = load_presentation("figure1.pres");
  const DimensionEstimate e = dimension_estimate(p, anchored_scales(p.alphabet(), 5, 30));
  const double closed = *analyse_dimension(p).box_dimension;
  CHECK(std::abs(e.points.back().ratio - closed) < 0.05);
  for (std::size_t i = 1; i < e.points.size(); ++i) CHECK(e.points[i].count > e.points[i - 1].count);
  const std::string csv = scale_table_csv(e);
  CHECK(csv.rfind("k,l,delta,count_log,ratio_estimate\n", 0) == 0);
  CHECK_THROWS_AS(dimension_estimate(p, {}), DomainError);
}

TEST_CASE("root-restricted counts") {
  const Presentation p = load_presentation("figure1.pres");
  const BigInt from_all = count_approx_squares_from(p, VertexSet::all(p.vertex_count()), 3, 6).count;
  CHECK(from_all == count_approx_squares(p, 3, 6).count);
  const BigInt from_sink = count_approx_squares_from(p, VertexSet::single(p.vertex_count(), 2), 3, 6).count;
  CHECK(from_sink == 8 * 8);  // 2^k words, 2^(l-k) column tails
}

TEST_CASE("coded counts agree with brute force") {
  // generator lengths that can still contribute a new length-l factor
  struct Case {
    GeneratorFamily fam;
    std::function<std::size_t(int)> cap;
  };
  const std::vector<Case> cases{
      {builtin_dimdrop(2, 5), [](int l) { return static_cast<std::size_t>(l) + (std::size_t{1} << l) + 1; }},
      {parse_family(boxdim::testing::read_data("sgap.fam")), [](int l) { return static_cast<std::size_t>(l) + 4; }},
      {parse_family(boxdim::testing::read_data("beta.fam")), [](int l) { return static_cast<std::size_t>(l) + 2; }},
  };
  for (const Case& c : cases) {
    for (int l = 1; l <= 6; ++l) {
      for (int k = 1; k <= l; ++k) {
        CHECK(coded_box_trend(c.fam, k, l).count == coded_box_trend_bruteforce(c.fam, k, l, c.cap(l)).count);
      }
    }
  }
}

TEST_CASE("count bounds and the diagonal") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    const Presentation p = random_presentation(rng);
    const auto digits = static_cast<unsigned long long>(p.alphabet().size());
    const auto m = static_cast<unsigned long long>(p.alphabet().m());
    for (int l = 1; l <= 8; ++l) {
      CHECK(count_approx_squares(p, l, l).count == enumerate_words(p, static_cast<std::size_t>(l)).size());
      for (int k = 1; k <= l; ++k) {
        const BigInt c = count_approx_squares(p, k, l).count;
        CHECK(c >= 1);
        CHECK(c <= pow_big(digits, static_cast<unsigned>(k)) * pow_big(m, static_cast<unsigned>(l - k)));
      }
    }
  }
}

TEST_CASE("full-shift counts multiply across scale splits") {
  const Alphabet alphabet(2, 3, {{1, 1}, {1, 3}, {2, 2}});
  std::vector<Edge> edges;
  for (Symbol s = 0; s < alphabet.size(); ++s) edges.push_back({0, 0, s});
  const Presentation p(alphabet, LabelKind::digit, {"v"}, edges);
  for (int k1 = 1; k1 <= 4; ++k1)
    for (int l1 = k1; l1 <= 6; ++l1)
      for (int k2 = 1; k2 <= 4; ++k2)
        for (int l2 = k2; l2 <= 6; ++l2) {
          CHECK(count_approx_squares(p, k1 + k2, l1 + l2).count ==
                count_approx_squares(p, k1, l1).count * count_approx_squares(p, k2, l2).count);
        }
}

TEST_CASE("estimates sit in the trivial bounds up to an O(log k / k) offset") {
  // At finite k the ratio carries the rounding of l and polynomial factors
  // of reducible shifts, so a flat slack does not hold; the offset below
  // shrinks to zero.
  std::mt19937 rng(44);
  for (int trial = 0; trial < 60; ++trial) {
    const Presentation p = random_presentation(rng);
    const DimensionReport r = analyse_dimension(p);
    const double log_n = std::log(double(p.alphabet().n()));
    const double base = std::log(double(p.alphabet().size())) + std::log(double(p.alphabet().m()));
    const double vertices = double(p.vertex_count());
    for (const ScalePoint& pt : dimension_estimate(p, anchored_scales(p.alphabet(), 1, 30)).points) {
      const double k = pt.scale.k;
      const double offset = (base + vertices * std::log(k + 1)) / (k * log_n);
      CHECK(pt.ratio >= r.lower_trivial - offset);
      CHECK(pt.ratio <= r.upper_trivial + offset);
    }
  }
}

TEST_CASE("finite s-gap counts match the explicit presentation") {
  const GeneratorFamily fam = parse_family(boxdim::testing::read_data("sgap_finite.fam"));
  const Presentation p = sgap_presentation(fam);
  for (int l = 1; l <= 8; ++l)
    for (int k = 1; k <= l; ++k) CHECK(coded_box_trend(fam, k, l).count == count_approx_squares(p, k, l).count);
}

TEST_CASE("single-symbol generator counts one square") {
  const GeneratorFamily fam = explicit_family(Alphabet::full(2, 3), LabelKind::digit, {{4}});
  for (int l = 1; l <= 6; ++l)
    for (int k = 1; k <= l; ++k) CHECK(coded_box_trend(fam, k, l).count == 1);
}

TEST_CASE("dimension-drop trend stays between 1 and the upper bound at deep scales") {
  const GeneratorFamily fam = builtin_dimdrop(2, 5);
  const double upper = 1 + (std::log(3.0) - std::log(2.0)) / std::log(5.0);
  for (const ScalePair& s : anchored_scales(fam.alphabet, 8, 16)) {
    const double ratio = static_cast<double>(log_big(coded_box_trend(fam, s.k, s.l).count) / s.delta.neg_log());
    CHECK(ratio >= 1);
    CHECK(ratio < upper);
  }
}

}  // TEST_SUITE
