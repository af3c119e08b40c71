// One line per acceptance criterion. With an argument such as "AC5" only that
// criterion runs. Exit status is 0 exactly when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "boxdim/boxcount.hpp"
#include "boxdim/coded.hpp"
#include "boxdim/dimension.hpp"
#include "boxdim/families.hpp"
#include "support.hpp"
#include "toys.hpp"

using namespace boxdim;
using boxdim::testing::load_presentation;
using boxdim::testing::random_presentation;
using boxdim::testing::read_data;

namespace {

constexpr double kExact = 1e-9;
constexpr double kSofic = 1e-6;
constexpr double kVereJones = 1e-6;
constexpr double kEstimate = 0.05;
constexpr double kFastSeconds = 1.0;
constexpr double kEstimateSeconds = 30.0;
constexpr double kDropEntropySlack = 0.02;
constexpr double kDropEpsilon = 0.15;
constexpr int kDropTrendFrom = 13;
constexpr int kDropTrendTo = 24;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " failed: " << what << ';';
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double x, int digits = 12) {
  std::ostringstream out;
  out << std::setprecision(digits) << x;
  return out.str();
}

// Root in (0, hi) of an increasing function of y = e^-x crossing 1.
double bisect_y(const std::function<double(double)>& f, double hi) {
  double lo = 0;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (f(mid) > 1 ? hi : lo) = mid;
  }
  return -std::log((lo + hi) / 2);
}

GeneratorFamily sgap_on_four(const std::string& s) {
  return builtin_sgap(Alphabet(2, 3, {{1, 1}, {2, 1}, {2, 2}, {2, 3}}), {1, 1}, parse_integer_set(s));
}

std::vector<Presentation> irreducible_suite() {
  std::mt19937 rng(2024);
  std::vector<Presentation> out;
  for (int i = 0; i < 50; ++i) out.push_back(random_presentation(rng, true));
  return out;
}

void ac1(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const Presentation p = load_presentation("figure1.pres");
  const DimensionReport r = analyse_dimension(p);
  const auto table = component_entropies(p, irreducible_components(p));
  const double elapsed = seconds_since(start);
  const double closed = std::log(2.0) * (1 / std::log(5.0) + 1 / std::log(3.0));
  o.require(r.box_dimension && std::abs(*r.box_dimension - closed) < kExact, "box dimension");
  const double expected[3][2] = {{std::log(3.0), std::log(3.0)}, {std::log(4.0), 0}, {std::log(2.0), std::log(2.0)}};
  o.require(table.size() == 3, "three components");
  for (std::size_t i = 0; i < table.size() && i < 3; ++i) {
    o.require(std::abs(table[i].h.value - expected[i][0]) < kExact, "h of G" + std::to_string(i + 1));
    o.require(std::abs(table[i].h_pi.value - expected[i][1]) < kExact, "h_pi of G" + std::to_string(i + 1));
  }
  o.require(elapsed < kFastSeconds, "runtime");
  o.detail << " box=" << fmt(r.box_dimension.value_or(-1)) << " closed=" << fmt(closed)
           << " time=" << fmt(elapsed, 3) << "s";
}

void ac2(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const DimensionReport r = analyse_dimension(load_presentation("intro.pres"));
  const double elapsed = seconds_since(start);
  const double kp = 1 + (std::log(3.0) - std::log(2.0)) / std::log(4.0);
  o.require(r.box_dimension && std::abs(*r.box_dimension - 1) < kExact, "box = 1");
  o.require(std::abs(r.kp_formula - kp) < kExact, "mixing formula value");
  o.require(r.box_dimension && *r.box_dimension < r.kp_formula - kExact, "strictly below");
  o.require(elapsed < kFastSeconds, "runtime");
  o.detail << " box=" << fmt(r.box_dimension.value_or(-1)) << " kp=" << fmt(r.kp_formula)
           << " time=" << fmt(elapsed, 3) << "s";
}

void ac3(Outcome& o) {
  double worst = 0;
  for (const Presentation& p : irreducible_suite()) {
    const DimensionReport r = analyse_dimension(p);
    worst = std::max(worst, std::abs(r.box_dimension.value_or(-1) - r.kp_formula));
  }
  o.require(worst < kExact, "box equals mixing formula");
  o.detail << " presentations=50 max_diff=" << fmt(worst, 3);
}

void ac4(Outcome& o) {
  std::mt19937 rng(4);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const DimensionReport r = analyse_dimension(random_presentation(rng));
    const double box = r.box_dimension.value_or(-1);
    worst = std::max({worst, r.lower_trivial - box, box - r.upper_trivial});
  }
  o.require(worst <= kExact, "lower <= box <= upper");
  o.detail << " presentations=200 worst_violation=" << fmt(worst, 3);
}

void ac5(Outcome& o) {
  std::vector<Presentation> suite{load_presentation("figure1.pres"), load_presentation("intro.pres")};
  std::mt19937 rng(5);
  // at most four digits keeps Sigma_10 within the brute-force budget
  for (int i = 0; i < 20; ++i) suite.push_back(random_presentation(rng, false, 4));
  std::size_t compared = 0;
  std::size_t mismatches = 0;
  for (const Presentation& p : suite) {
    for (int l = 1; l <= 10; ++l) {
      std::vector<Word> words = enumerate_words(p, static_cast<std::size_t>(l));
      for (int k = 1; k <= l; ++k) {
        ++compared;
        if (count_approx_squares(p, k, l).count != grouped_count(p.alphabet(), p.kind(), words, k)) ++mismatches;
      }
    }
  }
  o.require(mismatches == 0, "exact equality");
  o.detail << " presentations=" << suite.size() << " pairs=" << compared << " mismatches=" << mismatches;
}

void ac6(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(6);
  std::vector<Digit> all;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 5; ++b) all.push_back({a, b});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(7);
  std::sort(all.begin(), all.end());
  const Alphabet alphabet(3, 5, all);
  std::vector<Edge> edges;
  for (Symbol s = 0; s < alphabet.size(); ++s) edges.push_back({0, 0, s});
  const Presentation full(alphabet, LabelKind::digit, {"v"}, edges);
  const double r = static_cast<double>(alphabet.occupied_columns().size());
  const double n_digits = static_cast<double>(alphabet.size());
  const double full_closed = std::log(r) / std::log(3.0) + std::log(n_digits / r) / std::log(5.0);
  const Presentation fig = load_presentation("figure1.pres");
  const double fig_closed = *analyse_dimension(fig).box_dimension;
  const auto full_est = dimension_estimate(full, anchored_scales(alphabet, 1, 30));
  const auto fig_est = dimension_estimate(fig, anchored_scales(fig.alphabet(), 1, 30));
  const double elapsed = seconds_since(start);
  const double full_margin = std::abs(full_est.points.back().ratio - full_closed);
  const double fig_margin = std::abs(fig_est.points.back().ratio - fig_closed);
  o.require(full_margin <= kEstimate, "full shift estimate");
  o.require(fig_margin <= kEstimate, "figure 1 estimate");
  o.require(elapsed < kEstimateSeconds, "runtime");
  o.detail << " full(r=" << r << ",N=" << n_digits << ") margin=" << fmt(full_margin, 4)
           << " figure1 margin=" << fmt(fig_margin, 4) << " time=" << fmt(elapsed, 3) << "s";
}

void ac7(Outcome& o) {
  const GeneratorFamily fam = parse_family(read_data("sgap.fam"));
  const CriterionReport rep = fgeq1_check(fam);
  // S = {2,3} u {5+3k}: #C_s = 3^(s-1), #pi C_s = 2^(s-1)
  const double h = bisect_y([](double y) { return 3 * y * y + 9 * y * y * y + 81 * std::pow(y, 5) / (1 - 27 * y * y * y); },
                            1.0 / 3);
  const double h_pi = bisect_y([](double y) { return 2 * y * y + 4 * y * y * y + 16 * std::pow(y, 5) / (1 - 8 * y * y * y); },
                               1.0 / 2);
  const double bd = h_pi / std::log(3.0) + (h - h_pi) / std::log(4.0);
  o.require(rep.certified, "certified");
  o.require(rep.f_ell.status == SeriesValue::Status::divergent, "f(ell) = inf");
  o.require(rep.f_pi_ell_pi.status == SeriesValue::Status::divergent, "f_pi(ell_pi) = inf");
  o.require(rep.rates.method == GrowthRates::Method::closed_form, "closed-form rates");
  o.require(std::abs(rep.rates.h - h) < kExact && std::abs(rep.rates.h_pi - h_pi) < kExact, "rates");
  o.require(rep.box_dimension && std::abs(*rep.box_dimension - bd) < kExact, "bd formula");

  const GeneratorFamily finite = parse_family(read_data("sgap_finite.fam"));
  const CriterionReport frep = fgeq1_check(finite);
  const DimensionReport sofic = analyse_dimension(sgap_presentation(finite));
  const double diff = std::abs(frep.box_dimension.value_or(-1) - sofic.box_dimension.value_or(-2));
  o.require(frep.certified && diff < kSofic, "finite S agrees with sofic path");
  o.detail << " h=" << fmt(rep.rates.h) << " h_pi=" << fmt(rep.rates.h_pi)
           << " bd=" << fmt(rep.box_dimension.value_or(-1)) << " finite_diff=" << fmt(diff, 3);
}

void ac8(Outcome& o) {
  struct Case {
    std::string name;
    GeneratorFamily fam;
    double h;
  };
  std::vector<Case> cases;
  const GeneratorFamily sgap = parse_family(read_data("sgap.fam"));
  cases.push_back({"sgap", sgap,
                   bisect_y([](double y) { return 3 * y * y + 9 * y * y * y + 81 * std::pow(y, 5) / (1 - 27 * y * y * y); },
                            1.0 / 3)});
  cases.push_back({"sgap{2,3}", parse_family(read_data("sgap_finite.fam")),
                   bisect_y([](double y) { return 3 * y * y + 9 * y * y * y; }, 1)});
  cases.push_back({"sgap{1+k}", sgap_on_four("1+k"), std::log(4.0)});
  const GeneratorFamily one_two =
      builtin_sgap(Alphabet(2, 3, {{1, 1}, {2, 1}, {2, 2}}), {1, 1}, parse_integer_set("1,2"));
  cases.push_back({"sgap{1,2}", one_two, std::log(2.0)});
  int index = 0;
  for (const auto& t : boxdim::testing::toy_families()) {
    cases.push_back({"toy" + std::to_string(++index), boxdim::testing::toy(t.words), t.h});
  }
  long double worst = 0;
  for (const Case& c : cases) {
    const SeriesValue f = f_eval(c.fam, c.h);
    const bool ok = f.status == SeriesValue::Status::finite && f.upper <= 1 + kVereJones;
    o.require(ok, c.name);
    if (f.status == SeriesValue::Status::finite) worst = std::max(worst, f.upper);
    const auto root = renewal_entropy(c.fam);
    o.require(root && std::abs(*root - c.h) < kExact, c.name + " renewal root");
  }
  o.detail << " families=" << cases.size() << " max_f(h)=" << fmt(static_cast<double>(worst));
}

void ac9(Outcome& o) {
  const GeneratorFamily fam = builtin_dimdrop(2, 5);
  const auto sigma = language_counts(fam, 20);
  const auto boundary = boundary_counts(fam, 20);
  std::vector<double> rate;
  for (std::size_t n = 14; n <= 20; ++n) rate.push_back(static_cast<double>(log_big(sigma[n])) / static_cast<double>(n));
  bool increasing = true;
  for (std::size_t i = 1; i < rate.size(); ++i) increasing = increasing && rate[i] > rate[i - 1];
  const double ceiling = std::log(3.0) + kDropEntropySlack;
  bool below = true;
  for (double x : rate) below = below && x <= ceiling;
  // growth of #I_n over the window 10..20, so a constant factor is allowed
  const double boundary_rate = static_cast<double>(log_big(boundary[20]) - log_big(boundary[10])) / 10;
  const double boundary_limit = (1 + kDropEpsilon) * std::log(2.0);
  o.require(increasing, "(1/n) log #Sigma_n increasing on 14..20");
  o.require(below, "(1/n) log #Sigma_n <= log 3 + 0.02");
  o.require(boundary_rate <= boundary_limit, "#I_n grows at most like 2^(n(1+eps))");

  EntropyValue h;
  h.value = std::log(3.0);
  EntropyValue h_pi;
  h_pi.value = std::log(2.0);
  const double kp = kp_mixing_formula(h, h_pi, fam.alphabet);
  double highest = 0;
  std::ostringstream trend;
  // upper half of the reachable scales k = 1..24; the first few are transient
  for (const ScalePair& s : anchored_scales(fam.alphabet, kDropTrendFrom, kDropTrendTo)) {
    const auto c = coded_box_trend(fam, s.k, s.l);
    const double ratio = static_cast<double>(log_big(c.count) / s.delta.neg_log());
    highest = std::max(highest, ratio);
    trend << (s.k == kDropTrendFrom ? "" : ",") << fmt(ratio, 6);
  }
  o.require(highest < kp, "coded_box_trend below mixing formula");
  o.detail << " trend_margin=" << fmt(kp - highest, 4);
  o.detail << " rate14..20=" << fmt(rate.front(), 4) << ".." << fmt(rate.back(), 4)
           << " #I_n rate=" << fmt(boundary_rate, 4) << " limit=" << fmt(boundary_limit, 4)
           << " trend(k=" << kDropTrendFrom << ".." << kDropTrendTo << ")=" << trend.str()
           << " kp=" << fmt(kp, 6);
}

void ac10(Outcome& o) {
  const Alphabet alphabet(2, 3, {{1, 1}, {1, 2}, {2, 1}});
  const std::vector<Digit> order{{1, 1}, {2, 1}, {1, 2}};
  std::vector<int> value(alphabet.size());
  for (std::size_t j = 0; j < order.size(); ++j) value[*alphabet.find(order[j])] = static_cast<int>(j);
  std::size_t words_checked = 0;
  for (const char* text : {"2,1/0,1", "2,0,1", "2,2,1/1,0", "2/1", "2,1,2"}) {
    const DigitSequence b = parse_digit_sequence(text);
    o.require(!beta_sequence_problem(b, 3), std::string("valid ") + text);
    const GeneratorFamily fam = builtin_beta(alphabet, order, b);
    for (std::size_t n = 1; n <= 12; ++n) {
      for (const Word& w : enumerate_language(fam, n, 2 * n + 8)) {
        ++words_checked;
        for (std::size_t s = 0; s < w.size(); ++s) {
          for (std::size_t i = s; i < w.size(); ++i) {
            const int x = value[w[i]];
            const int y = b.at(i - s + 1);
            if (x < y) break;
            if (x > y) {
              o.require(false, std::string(text) + " word above b");
              break;
            }
          }
        }
      }
    }
    for (std::size_t k = 1; k <= 12; ++k) {
      std::set<Word> prefixes;
      for (std::size_t len = k + 1; len <= 13; ++len) {
        for (const Word& g : fam.generators(len)) prefixes.insert(Word(g.begin(), g.begin() + static_cast<long>(k)));
      }
      o.require(prefixes.size() <= 1, std::string(text) + " unique prefix at k=" + std::to_string(k));
    }
  }
  o.detail << " sequences=5 words=" << words_checked;
}

void ac11(Outcome& o) {
  std::mt19937 rng(11);
  std::size_t mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const Presentation p = random_presentation(rng, false, 4);
    const auto counts = count_words(determinize(p), 10);
    for (std::size_t t = 1; t <= 10; ++t) {
      if (counts[t] != enumerate_words(p, t).size()) ++mismatches;
    }
  }
  o.require(mismatches == 0, "exact equality");
  o.detail << " presentations=100 lengths=1..10 mismatches=" << mismatches;
}

void ac12(Outcome& o) {
  const auto gap = [](const Presentation& p) {
    const Condensation c = irreducible_components(p);
    const auto table = component_entropies(p, c);
    return dimension_gap_check(table, c, box_dimension_sofic(table, c, p.alphabet()));
  };
  o.require(gap(load_presentation("figure1.pres")), "figure 1 gap detected");
  std::vector<Presentation> suite = irreducible_suite();
  suite.push_back(load_presentation("golden_mean.pres"));
  suite.push_back(load_presentation("carpet.pres"));
  suite.push_back(sgap_presentation(parse_family(read_data("sgap_finite.fam"))));
  std::size_t flagged = 0;
  for (const Presentation& p : suite) {
    if (irreducible_components(p).size() != 1) continue;
    if (gap(p)) ++flagged;
  }
  o.require(flagged == 0, "no gap on irreducible presentations");
  o.detail << " irreducible=" << suite.size() << " flagged=" << flagged;
}

struct Criterion {
  std::string id;
  std::string title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"AC1", "figure 1 reproduction", ac1},
      {"AC2", "disjoint full shifts below the mixing formula", ac2},
      {"AC3", "transitive collapse", ac3},
      {"AC4", "sandwich", ac4},
      {"AC5", "exact oracle agreement", ac5},
      {"AC6", "asymptotic oracle agreement", ac6},
      {"AC7", "s-gap certification", ac7},
      {"AC8", "f(h) <= 1", ac8},
      {"AC9", "dimension-drop properties", ac9},
      {"AC10", "beta-shift words and prefixes", ac10},
      {"AC11", "determinization counts", ac11},
      {"AC12", "dimension-gap certificate", ac12},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && c.id != only) continue;
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << ' ' << c.title << ':' << o.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
