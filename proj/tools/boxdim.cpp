// Command-line front end: parse a presentation or family file, analyse, report.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "boxdim/boxcount.hpp"
#include "boxdim/dimension.hpp"
#include "boxdim/errors.hpp"
#include "boxdim/families.hpp"

using namespace boxdim;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitBudget = 2;
constexpr int kExitVerify = 3;

struct RunConfig {
  std::string command;
  std::string input_path;
  std::string format;
  std::string scales;
  std::size_t state_cap = kDefaultStateCap;
  std::size_t enum_cap = kDefaultEnumerationCap;
  bool include_empty_w = false;
  bool dump_condensation = false;
  double tolerance = 0.05;
};

class VerifyFailed : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int k = std::stoi(text);
      return {k, k};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ParseError("--scales expects k_min..k_max, got '" + text + "'", 0);
  }
}

std::string fixed(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json entropy_json(const EntropyValue& h) {
  return {{"value", round12(h.value)},
          {"spectral_radius", round12(h.spectral_radius)},
          {"residual", h.residual},
          {"empty", h.empty}};
}

json series_json(const SeriesValue& v) {
  switch (v.status) {
    case SeriesValue::Status::divergent: return {{"status", "divergent"}, {"value", "inf"}};
    case SeriesValue::Status::finite:
      return {{"status", "finite"},
              {"lower", round12(static_cast<double>(v.lower))},
              {"upper", round12(static_cast<double>(v.upper))},
              {"terms", v.terms}};
    case SeriesValue::Status::inconclusive: break;
  }
  return {{"status", "inconclusive"}, {"partial_sum", round12(static_cast<double>(v.lower))}, {"terms", v.terms}};
}

void emit(const RunConfig& cfg, const json& j, const std::string& text) {
  if (cfg.format == "text") {
    std::cout << text;
  } else {
    std::cout << j.dump(2) << '\n';
  }
}

// ---------------------------------------------------------------- presentations

int run_components(const RunConfig& cfg, const Presentation& p) {
  const Condensation c = irreducible_components(p);
  if (cfg.dump_condensation) {
    std::cout << condensation_dump(p, c);
    return 0;
  }
  json j;
  j["schema"] = 1;
  json comps = json::array();
  std::ostringstream text;
  text << c.size() << " irreducible components\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    json names = json::array(), up = json::array(), down = json::array();
    text << "G" << i + 1 << ":";
    for (std::size_t v : c.components[i]) {
      names.push_back(p.vertex_names()[v]);
      text << ' ' << p.vertex_names()[v];
    }
    text << "  up {";
    for (std::size_t u : c.up_sets[i]) {
      up.push_back(u + 1);
      text << ' ' << u + 1;
    }
    text << " }  down {";
    for (std::size_t d : c.down_sets[i]) {
      down.push_back(d + 1);
      text << ' ' << d + 1;
    }
    text << " }\n";
    comps.push_back({{"index", i + 1}, {"vertices", names}, {"up", up}, {"down", down},
                     {"source", c.is_source(i)}, {"sink", c.is_sink(i)}});
  }
  json edges = json::array();
  for (const auto& [a, b] : c.dag_edges) edges.push_back({a + 1, b + 1});
  j["components"] = comps;
  j["dag_edges"] = edges;
  emit(cfg, j, text.str());
  return 0;
}

int run_entropy(const RunConfig& cfg, const Presentation& p) {
  const EntropyValue h = entropy(p, cfg.state_cap);
  const EntropyValue hp = entropy(project(p), cfg.state_cap);
  const Condensation c = irreducible_components(p);
  const auto table = component_entropies(p, c, cfg.state_cap);
  json j;
  j["schema"] = 1;
  j["h_sigma"] = entropy_json(h);
  j["h_pi"] = entropy_json(hp);
  json rows = json::array();
  std::ostringstream text;
  text << "h(Sigma)    = " << fixed(h.value) << "\nh(pi Sigma) = " << fixed(hp.value) << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    rows.push_back({{"component", i + 1}, {"h", entropy_json(table[i].h)}, {"h_pi", entropy_json(table[i].h_pi)}});
    text << "G" << i + 1 << ": h = " << fixed(table[i].h.value) << "  h_pi = " << fixed(table[i].h_pi.value) << '\n';
  }
  j["components"] = rows;
  emit(cfg, j, text.str());
  return 0;
}

int run_dimension(const RunConfig& cfg, const Presentation& p) {
  const DimensionReport r = analyse_dimension(p, cfg.state_cap);
  std::ostringstream text;
  text << "box dimension  " << fixed(*r.box_dimension) << "\ntrivial bounds [" << fixed(r.lower_trivial) << ", "
       << fixed(r.upper_trivial) << "]\nattained at    (" << r.attaining_pair.first + 1 << ", "
       << r.attaining_pair.second + 1 << ")\ndimension gap  " << (r.flags.dimension_gap_detected ? "yes" : "no")
       << " (sufficient certificate, not equivalence)\n";
  emit(cfg, to_json(r), text.str());
  return 0;
}

DimensionEstimate estimate_for(const RunConfig& cfg, const Presentation& p, const std::string& default_range) {
  const auto [lo, hi] = parse_range(cfg.scales.empty() ? default_range : cfg.scales);
  return dimension_estimate(p, anchored_scales(p.alphabet(), lo, hi), {cfg.state_cap, cfg.enum_cap});
}

json points_json(const DimensionEstimate& est) {
  json pts = json::array();
  for (const auto& pt : est.points) {
    pts.push_back({{"k", pt.scale.k},
                   {"l", pt.scale.l},
                   {"delta", pt.scale.delta.text},
                   {"count", to_string(pt.count)},
                   {"count_log", round12(static_cast<double>(pt.log_count))},
                   {"ratio_estimate", round12(pt.ratio)}});
  }
  return pts;
}

int run_boxcount(const RunConfig& cfg, const Presentation& p) {
  const auto est = estimate_for(cfg, p, "1..10");
  if (cfg.format == "json") {
    json j;
    j["schema"] = 1;
    j["points"] = points_json(est);
    j["slope"] = round12(est.slope);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << scale_table_csv(est);
  }
  return 0;
}

int run_verify(const RunConfig& cfg, const Presentation& p) {
  const DimensionReport r = analyse_dimension(p, cfg.state_cap);
  const double box = *r.box_dimension;

  // Exact oracle agreement at small scales.
  json exact = json::array();
  bool exact_ok = true;
  for (int k = 1; k <= 3; ++k) {
    const ScalePair s = anchored_scale(k, p.alphabet());
    try {
      const BigInt fast = count_approx_squares(p, s.k, s.l, {cfg.state_cap, cfg.enum_cap}).count;
      const BigInt slow = count_approx_squares_bruteforce(p, s.k, s.l, cfg.enum_cap).count;
      exact.push_back({{"k", s.k}, {"l", s.l}, {"count", to_string(fast)}, {"agrees", fast == slow}});
      exact_ok = exact_ok && fast == slow;
    } catch (const BudgetExceeded&) {
      break;
    }
  }

  const auto est = estimate_for(cfg, p, "10..30");
  const double margin = std::abs(est.points.back().ratio - box);
  bool sandwich = true;
  for (const auto& pt : est.points) {
    sandwich = sandwich && pt.ratio >= r.lower_trivial - 0.01 - 1.0 / pt.scale.k &&
               pt.ratio <= r.upper_trivial + 0.01 + 1.0 / pt.scale.k;
  }
  const bool pass = exact_ok && margin <= cfg.tolerance;

  json j;
  j["schema"] = 1;
  j["box"] = round12(box);
  j["exact_oracle"] = exact;
  j["points"] = points_json(est);
  j["slope"] = round12(est.slope);
  j["margin"] = round12(margin);
  j["tolerance"] = cfg.tolerance;
  j["within_trivial_bounds"] = sandwich;
  j["pass"] = pass;
  std::ostringstream text;
  text << (pass ? "PASS" : "FAIL") << "  box " << fixed(box) << "  estimate " << fixed(est.points.back().ratio)
       << " at k=" << est.points.back().scale.k << "  margin " << fixed(margin) << "  exact oracle "
       << (exact_ok ? "agrees" : "DISAGREES") << '\n';
  emit(cfg, j, text.str());
  if (!pass) throw VerifyFailed("verification failed");
  return 0;
}

// ---------------------------------------------------------------- families

json rates_json(const GrowthRates& r) {
  return {{"h", round12(r.h)},
          {"h_pi", round12(r.h_pi)},
          {"ell", round12(r.ell)},
          {"ell_pi", round12(r.ell_pi)},
          {"window", {r.window_lo, r.window_hi}},
          {"method", r.method == GrowthRates::Method::closed_form ? "closed_form" : "extrapolated"}};
}

int run_coded_check(const RunConfig& cfg, const GeneratorFamily& fam) {
  const CriterionReport rep = fgeq1_check(fam);
  json j;
  j["schema"] = 1;
  j["family"] = fam.name;
  j["rates"] = rates_json(rep.rates);
  j["f_ell"] = series_json(rep.f_ell);
  j["f_pi_ell_pi"] = series_json(rep.f_pi_ell_pi);
  j["unique_decomposition"] = rep.decomposition.pass;
  j["projected_unique_decomposition"] = rep.projected_decomposition.pass;
  j["certified"] = rep.certified;
  j["box"] = rep.box_dimension ? json(round12(*rep.box_dimension)) : json(nullptr);
  j["notes"] = rep.notes;
  std::ostringstream text;
  text << fam.name << ": " << (rep.certified ? "certified" : "not certified") << '\n'
       << "h = " << fixed(rep.rates.h) << "  h_pi = " << fixed(rep.rates.h_pi) << "  ell = " << fixed(rep.rates.ell)
       << "  ell_pi = " << fixed(rep.rates.ell_pi) << '\n';
  if (rep.box_dimension) text << "box dimension " << fixed(*rep.box_dimension) << '\n';
  for (const auto& n : rep.notes) text << "  " << n << '\n';
  emit(cfg, j, text.str());
  return 0;
}

int run_family_boxcount(const RunConfig& cfg, const GeneratorFamily& fam) {
  const auto [lo, hi] = parse_range(cfg.scales.empty() ? "1..6" : cfg.scales);
  DimensionEstimate est;
  for (const ScalePair& s : anchored_scales(fam.alphabet, lo, hi)) {
    ScalePoint pt;
    pt.scale = s;
    pt.count = coded_box_trend(fam, s.k, s.l, {cfg.state_cap, cfg.enum_cap}).count;
    pt.log_count = log_big(pt.count);
    pt.ratio = static_cast<double>(pt.log_count / s.delta.neg_log());
    est.points.push_back(std::move(pt));
  }
  if (cfg.format == "json") {
    json j;
    j["schema"] = 1;
    j["family"] = fam.name;
    j["points"] = points_json(est);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << scale_table_csv(est);
  }
  return 0;
}

int run_family_verify(const RunConfig& cfg, const GeneratorFamily& fam) {
  // The factor automaton against brute-force enumeration of the coded language.
  constexpr std::size_t kDepth = 6;
  const auto counts = language_counts(fam, kDepth, cfg.state_cap);
  json rows = json::array();
  bool pass = true;
  for (std::size_t n = 1; n <= kDepth; ++n) {
    const std::size_t gcap = n + (std::size_t{1} << n) + 2;
    const auto words = enumerate_language(fam, n, gcap, cfg.enum_cap);
    const bool ok = BigInt(words.size()) == counts[n];
    pass = pass && ok;
    rows.push_back({{"n", n}, {"automaton", to_string(counts[n])}, {"enumerated", words.size()}, {"agrees", ok}});
  }
  json j;
  j["schema"] = 1;
  j["family"] = fam.name;
  j["language_counts"] = rows;
  j["pass"] = pass;
  emit(cfg, j, std::string(pass ? "PASS" : "FAIL") + "  factor automaton vs enumeration up to n=6\n");
  if (!pass) throw VerifyFailed("verification failed");
  return 0;
}

int dispatch(const RunConfig& cfg) {
  const std::string text = read_file(cfg.input_path);
  if (is_family_text(text)) {
    const GeneratorFamily fam = parse_family(text, cfg.include_empty_w);
    if (cfg.command == "coded-check") return run_coded_check(cfg, fam);
    if (cfg.command == "boxcount") return run_family_boxcount(cfg, fam);
    if (cfg.command == "verify") return run_family_verify(cfg, fam);
    throw ParseError("command '" + cfg.command + "' needs a presentation file", 0);
  }
  const Presentation p = parse_presentation(text);
  if (cfg.command == "components") return run_components(cfg, p);
  if (cfg.command == "entropy") return run_entropy(cfg, p);
  if (cfg.command == "dimension") return run_dimension(cfg, p);
  if (cfg.command == "boxcount") return run_boxcount(cfg, p);
  if (cfg.command == "verify") return run_verify(cfg, p);
  throw ParseError("command '" + cfg.command + "' needs a generator family file", 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Box dimensions of (xm, xn)-invariant sets from symbolic presentations"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"components", "irreducible components with their up and down sets"},
      {"entropy", "h(Sigma), h(pi Sigma) and the per-component table"},
      {"dimension", "closed-form box dimension report"},
      {"boxcount", "exact approximate-square counts as a CSV scale table"},
      {"coded-check", "f(ell) > 1 criterion for a generator family"},
      {"verify", "cross-check the closed form against the box-count oracle"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", cfg.input_path, "presentation or family file")->required();
    sub->add_option("--format", cfg.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--scales", cfg.scales, "k_min..k_max for anchored scales n^-k");
    sub->add_option("--state-cap", cfg.state_cap, "determinization state cap")->check(CLI::PositiveNumber);
    sub->add_option("--enum-cap", cfg.enum_cap, "brute-force enumeration cap")->check(CLI::PositiveNumber);
    sub->add_flag("--include-empty-w", cfg.include_empty_w, "dimension-drop family: allow w to be empty");
    sub->add_option("--tolerance", cfg.tolerance, "verify: allowed |estimate - closed form|");
    if (name == "components") {
      sub->add_flag("--dump-condensation", cfg.dump_condensation, "print the condensation DAG as a graph file");
    }
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  if (cfg.format.empty()) cfg.format = cfg.command == "boxcount" ? "csv" : "json";

  try {
    return dispatch(cfg);
  } catch (const VerifyFailed&) {
    return kExitVerify;
  } catch (const BudgetExceeded& e) {
    std::cerr << "boxdim: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ConvergenceError& e) {
    std::cerr << "boxdim: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "boxdim: " << e.what() << '\n';
    return kExitInput;
  }
}
