#include "boxdim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "boxdim/errors.hpp"

namespace boxdim {

namespace {

constexpr double kEntropySlack = 1e-9;

double inv_log(int base) { return 1.0 / std::log(static_cast<double>(base)); }

}  // namespace

TrivialBounds trivial_bounds(const EntropyValue& h_sigma, const EntropyValue& h_pi,
                             const Alphabet& alphabet) {
  if (h_pi.value > h_sigma.value + kEntropySlack) {
    throw DomainError("projected entropy " + std::to_string(h_pi.value) + " exceeds entropy " +
                      std::to_string(h_sigma.value));
  }
  const double lm = inv_log(alphabet.m()), ln = inv_log(alphabet.n());
  TrivialBounds b;
  b.lower = std::max(h_pi.value * lm, h_sigma.value * ln);
  b.upper = h_pi.value * lm + (h_sigma.value - h_pi.value) * ln;
  return b;
}

double kp_mixing_formula(const EntropyValue& h_sigma, const EntropyValue& h_pi, const Alphabet& alphabet) {
  return trivial_bounds(h_sigma, h_pi, alphabet).upper;
}

std::optional<SourceSinkCertificate> source_sink_check(const std::vector<ComponentEntropy>& table,
                                                       const Condensation& c) {
  if (table.size() != c.size() || c.size() == 0) return std::nullopt;
  double h = 0, hp = 0;
  for (const auto& t : table) {
    h = std::max(h, t.h.value);
    hp = std::max(hp, t.h_pi.value);
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.is_source(i) && table[i].h.value >= h - kEntropySlack) {
      return SourceSinkCertificate{SourceSinkCertificate::Kind::source, i};
    }
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.is_sink(i) && table[i].h_pi.value >= hp - kEntropySlack) {
      return SourceSinkCertificate{SourceSinkCertificate::Kind::sink, i};
    }
  }
  return std::nullopt;
}

DimensionReport box_dimension_sofic(const std::vector<ComponentEntropy>& table, const Condensation& c,
                                    const Alphabet& alphabet) {
  if (c.size() == 0) throw DomainError("presentation has no irreducible component");
  if (table.size() != c.size()) throw DomainError("entropy table does not match the condensation");
  const double lm = inv_log(alphabet.m()), ln = inv_log(alphabet.n());

  DimensionReport r;
  EntropyValue h, hp;
  for (const auto& t : table) {
    if (t.h.value > h.value) h = t.h;
    if (t.h_pi.value > hp.value) hp = t.h_pi;
  }
  const auto bounds = trivial_bounds(h, hp, alphabet);
  r.lower_trivial = bounds.lower;
  r.upper_trivial = bounds.upper;
  r.kp_formula = bounds.upper;
  r.h_sigma = h.value;
  r.h_pi = hp.value;

  double best = -1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j : c.up_sets[i]) {
      const double v = table[i].h.value * ln + table[j].h_pi.value * (lm - ln);
      r.formula_terms.push_back({i, j, v});
      best = std::max(best, v);
    }
  }
  for (const auto& t : r.formula_terms) {
    if (t.value >= best - kTieTolerance) r.ties.push_back({t.i, t.j});
  }
  r.attaining_pair = r.ties.front();
  r.box_dimension = best;

  r.flags.transitive_formula_applies = c.size() == 1;
  r.source_sink = source_sink_check(table, c);
  r.flags.source_sink_applies = r.source_sink.has_value();
  r.flags.dimension_gap_detected = dimension_gap_check(table, c, r);
  return r;
}

bool dimension_gap_check(const std::vector<ComponentEntropy>& table, const Condensation& c,
                         const DimensionReport& report) {
  if (!report.box_dimension || table.size() != c.size()) return false;
  double diagonal = -1;
  for (const auto& t : report.formula_terms) {
    if (t.i == t.j) diagonal = std::max(diagonal, t.value);
  }
  return *report.box_dimension > diagonal + kGapMargin;
}

DimensionReport analyse_dimension(const Presentation& p, std::size_t state_cap) {
  const Condensation c = irreducible_components(p);
  const auto table = component_entropies(p, c, state_cap);
  DimensionReport r = box_dimension_sofic(table, c, p.alphabet());
  const EntropyValue h = entropy(p, state_cap);
  const EntropyValue hp = entropy(project(p), state_cap);
  const auto bounds = trivial_bounds(h, hp, p.alphabet());
  r.lower_trivial = bounds.lower;
  r.upper_trivial = bounds.upper;
  r.kp_formula = bounds.upper;
  r.h_sigma = h.value;
  r.h_pi = hp.value;
  return r;
}

double round12(double x) {
  if (!std::isfinite(x) || x == 0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::stod(buf);
}

nlohmann::ordered_json to_json(const DimensionReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = 1;
  j["lower"] = round12(r.lower_trivial);
  j["upper"] = round12(r.upper_trivial);
  j["box"] = r.box_dimension ? ordered_json(round12(*r.box_dimension)) : ordered_json(nullptr);
  j["kp_formula"] = round12(r.kp_formula);
  j["h_sigma"] = round12(r.h_sigma);
  j["h_pi"] = round12(r.h_pi);
  ordered_json terms = ordered_json::array();
  for (const auto& t : r.formula_terms) {
    terms.push_back({{"i", t.i + 1}, {"j", t.j + 1}, {"value", round12(t.value)}});
  }
  j["terms"] = terms;
  j["attaining"] = {r.attaining_pair.first + 1, r.attaining_pair.second + 1};
  ordered_json ties = ordered_json::array();
  for (const auto& [a, b] : r.ties) ties.push_back({a + 1, b + 1});
  j["ties"] = ties;
  j["flags"] = {{"transitive_formula_applies", r.flags.transitive_formula_applies},
                {"source_sink_applies", r.flags.source_sink_applies},
                {"dimension_gap_detected", r.flags.dimension_gap_detected}};
  if (r.source_sink) {
    j["source_sink"] = {{"kind", r.source_sink->kind == SourceSinkCertificate::Kind::source ? "source" : "sink"},
                        {"component", r.source_sink->component + 1}};
  } else {
    j["source_sink"] = nullptr;
  }
  j["dimension_gap_note"] = "sufficient certificate, not equivalence";
  return j;
}

}  // namespace boxdim
