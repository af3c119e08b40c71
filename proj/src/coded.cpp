#include "boxdim/coded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "boxdim/entropy.hpp"
#include "boxdim/errors.hpp"

namespace boxdim {

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Symbol s : w) {
      h ^= s;
      h *= 0x100000001b3ull;
    }
    return h ^ w.size();
  }
};

using WordSet = std::unordered_set<Word, WordHash>;

std::vector<Word> sorted(const WordSet& set) {
  std::vector<Word> out(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

long double log_count_of(const GeneratorFamily& fam, std::size_t n) {
  if (fam.log_count) return fam.log_count(n);
  return log_big(fam.count(n));
}

const GeneratorFamily& projected_or_self(const GeneratorFamily& fam) {
  return fam.projected ? *fam.projected : fam;
}

void check_budget(std::size_t size, std::size_t cap, const char* what) {
  if (size > cap) {
    throw BudgetExceeded(std::string(what) + " exceeds the enumeration cap of " + std::to_string(cap));
  }
}

}  // namespace

GeneratorFamily explicit_family(const Alphabet& alphabet, LabelKind kind, std::vector<Word> words,
                                std::string name) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  if (words.empty()) throw DomainError("a family needs at least one generator");
  const std::size_t ns = alphabet.symbol_count(kind);
  auto by_length = std::make_shared<std::map<std::size_t, std::vector<Word>>>();
  std::size_t longest = 0;
  for (const Word& w : words) {
    if (w.empty()) throw DomainError("generators must be nonempty");
    for (Symbol s : w)
      if (s >= ns) throw DomainError("generator symbol outside the alphabet");
    (*by_length)[w.size()].push_back(w);
    longest = std::max(longest, w.size());
  }

  GeneratorFamily fam;
  fam.name = std::move(name);
  fam.alphabet = alphabet;
  fam.kind = kind;
  fam.max_length = longest;
  fam.generators = [by_length](std::size_t n) {
    const auto it = by_length->find(n);
    return it == by_length->end() ? std::vector<Word>{} : it->second;
  };
  fam.count = [by_length](std::size_t n) {
    const auto it = by_length->find(n);
    return BigInt(it == by_length->end() ? 0 : it->second.size());
  };
  if (kind == LabelKind::digit) fam.projected = project_family(fam);
  fam.factor_automaton = [fam_copy = fam](std::size_t) { return loop_graph(fam_copy); };
  return fam;
}

std::shared_ptr<const GeneratorFamily> project_family(const GeneratorFamily& fam) {
  if (fam.kind == LabelKind::column) throw DomainError("family is already projected");
  auto out = std::make_shared<GeneratorFamily>();
  out->name = "pi " + fam.name;
  out->alphabet = fam.alphabet;
  out->kind = LabelKind::column;
  out->max_length = fam.max_length;
  auto source = fam.generators;
  const Alphabet alphabet = fam.alphabet;
  auto cache = std::make_shared<std::map<std::size_t, std::vector<Word>>>();
  out->generators = [source, alphabet, cache](std::size_t n) {
    if (const auto it = cache->find(n); it != cache->end()) return it->second;
    std::set<Word> images;
    for (const Word& w : source(n)) images.insert(project_word(alphabet, w));
    std::vector<Word> list(images.begin(), images.end());
    (*cache)[n] = list;
    return list;
  };
  auto gens = out->generators;
  out->count = [gens](std::size_t n) { return BigInt(gens(n).size()); };
  if (fam.max_length) {
    GeneratorFamily shape;
    shape.alphabet = out->alphabet;
    shape.kind = out->kind;
    shape.max_length = out->max_length;
    shape.generators = out->generators;
    out->factor_automaton = [shape](std::size_t) { return loop_graph(shape); };
  }
  return out;
}

FactorAutomaton loop_graph(const GeneratorFamily& fam) {
  if (!fam.max_length) throw DomainError("loop graph needs a finite family");
  std::vector<std::string> names{"v"};
  std::vector<Edge> edges;
  std::size_t g = 0;
  for (std::size_t len = 1; len <= *fam.max_length; ++len) {
    for (const Word& w : fam.generators(len)) {
      ++g;
      std::size_t prev = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        std::size_t next = 0;
        if (i + 1 < w.size()) {
          next = names.size();
          names.push_back("c" + std::to_string(g) + "_" + std::to_string(i + 1));
        }
        edges.push_back({prev, next, w[i]});
        prev = next;
      }
    }
  }
  FactorAutomaton fa{Presentation(fam.alphabet, fam.kind, names, edges), {}, {}, std::nullopt};
  for (std::size_t v = 0; v < fa.graph.vertex_count(); ++v) fa.roots.push_back(v);
  fa.at_boundary.assign(fa.graph.vertex_count(), false);
  fa.at_boundary[0] = true;
  return fa;
}

UniqueDecompositionResult unique_decomposition_check(const GeneratorFamily& fam, std::size_t up_to,
                                                     std::size_t cap) {
  std::vector<std::vector<Word>> gens(up_to + 1);
  for (std::size_t k = 1; k <= up_to; ++k) gens[k] = fam.generators(k);
  std::vector<std::unordered_map<Word, unsigned char, WordHash>> levels(up_to + 1);
  levels[0][Word{}] = 1;
  std::size_t total = 1;
  UniqueDecompositionResult result;
  for (std::size_t n = 1; n <= up_to; ++n) {
    auto& level = levels[n];
    for (std::size_t k = 1; k <= n; ++k) {
      for (const auto& [u, ways] : levels[n - k]) {
        for (const Word& c : gens[k]) {
          auto& x = level[concat(u, c)];
          x = static_cast<unsigned char>(std::min(2, x + ways));
        }
      }
    }
    total += level.size();
    check_budget(total, cap, "decomposition check");
    std::optional<Word> witness;
    for (const auto& [w, ways] : level) {
      if (ways >= 2 && (!witness || w < *witness)) witness = w;
    }
    result.checked_up_to = n;
    if (witness) {
      result.pass = false;
      result.witness = witness;
      return result;
    }
  }
  return result;
}

std::vector<BigInt> concatenation_counts(const GeneratorFamily& fam, std::size_t up_to, std::size_t cap) {
  std::vector<std::vector<Word>> gens(up_to + 1);
  for (std::size_t k = 1; k <= up_to; ++k) gens[k] = fam.generators(k);
  std::vector<WordSet> levels(up_to + 1);
  levels[0].insert(Word{});
  std::vector<BigInt> out{1};
  std::size_t total = 1;
  for (std::size_t n = 1; n <= up_to; ++n) {
    for (std::size_t k = 1; k <= n; ++k)
      for (const Word& u : levels[n - k])
        for (const Word& c : gens[k]) levels[n].insert(concat(u, c));
    total += levels[n].size();
    check_budget(total, cap, "concatenation enumeration");
    out.push_back(BigInt(levels[n].size()));
  }
  return out;
}

std::vector<BigInt> g_counts(const GeneratorFamily& fam, std::size_t up_to) {
  if (!fam.unique_decomposition_asserted) {
    const auto check = unique_decomposition_check(fam, std::min(up_to, kDecompositionCheckLength));
    if (!check.pass) {
      throw DomainError("unique decomposition fails for " +
                        word_text(fam.alphabet, fam.kind, *check.witness));
    }
  }
  std::vector<BigInt> c(up_to + 1, 0);
  for (std::size_t k = 1; k <= up_to; ++k) c[k] = fam.count(k);
  std::vector<BigInt> g(up_to + 1, 0);
  g[0] = 1;
  for (std::size_t n = 1; n <= up_to; ++n)
    for (std::size_t k = 1; k <= n; ++k) g[n] += c[k] * g[n - k];
  return g;
}

std::vector<BigInt> affix_counts(const GeneratorFamily& fam, std::size_t up_to) {
  std::vector<BigInt> out{1};
  if (fam.affix_count) {
    for (std::size_t n = 1; n <= up_to; ++n) out.push_back(fam.affix_count(n));
    return out;
  }
  if (!fam.max_length) throw DomainError("affix counts need a closed form or a finite family");
  std::vector<WordSet> affixes(up_to + 1);
  for (std::size_t len = 1; len <= *fam.max_length; ++len) {
    for (const Word& w : fam.generators(len)) {
      for (std::size_t n = 1; n <= std::min(up_to, len); ++n) {
        affixes[n].insert(Word(w.begin(), w.begin() + static_cast<long>(n)));
        affixes[n].insert(Word(w.end() - static_cast<long>(n), w.end()));
      }
    }
  }
  for (std::size_t n = 1; n <= up_to; ++n) out.push_back(BigInt(affixes[n].size()));
  return out;
}

SeriesValue f_eval(const GeneratorFamily& fam, double x, bool projected) {
  if (projected && !fam.projected && fam.kind == LabelKind::digit) {
    throw DomainError("family has no projection");
  }
  const GeneratorFamily& f = projected ? projected_or_self(fam) : fam;
  SeriesValue out;
  auto term = [&](std::size_t n) {
    const long double lc = log_count_of(f, n);
    return std::isinf(lc) ? 0.0L : std::exp(lc - static_cast<long double>(n) * x);
  };

  if (f.max_length) {
    long double sum = 0;
    for (std::size_t n = 1; n <= *f.max_length; ++n) sum += term(n);
    out.status = SeriesValue::Status::finite;
    out.lower = out.upper = sum;
    out.terms = *f.max_length;
    return out;
  }

  constexpr std::size_t kProbeTerms = 64;
  if (!f.envelope) {
    for (std::size_t n = 1; n <= kProbeTerms; ++n) out.lower += term(n);
    out.terms = kProbeTerms;
    return out;
  }

  const CountEnvelope& env = *f.envelope;
  const double tie = 1e-12 * std::max(1.0, std::abs(env.rate));
  if (x < env.rate - tie) {
    out.status = SeriesValue::Status::divergent;
    out.lower = out.upper = std::numeric_limits<long double>::infinity();
    return out;
  }
  if (x <= env.rate + tie) {
    if (env.recurrent_constant > 0) {
      out.status = SeriesValue::Status::divergent;
      out.lower = out.upper = std::numeric_limits<long double>::infinity();
    } else {
      for (std::size_t n = 1; n <= kProbeTerms; ++n) out.lower += term(n);
      out.terms = kProbeTerms;
    }
    return out;
  }

  // Tail after T terms: sum_{n>T} U n^d r^n <= U (T+1)^d r^(T+1) / (1 - r ((T+2)/(T+1))^d).
  const long double r = std::exp(static_cast<long double>(env.rate) - x);
  const long double d = env.degree;
  long double sum = 0;
  for (std::size_t t = 1; t <= kSeriesTermCap; ++t) {
    sum += term(t);
    const long double t1 = static_cast<long double>(t + 1);
    const long double ratio = r * std::pow((t1 + 1) / t1, d);
    if (ratio >= 1) continue;
    const long double tail = env.upper_constant * std::pow(t1, d) * std::pow(r, t1) / (1 - ratio);
    if (tail < kSeriesTail) {
      out.status = SeriesValue::Status::finite;
      out.lower = sum;
      out.upper = sum + tail;
      out.terms = t;
      return out;
    }
  }
  out.lower = sum;
  out.terms = kSeriesTermCap;
  return out;
}

std::optional<double> renewal_entropy(const GeneratorFamily& fam) {
  const double floor = fam.envelope && !fam.max_length ? fam.envelope->rate : 0.0;
  if (!fam.max_length && !fam.envelope) return std::nullopt;
  auto above_one = [](const SeriesValue& v) {
    return v.status == SeriesValue::Status::divergent || v.lower > 1;
  };
  const SeriesValue at_floor = f_eval(fam, floor);
  if (!above_one(at_floor)) {
    if (at_floor.status == SeriesValue::Status::finite && at_floor.upper <= 1) return floor;
    return std::nullopt;
  }
  double lo = floor;
  double hi = std::max(floor + 1.0, std::log(static_cast<double>(std::max<std::size_t>(2, fam.symbol_count()))));
  for (int i = 0; i < 64; ++i) {
    const SeriesValue v = f_eval(fam, hi);
    if (v.status == SeriesValue::Status::finite && v.upper <= 1) break;
    if (i == 63) return std::nullopt;
    lo = hi;
    hi = 2 * hi + 1;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const SeriesValue v = f_eval(fam, mid);
    if (above_one(v)) {
      lo = mid;
    } else if (v.status == SeriesValue::Status::finite && v.upper <= 1) {
      hi = mid;
    } else if (v.status == SeriesValue::Status::finite) {
      return mid;  // enclosure straddles 1 at 1e-12 width
    } else {
      return std::nullopt;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

double top_half_rate(const std::vector<BigInt>& counts, std::size_t lo, std::size_t hi) {
  double best = 0;
  for (std::size_t n = lo + (hi - lo + 1) / 2; n <= hi; ++n) {
    if (counts[n] > 0) best = std::max(best, static_cast<double>(log_big(counts[n]) / static_cast<long double>(n)));
  }
  return best;
}

bool decomposes_uniquely(const GeneratorFamily& fam) {
  return fam.unique_decomposition_asserted ||
         unique_decomposition_check(fam, kDecompositionCheckLength).pass;
}

// (rate, closed form?)
std::pair<double, bool> concatenation_rate(const GeneratorFamily& fam, std::size_t lo, std::size_t hi) {
  if (fam.declared_h) return {*fam.declared_h, true};
  if (decomposes_uniquely(fam)) {
    if (auto h = renewal_entropy(fam)) return {*h, true};
    return {top_half_rate(g_counts(fam, hi), lo, hi), false};
  }
  // finite family: distinct concatenations grow like the loop graph's language
  if (fam.max_length) return {entropy(loop_graph(fam).graph).value, true};
  return {top_half_rate(concatenation_counts(fam, hi), lo, hi), false};
}

std::pair<double, bool> affix_rate(const GeneratorFamily& fam, std::size_t lo, std::size_t hi) {
  if (fam.affix_rate) return {*fam.affix_rate, true};
  if (fam.max_length) return {0.0, true};  // bounded affix counts
  return {top_half_rate(affix_counts(fam, hi), lo, hi), false};
}

}  // namespace

GrowthRates growth_rates(const GeneratorFamily& fam, std::size_t window_lo, std::size_t window_hi) {
  if (window_lo < 1 || window_hi < window_lo || window_hi - window_lo + 1 < 8) {
    throw DomainError("growth-rate window needs at least 8 values");
  }
  const GeneratorFamily& pf = projected_or_self(fam);
  GrowthRates r;
  r.window_lo = window_lo;
  r.window_hi = window_hi;
  const auto [h, h_closed] = concatenation_rate(fam, window_lo, window_hi);
  const auto [hp, hp_closed] = concatenation_rate(pf, window_lo, window_hi);
  const auto [l, l_closed] = affix_rate(fam, window_lo, window_hi);
  const auto [lp, lp_closed] = affix_rate(pf, window_lo, window_hi);
  r.h = h;
  r.h_pi = hp;
  r.ell = l;
  r.ell_pi = lp;
  r.method = h_closed && hp_closed && l_closed && lp_closed ? GrowthRates::Method::closed_form
                                                            : GrowthRates::Method::extrapolated;
  return r;
}

namespace {

std::string series_text(const SeriesValue& v) {
  switch (v.status) {
    case SeriesValue::Status::divergent: return "inf";
    case SeriesValue::Status::finite: return std::to_string(static_cast<double>(v.lower));
    case SeriesValue::Status::inconclusive: break;
  }
  return "inconclusive";
}

}  // namespace

CriterionReport fgeq1_check(const GeneratorFamily& fam, std::size_t window_lo, std::size_t window_hi) {
  CriterionReport rep;
  const GeneratorFamily& pf = projected_or_self(fam);
  auto decomposition = [](const GeneratorFamily& f) {
    if (f.unique_decomposition_asserted) return UniqueDecompositionResult{true, std::nullopt, 0};
    return unique_decomposition_check(f, kDecompositionCheckLength);
  };
  rep.decomposition = decomposition(fam);
  rep.projected_decomposition = decomposition(pf);
  rep.rates = growth_rates(fam, window_lo, window_hi);
  rep.f_ell = f_eval(fam, rep.rates.ell, false);
  rep.f_pi_ell_pi = f_eval(pf, rep.rates.ell_pi, false);

  if (!rep.decomposition.pass) {
    rep.notes.push_back("unique decomposition fails for " +
                        word_text(fam.alphabet, fam.kind, *rep.decomposition.witness));
  }
  if (!rep.projected_decomposition.pass) {
    rep.notes.push_back("unique decomposition fails for the projection at " +
                        word_text(pf.alphabet, pf.kind, *rep.projected_decomposition.witness));
  }
  if (!rep.f_ell.certainly_above(1)) rep.notes.push_back("f(ell) = " + series_text(rep.f_ell) + " is not certified above 1");
  if (!rep.f_pi_ell_pi.certainly_above(1)) {
    rep.notes.push_back("f_pi(ell_pi) = " + series_text(rep.f_pi_ell_pi) + " is not certified above 1");
  }
  rep.certified = rep.decomposition.pass && rep.projected_decomposition.pass &&
                  rep.f_ell.certainly_above(1) && rep.f_pi_ell_pi.certainly_above(1);
  if (rep.certified) {
    const double lm = std::log(static_cast<double>(fam.alphabet.m()));
    const double ln = std::log(static_cast<double>(fam.alphabet.n()));
    rep.box_dimension = rep.rates.h_pi / lm + (rep.rates.h - rep.rates.h_pi) / ln;
  }
  return rep;
}

namespace {

// Prefixes, suffixes (lengths 0..n, whole generators included), inner factors
// of length n, and short generators, streamed from generators up to `gcap`.
struct Pieces {
  std::vector<WordSet> prefixes, suffixes;
  WordSet factors;
  std::vector<std::vector<Word>> short_gens;
};

Pieces collect_pieces(const GeneratorFamily& fam, std::size_t n, std::size_t gcap, std::size_t cap) {
  Pieces p;
  p.prefixes.resize(n + 1);
  p.suffixes.resize(n + 1);
  p.short_gens.resize(n + 1);
  p.prefixes[0].insert(Word{});
  p.suffixes[0].insert(Word{});
  const std::size_t top = fam.max_length ? std::min(gcap, *fam.max_length) : gcap;
  for (std::size_t len = 1; len <= top; ++len) {
    for (const Word& w : fam.generators(len)) {
      for (std::size_t j = 1; j <= std::min(n, len); ++j) {
        p.prefixes[j].insert(Word(w.begin(), w.begin() + static_cast<long>(j)));
        p.suffixes[j].insert(Word(w.end() - static_cast<long>(j), w.end()));
      }
      for (std::size_t s = 0; s + n <= len; ++s) {
        p.factors.insert(Word(w.begin() + static_cast<long>(s), w.begin() + static_cast<long>(s + n)));
      }
      if (len <= n) p.short_gens[len].push_back(w);
    }
    check_budget(p.factors.size(), cap, "language enumeration");
  }
  return p;
}

std::vector<WordSet> concatenations(const std::vector<std::vector<Word>>& gens, std::size_t n, std::size_t cap) {
  std::vector<WordSet> g(n + 1);
  g[0].insert(Word{});
  for (std::size_t len = 1; len <= n; ++len) {
    for (std::size_t k = 1; k <= len; ++k)
      for (const Word& u : g[len - k])
        for (const Word& c : gens[k]) g[len].insert(concat(u, c));
    check_budget(g[len].size(), cap, "concatenation enumeration");
  }
  return g;
}

}  // namespace

std::vector<Word> enumerate_language(const GeneratorFamily& fam, std::size_t n, std::size_t generator_cap,
                                     std::size_t cap) {
  const Pieces p = collect_pieces(fam, n, generator_cap, cap);
  const auto g = concatenations(p.short_gens, n, cap);
  WordSet out = p.factors;
  for (std::size_t a = 0; a <= n; ++a) {
    for (std::size_t len = 0; a + len <= n; ++len) {
      const std::size_t b = n - a - len;
      for (const Word& s : p.suffixes[a])
        for (const Word& mid : g[len]) {
          const Word sm = concat(s, mid);
          for (const Word& t : p.prefixes[b]) out.insert(concat(sm, t));
        }
      check_budget(out.size(), cap, "language enumeration");
    }
  }
  return sorted(out);
}

std::vector<Word> enumerate_boundary_words(const GeneratorFamily& fam, std::size_t n,
                                           std::size_t generator_cap, std::size_t cap) {
  const Pieces p = collect_pieces(fam, n, generator_cap, cap);
  const auto g = concatenations(p.short_gens, n, cap);
  WordSet out;
  for (std::size_t a = 0; a <= n; ++a) {
    for (const Word& s : p.suffixes[a])
      for (const Word& mid : g[n - a]) out.insert(concat(s, mid));
    check_budget(out.size(), cap, "boundary enumeration");
  }
  return sorted(out);
}

namespace {

struct FactorDfa {
  FactorAutomaton fa;
  DeterministicPresentation d;
};

FactorDfa factor_dfa(const GeneratorFamily& fam, std::size_t up_to, std::size_t state_cap) {
  if (!fam.factor_automaton) throw DomainError("family " + fam.name + " has no factor automaton");
  FactorAutomaton fa = fam.factor_automaton(up_to);
  if (fa.exact_up_to && *fa.exact_up_to < up_to) throw DomainError("factor automaton is not exact to the requested length");
  VertexSet root(fa.graph.vertex_count());
  for (std::size_t v : fa.roots) root.insert(v);
  auto d = determinize_from(fa.graph, root, state_cap);
  return {std::move(fa), std::move(d)};
}

}  // namespace

std::vector<BigInt> language_counts(const GeneratorFamily& fam, std::size_t up_to, std::size_t state_cap) {
  return count_words(factor_dfa(fam, up_to, state_cap).d, up_to);
}

std::vector<BigInt> boundary_counts(const GeneratorFamily& fam, std::size_t up_to, std::size_t state_cap) {
  const auto [fa, d] = factor_dfa(fam, up_to, state_cap);
  std::vector<bool> accept(d.size(), false);
  for (std::size_t s = 0; s < d.size(); ++s) {
    for (std::size_t v : d.states[s].members())
      if (fa.at_boundary[v]) accept[s] = true;
  }
  std::vector<BigInt> cur(d.size(), 0), next(d.size(), 0), out;
  cur[d.root] = 1;
  for (std::size_t t = 0;; ++t) {
    BigInt sum = 0;
    for (std::size_t s = 0; s < d.size(); ++s)
      if (accept[s]) sum += cur[s];
    out.push_back(sum);
    if (t == up_to) break;
    std::fill(next.begin(), next.end(), BigInt(0));
    for (std::size_t s = 0; s < d.size(); ++s) {
      if (cur[s] == 0) continue;
      for (const auto& [label, u] : d.transitions[s]) next[u] += cur[s];
    }
    std::swap(cur, next);
  }
  return out;
}

}  // namespace boxdim
