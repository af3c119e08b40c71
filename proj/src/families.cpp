#include "boxdim/families.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>

#include "boxdim/errors.hpp"

namespace boxdim {

// ---------------------------------------------------------------- integer sets

bool IntegerSetSpec::contains(std::size_t s) const {
  if (std::find(finite.begin(), finite.end(), s) != finite.end()) return true;
  return tail_start && s >= *tail_start && (s - *tail_start) % tail_step == 0;
}

std::size_t IntegerSetSpec::max() const {
  if (infinite()) throw DomainError("infinite set has no maximum");
  if (finite.empty()) throw DomainError("empty set has no maximum");
  return *std::max_element(finite.begin(), finite.end());
}

std::string IntegerSetSpec::text() const {
  std::string out;
  for (std::size_t s : finite) out += (out.empty() ? "" : ",") + std::to_string(s);
  if (tail_start) {
    out += (out.empty() ? "" : ",") + std::to_string(*tail_start) + "+" +
           (tail_step == 1 ? std::string() : std::to_string(tail_step)) + "k";
  }
  return out;
}

namespace {

std::size_t to_size(std::string_view s, const std::string& context) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("expected a nonnegative integer in '" + context + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

IntegerSetSpec parse_integer_set(std::string_view text) {
  const std::string context(text);
  if (!text.empty() && text.front() == '{') text.remove_prefix(1);
  if (!text.empty() && text.back() == '}') text.remove_suffix(1);
  IntegerSetSpec s;
  if (text.empty()) return s;
  for (std::string_view item : split(text, ',')) {
    if (const auto plus = item.find('+'); plus != std::string_view::npos) {
      if (s.tail_start) throw DomainError("only one arithmetic tail allowed in '" + context + "'");
      std::string_view step = item.substr(plus + 1);
      if (step.empty() || step.back() != 'k') throw DomainError("tail must look like a+bk in '" + context + "'");
      step.remove_suffix(1);
      s.tail_start = to_size(item.substr(0, plus), context);
      s.tail_step = step.empty() ? 1 : to_size(step, context);
      if (s.tail_step == 0) throw DomainError("tail step must be positive in '" + context + "'");
    } else {
      s.finite.push_back(to_size(item, context));
    }
  }
  std::sort(s.finite.begin(), s.finite.end());
  s.finite.erase(std::unique(s.finite.begin(), s.finite.end()), s.finite.end());
  if ((!s.finite.empty() && s.finite.front() == 0) || (s.tail_start && *s.tail_start == 0)) {
    throw DomainError("lengths start at 1 in '" + context + "'");
  }
  return s;
}

// ---------------------------------------------------------------- S-gap

namespace {

struct SgapShape {
  Alphabet alphabet;
  LabelKind kind;
  Symbol marker;
  std::vector<Symbol> others;
  IntegerSetSpec s;
};

std::vector<Word> all_words(const std::vector<Symbol>& letters, std::size_t length) {
  std::vector<Word> out;
  Word w(length, 0);
  std::vector<std::size_t> idx(length, 0);
  if (letters.empty()) return length == 0 ? std::vector<Word>{Word{}} : out;
  while (true) {
    for (std::size_t i = 0; i < length; ++i) w[i] = letters[idx[i]];
    out.push_back(w);
    std::size_t i = length;
    while (i > 0 && ++idx[i - 1] == letters.size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

FactorAutomaton sgap_automaton(const SgapShape& g) {
  // Vertex 0 is the start; AFTER(a) counts letters read since the last marker.
  const bool infinite = g.s.infinite();
  std::size_t after_count = 0;
  std::size_t fold_to = 0;
  if (infinite) {
    const std::size_t top = g.s.finite.empty() ? 0 : g.s.finite.back();
    const std::size_t threshold = std::max(*g.s.tail_start, top + 1);
    after_count = threshold + g.s.tail_step - 1;  // a = 0 .. threshold + step - 2
    fold_to = threshold - 1;
  } else {
    after_count = g.s.max();  // a = 0 .. sup S - 1
  }
  const std::size_t sup = infinite ? 0 : g.s.max();
  const std::size_t start_count = infinite ? 1 : sup;  // START(0 .. sup S - 1)

  std::vector<std::string> names;
  for (std::size_t a = 0; a < start_count; ++a) names.push_back("start" + std::to_string(a));
  for (std::size_t a = 0; a < after_count; ++a) names.push_back("after" + std::to_string(a));
  auto start = [](std::size_t a) { return a; };
  auto after = [&](std::size_t a) { return start_count + a; };

  std::vector<Edge> edges;
  auto letters = [&](std::size_t from, std::size_t to) {
    for (Symbol x : g.others) edges.push_back({from, to, x});
  };
  for (std::size_t a = 0; a < start_count; ++a) {
    if (infinite) {
      letters(start(a), start(a));
    } else if (a + 1 <= sup - 1) {
      letters(start(a), start(a + 1));
    }
    edges.push_back({start(a), after(0), g.marker});
  }
  for (std::size_t a = 0; a < after_count; ++a) {
    if (infinite) {
      letters(after(a), after(a + 1 < after_count ? a + 1 : fold_to));
    } else if (a + 1 <= sup - 1) {
      letters(after(a), after(a + 1));
    }
    // Folded states stand for a + step k; membership is periodic there.
    if (g.s.contains(a + 1)) edges.push_back({after(a), after(0), g.marker});
  }
  FactorAutomaton fa{Presentation(g.alphabet, g.kind, names, edges), {}, {}, std::nullopt};
  fa.roots = {0};
  fa.at_boundary.assign(fa.graph.vertex_count(), false);
  fa.at_boundary[0] = true;
  // Pruning keeps order, so AFTER(0) sits right after the surviving starts.
  for (std::size_t v = 0; v < fa.graph.vertex_count(); ++v)
    if (fa.graph.vertex_names()[v] == "after0") fa.at_boundary[v] = true;
  return fa;
}

GeneratorFamily make_sgap(const SgapShape& g, std::string name) {
  GeneratorFamily fam;
  fam.name = std::move(name);
  fam.alphabet = g.alphabet;
  fam.kind = g.kind;
  const std::size_t q1 = g.others.size();  // #I - 1
  const IntegerSetSpec s = g.s;
  fam.count = [s, q1](std::size_t n) {
    return s.contains(n) ? pow_big(q1, static_cast<unsigned>(n - 1)) : BigInt(0);
  };
  fam.log_count = [s, q1](std::size_t n) -> long double {
    if (!s.contains(n)) return -std::numeric_limits<long double>::infinity();
    if (q1 == 1) return 0;
    return static_cast<long double>(n - 1) * std::log(static_cast<long double>(q1));
  };
  fam.generators = [g](std::size_t n) {
    std::vector<Word> out;
    if (!g.s.contains(n)) return out;
    for (Word w : all_words(g.others, n - 1)) {
      w.push_back(g.marker);
      out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  const double rate = q1 > 1 ? std::log(static_cast<double>(q1)) : 0.0;
  if (s.infinite()) {
    // #C_n = e^(rate (n-1)) on S, so U = recurrent constant = 1/(#I-1).
    fam.envelope = CountEnvelope{rate, 1.0 / static_cast<double>(q1), 0.0, 1.0 / static_cast<double>(q1)};
  } else {
    fam.max_length = s.max();
  }
  // Affixes: (I')^j when some generator has j+1 <= length, and (I')^(j-1) marker.
  fam.affix_count = [s, q1](std::size_t j) {
    auto reaches = [&](std::size_t len) { return s.infinite() || s.max() >= len; };
    BigInt c = 0;
    if (reaches(j + 1)) c += pow_big(q1, static_cast<unsigned>(j));
    if (reaches(j)) c += pow_big(q1, static_cast<unsigned>(j - 1));
    return c;
  };
  fam.affix_rate = s.infinite() ? rate : 0.0;
  fam.unique_decomposition_asserted = true;
  fam.factor_automaton = [g](std::size_t) { return sgap_automaton(g); };
  return fam;
}

}  // namespace

Alphabet sgap_default_alphabet(int m, int n, Digit marker) {
  std::vector<Digit> digits{marker};
  for (int a = 1; a <= m; ++a) {
    if (a == marker.a) continue;
    for (int b = 1; b <= n; ++b) digits.push_back({a, b});
  }
  std::sort(digits.begin(), digits.end());
  return Alphabet(m, n, digits);
}

GeneratorFamily builtin_sgap(const Alphabet& alphabet, Digit marker, const IntegerSetSpec& s) {
  if (s.empty()) throw DomainError("S-gap family needs a nonempty S");
  const auto mu = alphabet.find(marker);
  if (!mu) throw DomainError("marker " + to_string(marker) + " is not a digit of the alphabet");
  SgapShape digits{alphabet, LabelKind::digit, *mu, {}, s};
  std::set<Symbol> columns;
  for (Symbol x = 0; x < alphabet.size(); ++x) {
    if (x == *mu) continue;
    if (alphabet.digit(x).a == marker.a) {
      throw DomainError("digit " + to_string(alphabet.digit(x)) + " shares the marker's column");
    }
    digits.others.push_back(x);
    columns.insert(alphabet.column_of(x));
  }
  if (digits.others.empty()) throw DomainError("S-gap family needs a digit besides the marker");
  SgapShape cols{alphabet, LabelKind::column, alphabet.column_of(*mu),
                 std::vector<Symbol>(columns.begin(), columns.end()), s};
  GeneratorFamily fam = make_sgap(digits, "sgap S=" + s.text());
  fam.projected = std::make_shared<GeneratorFamily>(make_sgap(cols, "pi sgap S=" + s.text()));
  return fam;
}

Presentation sgap_presentation(const GeneratorFamily& sgap) { return loop_graph(sgap).graph; }

// ---------------------------------------------------------------- beta

int DigitSequence::at(std::size_t i) const {
  if (i == 0) throw DomainError("sequence indices start at 1");
  if (i <= preperiod.size()) return preperiod[i - 1];
  return period[(i - preperiod.size() - 1) % period.size()];
}

std::string DigitSequence::text() const {
  auto join = [](const std::vector<int>& v) {
    std::string out;
    for (int x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
    return out;
  };
  return join(preperiod) + "/" + join(period);
}

DigitSequence parse_digit_sequence(std::string_view text) {
  const std::string context(text);
  auto list = [&](std::string_view part) {
    std::vector<int> out;
    if (part.empty()) return out;
    for (auto item : split(part, ',')) out.push_back(static_cast<int>(to_size(item, context)));
    return out;
  };
  DigitSequence b;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    b.preperiod = list(text.substr(0, slash));
    b.period = list(text.substr(slash + 1));
  } else {
    b.preperiod = list(text);
    b.period = {0};
  }
  if (b.period.empty()) throw DomainError("digit sequence needs a nonempty period in '" + context + "'");
  return b;
}

namespace {

bool finite_expansion(const DigitSequence& b) {
  return std::all_of(b.period.begin(), b.period.end(), [](int x) { return x == 0; });
}

// Position of the last nonzero digit of a finite expansion.
std::size_t last_nonzero(const DigitSequence& b) {
  std::size_t last = 0;
  for (std::size_t i = 1; i <= b.preperiod.size(); ++i)
    if (b.preperiod[i - 1] != 0) last = i;
  return last;
}

// The quasi-greedy sequence: equal to b unless b is finite, where
// b_1..b_N 0^inf becomes (b_1..b_{N-1} (b_N - 1))^inf.
DigitSequence quasi_greedy(const DigitSequence& b) {
  if (!finite_expansion(b)) return b;
  const std::size_t n = last_nonzero(b);
  DigitSequence out;
  out.period.assign(b.preperiod.begin(), b.preperiod.begin() + static_cast<long>(n));
  out.period.back() -= 1;
  return out;
}

FactorAutomaton parry_automaton(const Alphabet& alphabet, const std::vector<Symbol>& code,
                                const DigitSequence& b) {
  const DigitSequence s = quasi_greedy(b);
  const std::size_t pre = s.preperiod.size();
  const std::size_t states = pre + s.period.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < states; ++i) names.push_back("m" + std::to_string(i));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < states; ++i) {
    const int next = s.at(i + 1);
    for (int x = 0; x < next; ++x) edges.push_back({i, 0, code[static_cast<std::size_t>(x)]});
    edges.push_back({i, i + 1 < states ? i + 1 : pre, code[static_cast<std::size_t>(next)]});
  }
  FactorAutomaton fa{Presentation(alphabet, LabelKind::digit, names, edges), {0}, {}, std::nullopt};
  fa.at_boundary.assign(fa.graph.vertex_count(), false);
  fa.at_boundary[0] = true;
  return fa;
}

}  // namespace

std::optional<std::string> beta_sequence_problem(const DigitSequence& b, std::size_t q) {
  if (q < 2) return "need at least two digits";
  if (b.period.empty()) return "empty period";
  const std::size_t horizon = b.preperiod.size() + b.period.size();
  for (std::size_t i = 1; i <= horizon; ++i) {
    if (b.at(i) < 0 || static_cast<std::size_t>(b.at(i)) > q - 1) {
      return "digit " + std::to_string(b.at(i)) + " outside 0.." + std::to_string(q - 1);
    }
  }
  if (static_cast<std::size_t>(b.at(1)) != q - 1) {
    return "b_1 must be " + std::to_string(q - 1) + " so that " + std::to_string(q - 1) + " < beta < " + std::to_string(q);
  }
  if (finite_expansion(b) && last_nonzero(b) == 1) return "beta would be the integer " + std::to_string(q - 1);
  // Both sides are periodic from index pre+1 with the same period, so
  // agreement on pre + period digits means equality.
  for (std::size_t k = 1; k <= horizon; ++k) {
    int cmp = 0;
    for (std::size_t i = 1; i <= horizon && cmp == 0; ++i) cmp = (b.at(k + i) > b.at(i)) - (b.at(k + i) < b.at(i));
    if (cmp >= 0) return "shift by " + std::to_string(k) + " is not strictly below the sequence";
  }
  return std::nullopt;
}

GeneratorFamily builtin_beta(const Alphabet& alphabet, const std::vector<Digit>& order, const DigitSequence& b) {
  const std::size_t q = order.size();
  if (q != alphabet.size()) throw DomainError("ordering must list every digit exactly once");
  std::vector<Symbol> code;
  for (const Digit& d : order) {
    const auto s = alphabet.find(d);
    if (!s) throw DomainError("ordering digit " + to_string(d) + " is not in the alphabet");
    code.push_back(*s);
  }
  if (std::set<Symbol>(code.begin(), code.end()).size() != q) throw DomainError("ordering repeats a digit");
  if (auto problem = beta_sequence_problem(b, q)) throw DomainError("invalid b-sequence " + b.text() + ": " + *problem);

  GeneratorFamily fam;
  fam.name = "beta b=" + b.text();
  fam.alphabet = alphabet;
  fam.kind = LabelKind::digit;
  fam.count = [b](std::size_t n) { return BigInt(b.at(n)); };
  fam.generators = [b, code](std::size_t n) {
    std::vector<Word> out;
    Word stem;
    for (std::size_t i = 1; i < n; ++i) stem.push_back(code[static_cast<std::size_t>(b.at(i))]);
    for (int j = 0; j < b.at(n); ++j) {
      Word w = stem;
      w.push_back(code[static_cast<std::size_t>(j)]);
      out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  const bool finite = finite_expansion(b);
  if (finite) {
    fam.max_length = last_nonzero(b);
  } else {
    fam.envelope = CountEnvelope{0.0, static_cast<double>(q - 1), 0.0, 1.0};
  }
  // Affixes of length j only depend on generators up to j + preperiod + period.
  const std::size_t reach = b.preperiod.size() + b.period.size();
  auto gens = fam.generators;
  auto affix_words = [gens, reach](std::size_t j) {
    std::set<Word> out;
    for (std::size_t len = j; len <= j + reach + 1; ++len) {
      for (const Word& w : gens(len)) {
        out.insert(Word(w.begin(), w.begin() + static_cast<long>(j)));
        out.insert(Word(w.end() - static_cast<long>(j), w.end()));
      }
    }
    return out;
  };
  if (!finite) {
    fam.affix_count = [affix_words](std::size_t j) { return BigInt(affix_words(j).size()); };
    fam.affix_rate = 0.0;  // bounded: b has finitely many distinct factors per length
  }
  fam.unique_decomposition_asserted = false;
  fam.factor_automaton = [alphabet, code, b](std::size_t) { return parry_automaton(alphabet, code, b); };

  auto proj = std::const_pointer_cast<GeneratorFamily>(project_family(fam));
  if (!finite) {
    proj->envelope = CountEnvelope{0.0, static_cast<double>(q - 1), 0.0, 1.0};
    proj->affix_rate = 0.0;
    const Alphabet a = alphabet;
    proj->affix_count = [affix_words, a](std::size_t j) {
      std::set<Word> images;
      for (const Word& w : affix_words(j)) images.insert(project_word(a, w));
      return BigInt(images.size());
    };
  }
  auto base_fa = fam.factor_automaton;
  proj->factor_automaton = [base_fa](std::size_t len) {
    FactorAutomaton fa = base_fa(len);
    return FactorAutomaton{project(fa.graph), fa.roots, fa.at_boundary, fa.exact_up_to};
  };
  fam.projected = proj;
  return fam;
}

// ---------------------------------------------------------------- dimension drop

BigInt dimdrop_count(std::size_t length, bool include_empty_w) {
  BigInt c = length == 1 ? 2 : 0;
  if (include_empty_w && length >= 1) c += 1;
  for (std::size_t w = 1; w < length && length - w >= (std::size_t{1} << std::min<std::size_t>(w, 62)); ++w) {
    c += pow_big(3, static_cast<unsigned>(w));
  }
  return c;
}

namespace {

// Symbols in the lexicographic digit table.
constexpr Symbol kA = 0, kP = 1, kB = 5;
constexpr Symbol kOmega[3] = {2, 3, 4};

FactorAutomaton dimdrop_automaton(const Alphabet& alphabet, std::size_t length, bool empty_w) {
  const std::size_t len = std::max<std::size_t>(length, 1);
  std::vector<std::string> names{"start", "free", "srun"};
  std::vector<bool> boundary{true, true, true};
  std::vector<std::size_t> block(len + 1, 0);
  for (std::size_t c = 1; c <= len; ++c) {
    block[c] = names.size();
    names.push_back("b" + std::to_string(c));
    boundary.push_back(false);
  }
  // RUN(c, r): r P's after an Omega-block of length c, r saturating at cap(c).
  auto cap = [&](std::size_t c) -> std::size_t {
    return c < 63 && (std::size_t{1} << c) <= len ? (std::size_t{1} << c) : len;
  };
  auto satisfied = [&](std::size_t c, std::size_t r) { return c < 63 && r >= (std::size_t{1} << c); };
  std::vector<std::vector<std::size_t>> run(len + 1);
  for (std::size_t c = 1; c <= len; ++c) {
    run[c].assign(cap(c) + 1, 0);
    for (std::size_t r = 1; r <= cap(c); ++r) {
      run[c][r] = names.size();
      names.push_back("r" + std::to_string(c) + "_" + std::to_string(r));
      boundary.push_back(satisfied(c, r));
    }
  }
  std::vector<Edge> edges;
  auto exits = [&](std::size_t from) {
    edges.push_back({from, 1, kA});
    edges.push_back({from, 1, kB});
    for (Symbol o : kOmega) edges.push_back({from, block[1], o});
  };
  exits(0);
  edges.push_back({0, 2, kP});
  exits(1);
  if (empty_w) edges.push_back({1, 2, kP});
  exits(2);
  edges.push_back({2, 2, kP});
  for (std::size_t c = 1; c <= len; ++c) {
    for (Symbol o : kOmega) edges.push_back({block[c], block[std::min(c + 1, len)], o});
    edges.push_back({block[c], run[c][1], kP});
    for (std::size_t r = 1; r <= cap(c); ++r) {
      edges.push_back({run[c][r], run[c][std::min(r + 1, cap(c))], kP});
      if (satisfied(c, r)) exits(run[c][r]);
    }
  }
  FactorAutomaton fa{Presentation(alphabet, LabelKind::digit, names, edges), {0}, {}, length};
  // Every vertex has a P or Omega edge, so nothing was pruned.
  fa.at_boundary = boundary;
  return fa;
}

}  // namespace

GeneratorFamily builtin_dimdrop(int m, int n, bool include_empty_w) {
  if (m < 2 || n < std::max(m + 1, 5)) {
    throw DomainError("dimension-drop family needs m >= 2 and n >= max(m+1, 5)");
  }
  const Alphabet alphabet(m, n, {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 1}});
  GeneratorFamily fam;
  fam.name = include_empty_w ? "dimdrop (empty w allowed)" : "dimdrop";
  fam.alphabet = alphabet;
  fam.kind = LabelKind::digit;
  fam.count = [include_empty_w](std::size_t len) { return dimdrop_count(len, include_empty_w); };
  fam.generators = [include_empty_w](std::size_t len) {
    std::vector<Word> out;
    if (len == 1) {
      out.push_back({kA});
      out.push_back({kB});
    }
    for (std::size_t c = include_empty_w ? 0 : 1; c < len; ++c) {
      const std::size_t k = len - c;
      if (c >= 63 || k < (std::size_t{1} << c)) break;
      const std::vector<Symbol> omega(std::begin(kOmega), std::end(kOmega));
      for (Word w : all_words(omega, c)) {
        w.insert(w.end(), k, kP);
        out.push_back(std::move(w));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  // sum_{c <= log2 N} 3^c <= 1.5 N^(log2 3), plus the two letters (and P^N).
  fam.envelope = CountEnvelope{0.0, include_empty_w ? 4.5 : 3.5, std::log2(3.0), 1.0};
  // Prefixes Omega^a P^b (a >= 1) and Omega^j, suffixes add P^j; A, B at j = 1.
  fam.affix_count = [](std::size_t j) {
    BigInt c = (pow_big(3, static_cast<unsigned>(j + 1)) - 3) / 2 + 1;
    if (j == 1) c += 2;
    return c;
  };
  fam.affix_rate = std::log(3.0);
  fam.unique_decomposition_asserted = !include_empty_w;
  fam.factor_automaton = [alphabet, include_empty_w](std::size_t len) {
    return dimdrop_automaton(alphabet, len, include_empty_w);
  };

  // pi C = {1, 2} u {1^N : N >= 3} (N >= 1 with the empty word).
  auto proj = std::make_shared<GeneratorFamily>();
  proj->name = "pi " + fam.name;
  proj->alphabet = alphabet;
  proj->kind = LabelKind::column;
  proj->count = [include_empty_w](std::size_t len) {
    if (len == 1) return BigInt(2);
    return BigInt(len >= 3 || include_empty_w ? 1 : 0);
  };
  proj->generators = [include_empty_w](std::size_t len) {
    std::vector<Word> out;
    if (len == 1) return std::vector<Word>{{0}, {1}};
    if (len >= 3 || include_empty_w) out.push_back(Word(len, 0));
    return out;
  };
  proj->envelope = CountEnvelope{0.0, 2.0, 0.0, 1.0};
  proj->affix_count = [](std::size_t j) { return BigInt(j == 1 ? 2 : 1); };
  proj->affix_rate = 0.0;
  proj->declared_h = std::log(2.0);  // pi Sigma is the full shift on {1, 2}
  proj->factor_automaton = [alphabet](std::size_t) {
    FactorAutomaton fa{Presentation(alphabet, LabelKind::column, {"v"}, {{0, 0, 0}, {0, 0, 1}}), {0}, {true},
                       std::nullopt};
    return fa;
  };
  fam.projected = proj;
  return fam;
}

// ---------------------------------------------------------------- family files

bool is_family_text(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    } else if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else {
      return text.substr(i, 6) == "family";
    }
  }
  return false;
}

namespace {

struct FamilyHeader {
  std::string kind;
  std::map<std::string, std::string> args;
  std::size_t line = 0;
};

std::string strip_comment(std::string line) {
  if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  return line;
}

Word parse_generator(const Alphabet& alphabet, LabelKind kind, const std::string& text, std::size_t line) {
  Word w;
  if (kind == LabelKind::column) {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      std::size_t a = 0;
      try {
        a = to_size(tok, text);
      } catch (const DomainError& e) {
        throw ParseError(e.what(), line);
      }
      if (a < 1 || a > static_cast<std::size_t>(alphabet.m())) throw ParseError("column " + tok + " out of range", line);
      w.push_back(static_cast<Symbol>(a - 1));
    }
    return w;
  }
  const auto digits = parse_digit_list(text);
  if (!digits) throw ParseError("malformed generator '" + text + "'", line);
  for (const Digit& d : *digits) {
    const auto s = alphabet.find(d);
    if (!s) throw ParseError("digit " + to_string(d) + " outside the alphabet", line);
    w.push_back(*s);
  }
  return w;
}

}  // namespace

GeneratorFamily parse_family(std::string_view text, bool include_empty_w) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  std::optional<FamilyHeader> header;
  std::vector<std::pair<std::string, std::size_t>> body;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = strip_comment(raw);
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (!header) {
      if (first != "family") throw ParseError("expected 'family <kind> ...'", lineno);
      FamilyHeader h;
      h.line = lineno;
      if (!(tokens >> h.kind)) throw ParseError("missing family kind", lineno);
      std::string kv;
      while (tokens >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + kv + "'", lineno);
        h.args[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      header = std::move(h);
    } else {
      body.push_back({line, lineno});
    }
  }
  if (!header) throw ParseError("empty family file", 0);
  const FamilyHeader& h = *header;
  auto need = [&](const std::string& key) -> const std::string& {
    const auto it = h.args.find(key);
    if (it == h.args.end()) throw ParseError("family " + h.kind + " needs " + key + "=", h.line);
    return it->second;
  };
  auto integer = [&](const std::string& key) {
    try {
      return static_cast<int>(to_size(need(key), key));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), h.line);
    }
  };
  auto digit_list = [&](const std::string& key) {
    auto list = parse_digit_list(need(key));
    if (!list) throw ParseError("malformed digit list for " + key, h.line);
    return *list;
  };
  if (h.kind != "explicit" && !body.empty()) throw ParseError("unexpected line after the header", body.front().second);

  try {
    if (h.kind == "sgap") {
      const int m = integer("m"), n = integer("n");
      const auto marker = parse_digit(need("marker"));
      if (!marker) throw ParseError("malformed marker", h.line);
      const Alphabet alphabet = h.args.count("digits") ? Alphabet(m, n, digit_list("digits"))
                                                       : sgap_default_alphabet(m, n, *marker);
      return builtin_sgap(alphabet, *marker, parse_integer_set(need("S")));
    }
    if (h.kind == "beta") {
      const int m = integer("m"), n = integer("n");
      const auto order = digit_list("order");
      return builtin_beta(Alphabet(m, n, order), order, parse_digit_sequence(need("b")));
    }
    if (h.kind == "dimdrop") {
      bool empty_w = include_empty_w;
      if (h.args.count("empty_w")) empty_w = need("empty_w") == "1" || need("empty_w") == "true";
      return builtin_dimdrop(integer("m"), integer("n"), empty_w);
    }
    if (h.kind == "explicit") {
      const int m = integer("m"), n = integer("n");
      const LabelKind kind = h.args.count("kind") && need("kind") == "column" ? LabelKind::column : LabelKind::digit;
      std::vector<Digit> digits;
      if (h.args.count("digits")) {
        digits = digit_list("digits");
      } else if (kind == LabelKind::digit) {
        std::set<Digit> used;
        for (const auto& [line, no] : body) {
          const auto list = parse_digit_list(line);
          if (!list) throw ParseError("malformed generator '" + line + "'", no);
          used.insert(list->begin(), list->end());
        }
        digits.assign(used.begin(), used.end());
      }
      const Alphabet alphabet(m, n, digits);
      std::vector<Word> words;
      for (const auto& [line, no] : body) words.push_back(parse_generator(alphabet, kind, line, no));
      return explicit_family(alphabet, kind, std::move(words));
    }
  } catch (const DomainError& e) {
    throw ParseError(e.what(), h.line);
  }
  throw ParseError("unknown family kind '" + h.kind + "'", h.line);
}

}  // namespace boxdim
