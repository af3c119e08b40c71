#include "boxdim/presentation.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "boxdim/errors.hpp"

namespace boxdim {

Presentation::Presentation(Alphabet alphabet, LabelKind kind, std::vector<std::string> vertex_names,
                           std::vector<Edge> edges)
    : alphabet_(std::move(alphabet)), kind_(kind) {
  const std::size_t nv = vertex_names.size();
  const std::size_t ns = alphabet_.symbol_count(kind_);
  for (const Edge& e : edges) {
    if (e.source >= nv || e.target >= nv) throw DomainError("edge endpoint out of range");
    if (e.label >= ns) throw DomainError("edge label outside the alphabet");
  }

  // Iterative pruning of vertices with no outgoing edge.
  std::vector<bool> alive(nv, true);
  std::vector<std::size_t> outdeg(nv, 0);
  std::vector<std::vector<std::size_t>> preds(nv);
  for (const Edge& e : edges) {
    ++outdeg[e.source];
    preds[e.target].push_back(e.source);
  }
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < nv; ++v)
    if (outdeg[v] == 0) queue.push_back(v);
  while (!queue.empty()) {
    const std::size_t v = queue.back();
    queue.pop_back();
    if (!alive[v]) continue;
    alive[v] = false;
    for (std::size_t u : preds[v])
      if (alive[u] && --outdeg[u] == 0) queue.push_back(u);
  }

  std::vector<std::size_t> index(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!alive[v]) continue;
    index[v] = names_.size();
    names_.push_back(std::move(vertex_names[v]));
  }
  if (names_.empty()) throw DomainError("presentation is empty after pruning");
  for (const Edge& e : edges) {
    if (alive[e.source] && alive[e.target]) edges_.push_back({index[e.source], index[e.target], e.label});
  }
  std::sort(edges_.begin(), edges_.end());
  out_.assign(names_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) out_[edges_[i].source].push_back(i);
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  // Digits like "( 1 , 2 )" are glued back together.
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (!out.empty() && out.back().front() == '(' && out.back().find(')') == std::string::npos) {
      out.back() += tok;
    } else {
      out.push_back(tok);
    }
  }
  return out;
}

int parse_int(const std::string& s, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("expected an integer, got '" + s + "'", line);
  return v;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  std::optional<std::pair<int, int>> bases;
  std::optional<std::vector<Digit>> declared;
  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> by_name;
  struct RawEdge {
    std::size_t source, target;
    std::string label;
    std::size_t line;
  };
  std::vector<RawEdge> raw;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tok = split_tokens(line);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "bases") {
      if (tok.size() != 3) throw ParseError("bases takes two integers", lineno);
      if (bases) throw ParseError("bases declared twice", lineno);
      bases = {parse_int(tok[1], lineno), parse_int(tok[2], lineno)};
    } else if (kw == "digits") {
      std::string rest;
      for (std::size_t i = 1; i < tok.size(); ++i) rest += tok[i];
      auto list = parse_digit_list(rest);
      if (!list) throw ParseError("malformed digit list", lineno);
      declared = std::move(*list);
    } else if (kw == "vertex") {
      if (tok.size() != 2) throw ParseError("vertex takes one name", lineno);
      if (by_name.count(tok[1])) throw ParseError("vertex '" + tok[1] + "' declared twice", lineno);
      by_name[tok[1]] = names.size();
      names.push_back(tok[1]);
    } else if (kw == "edge") {
      if (tok.size() != 4) throw ParseError("edge takes source, target and label", lineno);
      const auto s = by_name.find(tok[1]);
      const auto t = by_name.find(tok[2]);
      if (s == by_name.end()) throw ParseError("undeclared vertex '" + tok[1] + "'", lineno);
      if (t == by_name.end()) throw ParseError("undeclared vertex '" + tok[2] + "'", lineno);
      raw.push_back({s->second, t->second, tok[3], lineno});
    } else {
      throw ParseError("unknown keyword '" + kw + "'", lineno);
    }
  }
  if (!bases) throw ParseError("missing 'bases m n' line", 0);
  if (raw.empty()) throw ParseError("no edges", 0);

  const bool column = raw.front().label.front() != '(';
  std::vector<Edge> edges;
  std::vector<Digit> labels;
  for (const RawEdge& r : raw) {
    if ((r.label.front() != '(') != column) throw ParseError("mixed digit and column labels", r.line);
    if (!column) {
      const auto d = parse_digit(r.label);
      if (!d) throw ParseError("malformed label '" + r.label + "'", r.line);
      labels.push_back(*d);
    }
  }
  std::vector<Digit> digits;
  if (declared) {
    digits = *declared;
  } else {
    digits = labels;
    std::sort(digits.begin(), digits.end());
    digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
  }
  Alphabet alphabet = [&] {
    try {
      return Alphabet(bases->first, bases->second, digits);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), 0);
    }
  }();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const RawEdge& r = raw[i];
    Symbol label = 0;
    if (column) {
      const int a = parse_int(r.label, r.line);
      if (a < 1 || a > alphabet.m()) throw ParseError("column label " + r.label + " outside 1.." + std::to_string(alphabet.m()), r.line);
      label = static_cast<Symbol>(a - 1);
    } else {
      const auto s = alphabet.find(labels[i]);
      if (!s) throw ParseError("label " + to_string(labels[i]) + " outside the declared digits", r.line);
      label = *s;
    }
    edges.push_back({r.source, r.target, label});
  }
  try {
    return Presentation(std::move(alphabet), column ? LabelKind::column : LabelKind::digit,
                        std::move(names), std::move(edges));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string serialize(const Presentation& p) {
  std::ostringstream out;
  const Alphabet& a = p.alphabet();
  out << "bases " << a.m() << ' ' << a.n() << '\n';
  if (!a.digits().empty()) {
    out << "digits";
    for (const Digit& d : a.digits()) out << ' ' << to_string(d);
    out << '\n';
  }
  for (const auto& name : p.vertex_names()) out << "vertex " << name << '\n';
  for (const Edge& e : p.edges()) {
    out << "edge " << p.vertex_names()[e.source] << ' ' << p.vertex_names()[e.target] << ' '
        << a.symbol_text(p.kind(), e.label) << '\n';
  }
  return out.str();
}

Presentation project(const Presentation& p) {
  if (p.kind() == LabelKind::column) return p;
  std::set<Edge> merged;
  for (const Edge& e : p.edges()) merged.insert({e.source, e.target, p.alphabet().column_of(e.label)});
  return Presentation(p.alphabet(), LabelKind::column, p.vertex_names(),
                      std::vector<Edge>(merged.begin(), merged.end()));
}

Presentation induced(const Presentation& p, const std::vector<std::size_t>& vertices) {
  std::vector<long> index(p.vertex_count(), -1);
  std::vector<std::string> names;
  std::vector<std::size_t> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t v : sorted) {
    index.at(v) = static_cast<long>(names.size());
    names.push_back(p.vertex_names()[v]);
  }
  std::vector<Edge> edges;
  for (const Edge& e : p.edges()) {
    if (index[e.source] >= 0 && index[e.target] >= 0) {
      edges.push_back({static_cast<std::size_t>(index[e.source]), static_cast<std::size_t>(index[e.target]), e.label});
    }
  }
  return Presentation(p.alphabet(), p.kind(), std::move(names), std::move(edges));
}

Presentation without_vertices(const Presentation& p, const std::vector<std::size_t>& vertices) {
  std::vector<bool> drop(p.vertex_count(), false);
  for (std::size_t v : vertices) drop.at(v) = true;
  std::vector<std::size_t> keep;
  for (std::size_t v = 0; v < p.vertex_count(); ++v)
    if (!drop[v]) keep.push_back(v);
  return induced(p, keep);
}

std::vector<Word> enumerate_words(const Presentation& p, std::size_t length, std::size_t cap) {
  // Live (word, end vertex) pairs, deduplicated level by level.
  std::vector<std::pair<Word, std::size_t>> live;
  for (std::size_t v = 0; v < p.vertex_count(); ++v) live.push_back({{}, v});
  for (std::size_t step = 0; step < length; ++step) {
    std::vector<std::pair<Word, std::size_t>> next;
    for (const auto& [word, v] : live) {
      for (std::size_t ei : p.out_edges(v)) {
        const Edge& e = p.edges()[ei];
        Word w = word;
        w.push_back(e.label);
        next.push_back({std::move(w), e.target});
        if (next.size() > 2 * cap) {
          throw BudgetExceeded("word enumeration at length " + std::to_string(length) +
                               " exceeds the cap of " + std::to_string(cap));
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() > cap) {
      throw BudgetExceeded("word enumeration at length " + std::to_string(length) +
                           " exceeds the cap of " + std::to_string(cap));
    }
    live = std::move(next);
  }
  std::vector<Word> words;
  words.reserve(live.size());
  for (auto& [word, v] : live) words.push_back(std::move(word));
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

}  // namespace boxdim
