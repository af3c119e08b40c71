#include "boxdim/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "boxdim/errors.hpp"

namespace boxdim {

std::string to_string(Digit d) { return "(" + std::to_string(d.a) + "," + std::to_string(d.b) + ")"; }

Alphabet::Alphabet(int m, int n, std::vector<Digit> digits) : m_(m), n_(n), digits_(std::move(digits)) {
  if (m < 2 || n <= m) {
    throw DomainError("bases need n > m >= 2, got m=" + std::to_string(m) + " n=" + std::to_string(n));
  }
  std::set<Digit> seen;
  for (const Digit& d : digits_) {
    if (d.a < 1 || d.a > m || d.b < 1 || d.b > n) {
      throw DomainError("digit " + to_string(d) + " outside the " + std::to_string(m) + "x" +
                        std::to_string(n) + " grid");
    }
    if (!seen.insert(d).second) throw DomainError("repeated digit " + to_string(d));
  }
}

Alphabet Alphabet::full(int m, int n) {
  std::vector<Digit> all;
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= n; ++b) all.push_back({a, b});
  return Alphabet(m, n, std::move(all));
}

std::optional<Symbol> Alphabet::find(Digit d) const {
  const auto it = std::find(digits_.begin(), digits_.end(), d);
  if (it == digits_.end()) return std::nullopt;
  return static_cast<Symbol>(it - digits_.begin());
}

std::vector<int> Alphabet::occupied_columns() const {
  std::vector<int> cols;
  for (const Digit& d : digits_) cols.push_back(d.a);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

std::string Alphabet::symbol_text(LabelKind kind, Symbol s) const {
  if (kind == LabelKind::column) return std::to_string(s + 1);
  return to_string(digit(s));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<int> to_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<Digit> parse_digit(std::string_view text) {
  text = trim(text);
  if (text.size() < 5 || text.front() != '(' || text.back() != ')') return std::nullopt;
  text = text.substr(1, text.size() - 2);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  const auto a = to_int(text.substr(0, comma));
  const auto b = to_int(text.substr(comma + 1));
  if (!a || !b) return std::nullopt;
  return Digit{*a, *b};
}

std::optional<std::vector<Digit>> parse_digit_list(std::string_view text) {
  std::vector<Digit> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    if (c != '(') return std::nullopt;
    const auto close = text.find(')', i);
    if (close == std::string_view::npos) return std::nullopt;
    const auto d = parse_digit(text.substr(i, close - i + 1));
    if (!d) return std::nullopt;
    out.push_back(*d);
    i = close + 1;
  }
  return out;
}

Word project_word(const Alphabet& alphabet, const Word& word) {
  Word out;
  out.reserve(word.size());
  for (Symbol s : word) out.push_back(alphabet.column_of(s));
  return out;
}

std::string word_text(const Alphabet& alphabet, LabelKind kind, const Word& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (kind == LabelKind::column && i) out += ' ';
    out += alphabet.symbol_text(kind, word[i]);
  }
  return out;
}

}  // namespace boxdim
