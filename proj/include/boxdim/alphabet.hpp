#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace boxdim {

/// A digit (a, b) of the (m, n) grid, 1-based: a is the column, b the row.
struct Digit {
  int a = 1;
  int b = 1;
  friend auto operator<=>(const Digit&, const Digit&) = default;
};

std::string to_string(Digit d);

/// Index into a symbol table (an alphabet's digit table, or a column 0..m-1).
using Symbol = std::uint32_t;

/// Finite symbol sequence; symbols are indices, never raw digits.
using Word = std::vector<Symbol>;

/// Whether symbols index full digits or only their first coordinate.
enum class LabelKind { digit, column };

/// The bases (m, n) together with a digit set I of Delta_{m,n}.
class Alphabet {
 public:
  Alphabet() = default;
  /// Throws DomainError unless n > m >= 2 and the digits are distinct members of Delta_{m,n}.
  Alphabet(int m, int n, std::vector<Digit> digits);

  /// Alphabet holding every digit of Delta_{m,n} in lexicographic order.
  static Alphabet full(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  const std::vector<Digit>& digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }
  const Digit& digit(Symbol s) const { return digits_.at(s); }
  std::optional<Symbol> find(Digit d) const;

  /// Column symbol (0-based) of a digit symbol.
  Symbol column_of(Symbol s) const { return static_cast<Symbol>(digits_.at(s).a - 1); }
  /// Distinct columns used by the digit set.
  std::vector<int> occupied_columns() const;

  /// Number of symbols for a label kind: #digits, or m for columns.
  std::size_t symbol_count(LabelKind kind) const {
    return kind == LabelKind::digit ? digits_.size() : static_cast<std::size_t>(m_);
  }
  /// Text form of a symbol: "(a,b)" for digits, "a" for columns.
  std::string symbol_text(LabelKind kind, Symbol s) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  int m_ = 2;
  int n_ = 3;
  std::vector<Digit> digits_;
};

/// Parses "(a,b)". Returns nullopt on malformed input.
std::optional<Digit> parse_digit(std::string_view text);

/// Parses a run of digits such as "(1,1)(2,3)" or "(1,1),(2,3)".
std::optional<std::vector<Digit>> parse_digit_list(std::string_view text);

/// Coordinatewise first projection of a digit word.
Word project_word(const Alphabet& alphabet, const Word& word);

std::string word_text(const Alphabet& alphabet, LabelKind kind, const Word& word);

}  // namespace boxdim
