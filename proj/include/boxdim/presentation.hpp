#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "boxdim/alphabet.hpp"

namespace boxdim {

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  Symbol label = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite directed labelled multigraph presenting a one-sided sofic shift.
///
/// Construction prunes, iteratively, every vertex without an outgoing edge, so
/// each finite path extends to an infinite one. Surviving vertices keep their
/// declaration order; edges are stored sorted by (source, target, label).
/// Parallel edges with equal labels are kept.
class Presentation {
 public:
  /// Throws DomainError on labels outside the symbol table and when pruning
  /// leaves no vertex.
  Presentation(Alphabet alphabet, LabelKind kind, std::vector<std::string> vertex_names,
               std::vector<Edge> edges);

  const Alphabet& alphabet() const { return alphabet_; }
  LabelKind kind() const { return kind_; }
  std::size_t vertex_count() const { return names_.size(); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t symbol_count() const { return alphabet_.symbol_count(kind_); }

  /// Indices into edges() of the edges leaving `v`.
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_.at(v); }

  friend bool operator==(const Presentation& x, const Presentation& y) {
    return x.alphabet_ == y.alphabet_ && x.kind_ == y.kind_ && x.names_ == y.names_ &&
           x.edges_ == y.edges_;
  }

 private:
  Alphabet alphabet_;
  LabelKind kind_;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Reads the text format:
///
///     bases 3 5            # m n
///     digits (1,1) (2,3)   # optional; defaults to the labels used
///     vertex v1
///     edge v1 v1 (1,1)
///
/// Column presentations use bare integers as labels. Throws ParseError (with
/// line number) on syntax errors, undeclared vertices and out-of-alphabet
/// labels, and when the graph is empty after pruning.
Presentation parse_presentation(std::string_view text);

/// Inverse of parse_presentation on pruned presentations.
std::string serialize(const Presentation& p);

/// Replaces each label (a,b) by its column a and merges parallel edges that
/// become identical.
Presentation project(const Presentation& p);

/// Subgraph induced by `vertices` (pruned again).
Presentation induced(const Presentation& p, const std::vector<std::size_t>& vertices);

/// Presentation with `vertices` and their incident edges deleted (pruned again).
Presentation without_vertices(const Presentation& p, const std::vector<std::size_t>& vertices);

/// All distinct label sequences of length-`length` paths, sorted.
/// Throws BudgetExceeded once more than `cap` (word, end vertex) pairs are live.
std::vector<Word> enumerate_words(const Presentation& p, std::size_t length,
                                  std::size_t cap = kDefaultEnumerationCap);

}  // namespace boxdim
