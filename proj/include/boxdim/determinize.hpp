#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "boxdim/bigint.hpp"
#include "boxdim/presentation.hpp"

namespace boxdim {

inline constexpr std::size_t kDefaultStateCap = std::size_t{1} << 20;

/// Dynamic bitset over vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_((universe + 63) / 64, 0), universe_(universe) {}

  static VertexSet all(std::size_t universe);
  static VertexSet single(std::size_t universe, std::size_t v);

  void insert(std::size_t v) { bits_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  bool contains(std::size_t v) const { return (bits_[v >> 6] >> (v & 63)) & 1u; }
  bool empty() const;
  std::size_t count() const;
  std::size_t universe() const { return universe_; }
  std::vector<std::size_t> members() const;
  std::size_t hash() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<std::uint64_t> bits_;
  std::size_t universe_ = 0;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

/// Right-resolving automaton from the subset construction. States are vertex
/// subsets; each state has at most one transition per label.
struct DeterministicPresentation {
  std::size_t symbol_count = 0;
  std::vector<VertexSet> states;
  /// Per state, (label, target) sorted by label.
  std::vector<std::vector<std::pair<Symbol, std::size_t>>> transitions;
  /// Singleton states {v}, one per vertex, when built with singletons.
  std::vector<std::size_t> initial_states;
  /// Counting root: the words readable from this state are exactly the
  /// language of the source presentation.
  std::size_t root = 0;

  std::size_t size() const { return states.size(); }
  std::optional<std::size_t> next(std::size_t state, Symbol label) const;
};

/// Subset construction rooted at the full vertex set, plus the closure of the
/// singleton states. Throws BudgetExceeded beyond `state_cap` states.
DeterministicPresentation determinize(const Presentation& p,
                                      std::size_t state_cap = kDefaultStateCap);

/// Subset construction from an arbitrary root subset only.
DeterministicPresentation determinize_from(const Presentation& p, const VertexSet& root,
                                           std::size_t state_cap = kDefaultStateCap);

/// One subset construction shared by several roots; `root_states[i]` is the
/// state of `roots[i]`. `root` of the result is the first of them.
DeterministicPresentation determinize_roots(const Presentation& p, const std::vector<VertexSet>& roots,
                                            std::vector<std::size_t>* root_states,
                                            std::size_t state_cap = kDefaultStateCap);

/// Number of distinct words of length `length` readable from each state.
std::vector<BigInt> follower_counts(const DeterministicPresentation& d, std::size_t length);

/// States reachable from the given ones (including them), ascending.
std::vector<std::size_t> reachable_states(const DeterministicPresentation& d,
                                          const std::vector<std::size_t>& from);

/// Number of distinct words of each length 0..max_length read from `d.root`.
std::vector<BigInt> count_words(const DeterministicPresentation& d, std::size_t max_length);

/// Words of length `length` ending in a state accepted by `accept`.
BigInt count_words_accepted(const DeterministicPresentation& d, std::size_t length,
                            const std::function<bool(const VertexSet&)>& accept);

}  // namespace boxdim
