#include "boxdim/determinize.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>

#include "boxdim/errors.hpp"

namespace boxdim {

VertexSet VertexSet::all(std::size_t universe) {
  VertexSet s(universe);
  for (std::size_t v = 0; v < universe; ++v) s.insert(v);
  return s;
}

VertexSet VertexSet::single(std::size_t universe, std::size_t v) {
  VertexSet s(universe);
  s.insert(v);
  return s;
}

bool VertexSet::empty() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t VertexSet::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::size_t> VertexSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    std::uint64_t w = bits_[i];
    while (w) {
      out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t VertexSet::hash() const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (std::uint64_t w : bits_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::optional<std::size_t> DeterministicPresentation::next(std::size_t state, Symbol label) const {
  const auto& row = transitions.at(state);
  const auto it = std::lower_bound(row.begin(), row.end(), label,
                                   [](const auto& t, Symbol s) { return t.first < s; });
  if (it == row.end() || it->first != label) return std::nullopt;
  return it->second;
}

namespace {

class SubsetBuilder {
 public:
  SubsetBuilder(const Presentation& p, std::size_t cap) : p_(p), cap_(cap) {
    d_.symbol_count = p.symbol_count();
  }

  std::size_t add(const VertexSet& s) {
    const auto [it, fresh] = index_.try_emplace(s, d_.states.size());
    if (fresh) {
      if (d_.states.size() >= cap_) {
        throw BudgetExceeded("determinization exceeds the state cap of " + std::to_string(cap_) +
                             "; use brute-force counting or raise --state-cap");
      }
      d_.states.push_back(s);
      d_.transitions.emplace_back();
      pending_.push_back(it->second);
    }
    return it->second;
  }

  void run() {
    const std::size_t ns = d_.symbol_count;
    std::vector<VertexSet> targets(ns, VertexSet(p_.vertex_count()));
    std::vector<bool> used(ns, false);
    while (!pending_.empty()) {
      const std::size_t s = pending_.front();
      pending_.pop_front();
      std::fill(used.begin(), used.end(), false);
      for (std::size_t v : d_.states[s].members()) {
        for (std::size_t ei : p_.out_edges(v)) {
          const Edge& e = p_.edges()[ei];
          if (!used[e.label]) {
            used[e.label] = true;
            targets[e.label] = VertexSet(p_.vertex_count());
          }
          targets[e.label].insert(e.target);
        }
      }
      std::vector<std::pair<Symbol, std::size_t>> row;
      for (std::size_t a = 0; a < ns; ++a) {
        if (used[a]) row.push_back({static_cast<Symbol>(a), add(targets[a])});
      }
      d_.transitions[s] = std::move(row);
    }
  }

  DeterministicPresentation take() { return std::move(d_); }

 private:
  const Presentation& p_;
  std::size_t cap_;
  DeterministicPresentation d_;
  std::unordered_map<VertexSet, std::size_t, VertexSetHash> index_;
  std::deque<std::size_t> pending_;
};

}  // namespace

DeterministicPresentation determinize(const Presentation& p, std::size_t state_cap) {
  SubsetBuilder b(p, state_cap);
  const std::size_t root = b.add(VertexSet::all(p.vertex_count()));
  b.run();
  std::vector<std::size_t> singles;
  for (std::size_t v = 0; v < p.vertex_count(); ++v) {
    singles.push_back(b.add(VertexSet::single(p.vertex_count(), v)));
    b.run();
  }
  auto d = b.take();
  d.root = root;
  d.initial_states = std::move(singles);
  return d;
}

DeterministicPresentation determinize_from(const Presentation& p, const VertexSet& root,
                                           std::size_t state_cap) {
  if (root.universe() != p.vertex_count()) throw DomainError("root subset has the wrong universe");
  SubsetBuilder b(p, state_cap);
  const std::size_t r = b.add(root);
  b.run();
  auto d = b.take();
  d.root = r;
  return d;
}

DeterministicPresentation determinize_roots(const Presentation& p, const std::vector<VertexSet>& roots,
                                            std::vector<std::size_t>* root_states, std::size_t state_cap) {
  if (roots.empty()) throw DomainError("no root subsets given");
  SubsetBuilder b(p, state_cap);
  std::vector<std::size_t> ids;
  for (const VertexSet& r : roots) {
    if (r.universe() != p.vertex_count()) throw DomainError("root subset has the wrong universe");
    ids.push_back(b.add(r));
    b.run();
  }
  auto d = b.take();
  d.root = ids.front();
  if (root_states) *root_states = std::move(ids);
  return d;
}

std::vector<BigInt> follower_counts(const DeterministicPresentation& d, std::size_t length) {
  std::vector<BigInt> cur(d.size(), 1), next(d.size(), 0);
  for (std::size_t t = 0; t < length; ++t) {
    for (std::size_t s = 0; s < d.size(); ++s) {
      BigInt sum = 0;
      for (const auto& [label, u] : d.transitions[s]) sum += cur[u];
      next[s] = std::move(sum);
    }
    std::swap(cur, next);
  }
  return cur;
}

std::vector<std::size_t> reachable_states(const DeterministicPresentation& d,
                                          const std::vector<std::size_t>& from) {
  std::vector<bool> seen(d.size(), false);
  std::vector<std::size_t> todo;
  for (std::size_t s : from) {
    if (!seen[s]) {
      seen[s] = true;
      todo.push_back(s);
    }
  }
  while (!todo.empty()) {
    const std::size_t s = todo.back();
    todo.pop_back();
    for (const auto& [label, t] : d.transitions[s]) {
      if (!seen[t]) {
        seen[t] = true;
        todo.push_back(t);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < d.size(); ++s)
    if (seen[s]) out.push_back(s);
  return out;
}

namespace {

// Path counts from the root after `length` steps, per state.
std::vector<BigInt> layer(const DeterministicPresentation& d, std::size_t length,
                          std::vector<BigInt>* totals) {
  std::vector<BigInt> cur(d.size(), 0), next(d.size(), 0);
  cur[d.root] = 1;
  if (totals) totals->push_back(1);
  for (std::size_t t = 0; t < length; ++t) {
    std::fill(next.begin(), next.end(), BigInt(0));
    for (std::size_t s = 0; s < d.size(); ++s) {
      if (cur[s] == 0) continue;
      for (const auto& [label, u] : d.transitions[s]) next[u] += cur[s];
    }
    std::swap(cur, next);
    if (totals) {
      BigInt sum = 0;
      for (const auto& c : cur) sum += c;
      totals->push_back(sum);
    }
  }
  return cur;
}

}  // namespace

std::vector<BigInt> count_words(const DeterministicPresentation& d, std::size_t max_length) {
  std::vector<BigInt> totals;
  layer(d, max_length, &totals);
  return totals;
}

BigInt count_words_accepted(const DeterministicPresentation& d, std::size_t length,
                            const std::function<bool(const VertexSet&)>& accept) {
  const auto last = layer(d, length, nullptr);
  BigInt sum = 0;
  for (std::size_t s = 0; s < d.size(); ++s)
    if (last[s] != 0 && accept(d.states[s])) sum += last[s];
  return sum;
}

}  // namespace boxdim
