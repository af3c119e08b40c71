#include "boxdim/condensation.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace boxdim {

std::vector<std::size_t> scc_labels(const Adjacency& adjacency, std::size_t* component_count) {
  const std::size_t n = adjacency.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), label(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (vertex, next child position)
  std::size_t counter = 0;
  std::size_t components = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos < adjacency[v].size()) {
        const std::size_t w = adjacency[v][pos++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          label[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }
  if (component_count) *component_count = components;
  return label;
}

Condensation irreducible_components(const Presentation& p) {
  const std::size_t nv = p.vertex_count();
  Adjacency adj(nv);
  std::vector<bool> self_loop(nv, false);
  for (const Edge& e : p.edges()) {
    adj[e.source].push_back(e.target);
    if (e.source == e.target) self_loop[e.source] = true;
  }
  std::size_t count = 0;
  const auto label = scc_labels(adj, &count);

  std::vector<std::vector<std::size_t>> members(count);
  for (std::size_t v = 0; v < nv; ++v) members[label[v]].push_back(v);
  std::vector<bool> nontrivial(count, false);
  for (std::size_t c = 0; c < count; ++c) {
    nontrivial[c] = members[c].size() > 1 || self_loop[members[c].front()];
  }

  // Kahn's algorithm on all SCCs, ties to the smallest member vertex.
  std::vector<std::vector<std::size_t>> succ(count);
  std::vector<std::size_t> indeg(count, 0);
  for (const Edge& e : p.edges()) {
    const std::size_t a = label[e.source], b = label[e.target];
    if (a != b) {
      succ[a].push_back(b);
      ++indeg[b];
    }
  }
  using Item = std::pair<std::size_t, std::size_t>;  // (min vertex, scc)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  for (std::size_t c = 0; c < count; ++c)
    if (indeg[c] == 0) ready.push({members[c].front(), c});
  std::vector<long> order_of(count, -1);
  Condensation out;
  out.component_of.assign(nv, -1);
  while (!ready.empty()) {
    const std::size_t c = ready.top().second;
    ready.pop();
    if (nontrivial[c]) {
      order_of[c] = static_cast<long>(out.components.size());
      for (std::size_t v : members[c]) out.component_of[v] = order_of[c];
      out.components.push_back(members[c]);
    }
    for (std::size_t d : succ[c])
      if (--indeg[d] == 0) ready.push({members[d].front(), d});
  }

  const std::size_t k = out.components.size();
  out.up_sets.assign(k, {});
  out.down_sets.assign(k, {});
  for (std::size_t i = 0; i < k; ++i) {
    // Full reachability, and the transient-only frontier for dag_edges.
    std::vector<bool> seen(nv, false);
    std::vector<std::size_t> todo = out.components[i];
    for (std::size_t v : todo) seen[v] = true;
    std::vector<bool> reached(k, false);
    while (!todo.empty()) {
      const std::size_t v = todo.back();
      todo.pop_back();
      for (std::size_t w : adj[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        todo.push_back(w);
      }
    }
    for (std::size_t v = 0; v < nv; ++v)
      if (seen[v] && out.component_of[v] >= 0) reached[static_cast<std::size_t>(out.component_of[v])] = true;
    for (std::size_t j = 0; j < k; ++j) {
      if (reached[j]) {
        out.up_sets[i].push_back(j);
        out.down_sets[j].push_back(i);
      }
    }

    std::vector<bool> visited(nv, false);
    std::vector<std::size_t> walk = out.components[i];
    std::vector<bool> direct(k, false);
    while (!walk.empty()) {
      const std::size_t v = walk.back();
      walk.pop_back();
      for (std::size_t w : adj[v]) {
        const long cw = out.component_of[w];
        if (cw == static_cast<long>(i)) continue;
        if (cw >= 0) {
          direct[static_cast<std::size_t>(cw)] = true;
        } else if (!visited[w]) {
          visited[w] = true;
          walk.push_back(w);
        }
      }
    }
    for (std::size_t j = 0; j < k; ++j)
      if (direct[j]) out.dag_edges.push_back({i, j});
  }
  for (auto& d : out.down_sets) std::sort(d.begin(), d.end());
  std::sort(out.dag_edges.begin(), out.dag_edges.end());
  return out;
}

std::string condensation_dump(const Presentation& p, const Condensation& c) {
  std::ostringstream out;
  out << "# condensation: " << c.size() << " components\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    out << "vertex G" << i + 1 << "  #";
    for (std::size_t v : c.components[i]) out << ' ' << p.vertex_names()[v];
    out << '\n';
  }
  for (const auto& [i, j] : c.dag_edges) out << "edge G" << i + 1 << " G" << j + 1 << '\n';
  return out.str();
}

}  // namespace boxdim
