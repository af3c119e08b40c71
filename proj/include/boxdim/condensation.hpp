#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "boxdim/presentation.hpp"

namespace boxdim {

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Tarjan labelling: component id per vertex, ids in reverse topological
/// order (a sink component gets id 0). Iterative, so deep graphs are fine.
std::vector<std::size_t> scc_labels(const Adjacency& adjacency, std::size_t* component_count);

/// Irreducible components G_1..G_k of a presentation with their reachability
/// order. Components are numbered topologically (an edge never runs from a
/// higher to a lower index); ties go to the component holding the earliest
/// declared vertex.
struct Condensation {
  std::vector<std::vector<std::size_t>> components;  // sorted vertex indices
  std::vector<std::pair<std::size_t, std::size_t>> dag_edges;
  std::vector<std::vector<std::size_t>> up_sets;    // {i}^+, contains i
  std::vector<std::vector<std::size_t>> down_sets;  // {i}^-, contains i
  /// Component per vertex; -1 for vertices on no cycle.
  std::vector<long> component_of;

  std::size_t size() const { return components.size(); }
  bool is_source(std::size_t i) const { return up_sets.at(i).size() == components.size(); }
  bool is_sink(std::size_t i) const { return down_sets.at(i).size() == components.size(); }
};

/// Strongly connected components carrying at least one edge. A single vertex
/// without a self-loop is not a component. dag_edges join i to j when some
/// path leaves G_i and reaches G_j through vertices outside every component.
Condensation irreducible_components(const Presentation& p);

/// Condensation DAG in the presentation grammar, labels omitted.
std::string condensation_dump(const Presentation& p, const Condensation& c);

}  // namespace boxdim
