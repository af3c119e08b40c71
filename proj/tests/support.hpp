#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "boxdim/errors.hpp"
#include "boxdim/presentation.hpp"

namespace boxdim::testing {

inline std::string data_file(const std::string& name) {
  return std::string(BOXDIM_DATA_DIR) + "/" + name;
}

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_file(name));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Presentation load_presentation(const std::string& name) {
  return parse_presentation(read_data(name));
}

inline int uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Alphabet random_alphabet(std::mt19937& rng, int max_digits = 6) {
  const int m = uniform(rng, 2, 3);
  const int n = uniform(rng, m + 1, 5);
  std::vector<Digit> all;
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= n; ++b) all.push_back({a, b});
  std::shuffle(all.begin(), all.end(), rng);
  const int size = uniform(rng, 1, std::min<int>(max_digits, static_cast<int>(all.size())));
  all.resize(static_cast<std::size_t>(size));
  std::sort(all.begin(), all.end());
  return Alphabet(m, n, all);
}

/// Random presentation with at most 6 vertices and 20 edges. When
/// `irreducible`, a spanning cycle is laid down first.
inline Presentation random_presentation(std::mt19937& rng, bool irreducible = false,
                                        int max_digits = 6) {
  for (;;) {
    Alphabet alphabet = random_alphabet(rng, max_digits);
    const int vertices = uniform(rng, 1, 6);
    const int symbols = static_cast<int>(alphabet.size());
    std::vector<std::string> names;
    for (int v = 0; v < vertices; ++v) names.push_back("v" + std::to_string(v));
    std::vector<Edge> edges;
    if (irreducible) {
      for (int v = 0; v < vertices; ++v) {
        edges.push_back({static_cast<std::size_t>(v), static_cast<std::size_t>((v + 1) % vertices),
                         static_cast<Symbol>(uniform(rng, 0, symbols - 1))});
      }
    }
    const int extra = uniform(rng, irreducible ? 0 : 1, 20 - static_cast<int>(edges.size()));
    for (int e = 0; e < extra; ++e) {
      edges.push_back({static_cast<std::size_t>(uniform(rng, 0, vertices - 1)),
                       static_cast<std::size_t>(uniform(rng, 0, vertices - 1)),
                       static_cast<Symbol>(uniform(rng, 0, symbols - 1))});
    }
    try {
      return Presentation(alphabet, LabelKind::digit, names, edges);
    } catch (const DomainError&) {
      // everything pruned; draw again
    }
  }
}

}  // namespace boxdim::testing
