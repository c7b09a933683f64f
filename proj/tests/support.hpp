#pragma once

// Shared fixtures and test-only oracles. The oracles here deliberately avoid
// the library's sorted edge list and prefix views.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "tcec/graph.hpp"

namespace tcec::testing {

// The four-concept example map; C1..C4 are concepts 0..3.
inline WeightMatrix sample_matrix() {
  WeightMatrix m(4);
  m(0, 2) = 0.6;    // C1 -> C3
  m(1, 0) = 0.68;   // C2 -> C1
  m(1, 3) = -0.7;   // C2 -> C4
  m(2, 0) = 0.15;   // C3 -> C1
  m(3, 1) = -0.25;  // C4 -> C2
  m(3, 2) = 0.36;   // C4 -> C3
  return m;
}

inline FcmGraph sample_map() { return from_dense_matrix(sample_matrix()); }

constexpr ConceptId C(std::uint32_t one_based) { return ConceptId(one_based - 1); }

/// Random graph whose weights come from a small grid, so ties are common.
inline FcmGraph random_tied_graph(std::mt19937_64& rng, std::size_t n, double p) {
  static constexpr double grid[] = {-1.0, -0.75, -0.5, -0.25, 0.25, 0.5, 0.75, 1.0};
  std::bernoulli_distribution keep(p);
  std::uniform_int_distribution<int> pick(0, 7);
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i != j && keep(rng)) edges.push_back({ConceptId(i), ConceptId(j), grid[pick(rng)]});
    }
  }
  return FcmGraph::from_edges(n, std::move(edges));
}

/// Max-min closure over arbitrary walks (Floyd-Warshall on the bottleneck
/// semiring). Entry is nullopt when no walk exists.
inline std::vector<std::vector<std::optional<double>>> widest_walks(const FcmGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::optional<double>>> best(n, std::vector<std::optional<double>>(n));
  for (const Edge& e : g.edges()) best[e.source.index()][e.target.index()] = e.weight;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!best[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!best[k][j]) continue;
        const double through = std::min(*best[i][k], *best[k][j]);
        if (!best[i][j] || through > *best[i][j]) best[i][j] = through;
      }
    }
  }
  return best;
}

/// Largest weight threshold w such that edges with weight >= w connect
/// source to target, by plain DFS per distinct weight value.
inline std::optional<double> threshold_oracle(const FcmGraph& g, ConceptId s, ConceptId t) {
  std::set<double, std::greater<>> values;
  for (const Edge& e : g.edges()) values.insert(e.weight);
  for (double w : values) {
    std::vector<char> seen(g.size(), 0);
    std::vector<ConceptId> stack{s};
    seen[s.index()] = 1;
    while (!stack.empty()) {
      const ConceptId u = stack.back();
      stack.pop_back();
      for (const OutEdge& oe : g.out_edges(u)) {
        if (oe.weight < w || seen[oe.target.index()]) continue;
        if (oe.target == t) return w;
        seen[oe.target.index()] = 1;
        stack.push_back(oe.target);
      }
    }
  }
  return std::nullopt;
}

}  // namespace tcec::testing
