#pragma once

// Seeded random FCMs. Generator version 1:
//   * engine: std::mt19937_64 seeded with GenSpec::seed (its output sequence
//     is fixed by the C++ standard, so seeds reproduce on every platform);
//   * bounded integers: modulo with rejection of the biased low range;
//   * unit reals: top 53 bits of one engine output times 2^-53;
//   * pairs: partial Fisher-Yates over the n(n-1) off-diagonal slots, slot s
//     mapping to source s / (n-1) and target r or r+1 (r = s % (n-1),
//     skipping the diagonal);
//   * weights: drawn per chosen pair in (source, target) order, one output
//     for the sign (top bit) then one unit real u, |w| = delta + u (1 - delta).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tcec/error.hpp"
#include "tcec/graph.hpp"

namespace tcec {

inline constexpr int kGeneratorVersion = 1;

struct GenSpec {
  std::size_t n = 0;
  double density = 1.0;
  std::uint64_t seed = 0;
  double min_magnitude = 1e-3;

  std::size_t slot_count() const { return n < 2 ? 0 : n * (n - 1); }

  /// round(density * n * (n - 1)).
  std::size_t target_edge_count() const {
    return static_cast<std::size_t>(std::llround(density * static_cast<double>(slot_count())));
  }

  void validate() const {
    if (n < 2) throw Error(ErrorCode::InvalidSpec, "need at least 2 concepts");
    if (n > 65536) throw Error(ErrorCode::InvalidSpec, "concept count too large");
    if (!(density > 0.0 && density <= 1.0)) {
      throw Error(ErrorCode::InvalidSpec, "density must lie in (0, 1]");
    }
    if (!(min_magnitude > 0.0 && min_magnitude <= 1.0)) {
      throw Error(ErrorCode::InvalidSpec, "min magnitude must lie in (0, 1]");
    }
    const std::size_t m = target_edge_count();
    if (m < 1 || m > slot_count()) {
      throw Error(ErrorCode::InvalidSpec,
                  "density " + std::to_string(density) + " yields " + std::to_string(m) +
                      " edges for n = " + std::to_string(n));
    }
  }
};

namespace detail {

inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

inline double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

inline FcmGraph generate(const GenSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const std::uint64_t slots = spec.slot_count();
  const std::size_t m = spec.target_edge_count();

  std::vector<std::uint64_t> pool(slots);
  for (std::uint64_t s = 0; s < slots; ++s) pool[s] = s;
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint64_t j = i + detail::bounded(rng, slots - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  std::sort(pool.begin(), pool.end());

  const std::uint64_t row = spec.n - 1;
  const double delta = spec.min_magnitude;
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t s : pool) {
    const auto source = static_cast<std::uint32_t>(s / row);
    auto target = static_cast<std::uint32_t>(s % row);
    if (target >= source) ++target;
    const bool negative = (rng() >> 63) != 0;
    double magnitude = delta + detail::unit_real(rng) * (1.0 - delta);
    magnitude = std::clamp(magnitude, delta, 1.0);
    edges.push_back({ConceptId(source), ConceptId(target), negative ? -magnitude : magnitude});
  }
  return FcmGraph::from_edges(spec.n, std::move(edges));
}

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of one benchmark cell: chained SplitMix64 over base seed, n,
/// density in parts per million, and trial index.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::size_t n, double density,
                                 std::size_t trial) {
  const auto ppm = static_cast<std::uint64_t>(std::llround(density * 1e6));
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ static_cast<std::uint64_t>(n));
  h = mix64(h ^ ppm);
  h = mix64(h ^ static_cast<std::uint64_t>(trial));
  return h;
}

}  // namespace tcec
