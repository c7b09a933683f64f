#pragma once

// Cross-checks the binary, linear and exhaustive solvers pair by pair on
// seeded random graphs and reports every disagreement with enough detail to
// replay it.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tcec/effect.hpp"
#include "tcec/graph.hpp"
#include "tcec/oracle.hpp"
#include "tcec/solver.hpp"
#include "tcec/synthgen.hpp"

namespace tcec {

struct VerifyConfig {
  std::size_t graphs = 200;
  std::uint64_t base_seed = 1;
  std::size_t min_n = 3;
  std::size_t max_n = 9;
  std::vector<double> densities{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
};

struct Mismatch {
  std::size_t graph_index = 0;
  GenSpec spec;
  ConceptId source;
  ConceptId target;
  std::string reason;
  TotalEffectResult binary;
  TotalEffectResult linear;
  TotalEffectResult exhaustive;
};

struct VerifyReport {
  std::size_t graphs = 0;
  std::size_t pairs = 0;
  std::size_t paths_found = 0;
  std::vector<Mismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Graph i cycles through every (n, density) combination of the config.
inline GenSpec verify_spec(const VerifyConfig& config, std::size_t i) {
  const std::size_t sizes = config.max_n - config.min_n + 1;
  GenSpec spec;
  spec.n = config.min_n + i % sizes;
  spec.density = config.densities[(i / sizes) % config.densities.size()];
  spec.seed = derive_seed(config.base_seed, spec.n, spec.density, i);
  return spec;
}

/// `perturb` lets a caller corrupt the binary result before comparison
/// (exercises the mismatch path); leave empty for a real run.
inline VerifyReport verify_equivalence(
    const VerifyConfig& config,
    const std::function<void(TotalEffectResult&)>& perturb = {}) {
  if (config.min_n < 2 || config.max_n < config.min_n || config.densities.empty()) {
    throw Error(ErrorCode::InvalidArgument, "invalid verification config");
  }
  VerifyReport report;
  for (std::size_t i = 0; i < config.graphs; ++i) {
    const GenSpec spec = verify_spec(config, i);
    const FcmGraph g = generate(spec);
    TotalEffectSolver solver(g);
    ExhaustiveSolver oracle(g, {});
    ExhaustiveSolver pruned(g, {.prune = true});
    PrefixSubgraphView view(solver.sorted(), g.size());
    BreadthFirstProbe probe(g.size());
    ++report.graphs;

    for (std::uint32_t s = 0; s < g.size(); ++s) {
      for (std::uint32_t t = 0; t < g.size(); ++t) {
        if (s == t) continue;
        const ConceptId src(s), dst(t);
        TotalEffectResult b = solver.binary(src, dst);
        if (perturb) perturb(b);
        const TotalEffectResult l = solver.linear(src, dst);
        const TotalEffectResult x = oracle.solve(src, dst);
        const TotalEffectResult p = pruned.solve(src, dst);
        ++report.pairs;
        if (b.path_found) ++report.paths_found;

        std::string reason;
        if (!(b == l)) reason = "binary != linear";
        else if (!(b == x)) reason = "binary != exhaustive";
        else if (p.value != x.value || p.path_found != x.path_found) reason = "pruned != exhaustive";
        else if (b.path_found) {
          const std::size_t k = *b.critical_index;
          view.reset(k);
          const bool at_k = reachable(view, src, dst, probe);
          view.reset(k - 1);
          const bool before_k = reachable(view, src, dst, probe);
          if (!at_k || before_k) reason = "critical prefix is not minimal";
        }
        if (!reason.empty()) report.mismatches.push_back({i, spec, src, dst, reason, b, l, x});
      }
    }
  }
  return report;
}

}  // namespace tcec
