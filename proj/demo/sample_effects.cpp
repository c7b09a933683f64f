// Total effects, path enumeration and a short simulation on the four-concept
// example map (C1..C4 are indices 0..3).

#include <cstdio>

#include "tcec/tcec.hpp"

int main() {
  tcec::WeightMatrix w(4);
  w(0, 2) = 0.6;
  w(1, 0) = 0.68;
  w(1, 3) = -0.7;
  w(2, 0) = 0.15;
  w(3, 1) = -0.25;
  w(3, 2) = 0.36;
  const tcec::FcmGraph g = tcec::from_dense_matrix(w);

  std::printf("effects on C3:\n");
  for (const auto& r : tcec::total_effects_to_target(g, tcec::ConceptId(2), tcec::Method::Binary)) {
    std::printf("  C%u -> C3: %+.2f%s\n", r.source.value + 1, r.value,
                r.path_found ? "" : " (no path)");
  }

  std::printf("paths C2 -> C3:\n");
  for (const auto& p : tcec::enumerate_path_effects(g, tcec::ConceptId(1), tcec::ConceptId(2))) {
    std::printf("  ");
    for (auto c : p.path) std::printf("C%u ", c.value + 1);
    std::printf("weakest link %+.2f\n", p.indirect_effect);
  }

  const auto run = tcec::simulate(g, {1, 1, 1, 1}, {{tcec::ActivationKind::Sigmoid, 1.0}});
  std::printf("sigmoid inference from (1,1,1,1): %s after %zu steps\n  ",
              run.status == tcec::SimulationStatus::FixedPoint ? "fixed point" : "no fixed point",
              run.iterations_run);
  for (double x : run.final_state()) std::printf("%.5f ", x);
  std::printf("\n");
}
