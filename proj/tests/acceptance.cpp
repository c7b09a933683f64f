// Acceptance suite: one PASS/FAIL line per criterion, exit status = number of
// failed criteria. `acceptance --long` adds the optional n = 1000 scaling run.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tcec/tcec.hpp"

namespace {

using namespace tcec;
using clock_type = std::chrono::steady_clock;
namespace fs = std::filesystem;

int failures = 0;

void report(const char* id, const char* title, bool pass, const std::string& detail) {
  std::printf("[%s] %s %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Corpus {
  std::vector<GenSpec> specs;
  std::vector<FcmGraph> graphs;
};

// 252 graphs: every n in [3, 9] crossed with densities 0.2 .. 1.0, four times.
Corpus build_corpus() {
  const double densities[] = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  Corpus c;
  for (std::size_t i = 0; i < 252; ++i) {
    const std::size_t n = 3 + i % 7;
    const double d = densities[(i / 7) % 9];
    c.specs.push_back({n, d, derive_seed(2024, n, d, i)});
    c.graphs.push_back(generate(c.specs.back()));
  }
  return c;
}

void criterion_oracle_equivalence(const Corpus& corpus) {
  const auto t0 = clock_type::now();
  std::size_t pairs = 0, mismatches = 0;
  for (const FcmGraph& g : corpus.graphs) {
    TotalEffectSolver solver(g);
    for (std::uint32_t s = 0; s < g.size(); ++s) {
      for (std::uint32_t t = 0; t < g.size(); ++t) {
        if (s == t) continue;
        const ConceptId a(s), b(t);
        const auto bin = solver.binary(a, b);
        const auto lin = solver.linear(a, b);
        const auto exh = total_effect_exhaustive(g, a, b, false);
        ++pairs;
        if (!(bin.value == lin.value && lin.value == exh.value &&
              bin.path_found == lin.path_found && lin.path_found == exh.path_found)) {
          ++mismatches;
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  report("AC1", "oracle equivalence", mismatches == 0 && corpus.graphs.size() >= 200 && elapsed < 120.0,
         fmt("%zu graphs, %zu ordered pairs, %zu mismatches, %.2f s (limit 120 s)",
             corpus.graphs.size(), pairs, mismatches, elapsed));
}

void criterion_sample_golden() {
  const FcmGraph g = testing::sample_map();
  using testing::C;
  bool ok = true;
  std::string detail;
  auto expect = [&](ConceptId s, ConceptId t, double value, bool found) {
    TotalEffectSolver solver(g);
    for (const auto& r : {solver.binary(s, t), solver.linear(s, t),
                          total_effect_exhaustive(g, s, t, false)}) {
      if (r.value != value || r.path_found != found) {
        ok = false;
        detail += fmt(" T(C%u,C%u)=%g", s.value + 1, t.value + 1, r.value);
      }
    }
  };
  expect(C(1), C(3), 0.6, true);
  expect(C(2), C(3), 0.6, true);
  expect(C(4), C(3), 0.36, true);
  expect(C(4), C(1), 0.15, true);
  expect(C(1), C(2), 0.0, false);
  expect(C(4), C(2), -0.25, true);
  const auto to_c3 = total_effects_to_target(g, C(3), Method::Binary);
  ok = ok && to_c3.size() == 3 && to_c3[0].value == 0.6 && to_c3[1].value == 0.6 &&
       to_c3[2].value == 0.36;
  report("AC2", "four-concept golden fixture", ok,
         ok ? "to C3 = (0.6, 0.6, 0.36); T(C4,C1)=0.15; T(C1,C2)=0 no path; T(C4,C2)=-0.25"
            : "mismatch:" + detail);
}

void criterion_bottleneck(const Corpus& corpus) {
  std::size_t checked = 0, violations = 0;
  for (const FcmGraph& g : corpus.graphs) {
    TotalEffectSolver solver(g);
    PrefixSubgraphView view(solver.sorted(), g.size());
    for (std::uint32_t s = 0; s < g.size(); ++s) {
      for (std::uint32_t t = 0; t < g.size(); ++t) {
        if (s == t) continue;
        const auto r = solver.binary(ConceptId(s), ConceptId(t));
        if (!r.path_found) continue;
        ++checked;
        const std::size_t k = *r.critical_index;
        view.reset(k);
        const bool at = reachable(view, ConceptId(s), ConceptId(t));
        view.reset(k - 1);
        const bool before = reachable(view, ConceptId(s), ConceptId(t));
        if (!at || before || r.value != solver.sorted().weight_at_prefix(k)) ++violations;
      }
    }
  }
  report("AC3", "bottleneck characterization", violations == 0 && checked > 0,
         fmt("%zu path-found pairs, %zu violations", checked, violations));
}

double mean_of(const bench::Summary& s, bench::Algorithm a, std::size_t n, double d) {
  for (const auto& c : s.cells) {
    if (c.algorithm == a && c.n == n && c.density == d) return c.mean_s;
  }
  return std::nan("");
}

void criteria_exhaustive_timing() {
  bench::BenchPlan plan;
  plan.algorithms = {bench::Algorithm::Binary, bench::Algorithm::Exhaustive};
  plan.sizes = {12};
  plan.densities = {0.5, 1.0};
  plan.trials = 10;
  plan.base_seed = 12;
  plan.solve_budget = std::chrono::duration<double>(1800.0);
  const auto t0 = clock_type::now();
  const auto records = bench::run_plan(plan);
  const double total = seconds_since(t0);
  const auto summary = bench::summarize(records);
  std::size_t exceeded = 0;
  for (const auto& c : summary.cells) exceeded += c.exceeded;

  const double bin = mean_of(summary, bench::Algorithm::Binary, 12, 1.0);
  const double exh = mean_of(summary, bench::Algorithm::Exhaustive, 12, 1.0);
  const double exh_half = mean_of(summary, bench::Algorithm::Exhaustive, 12, 0.5);
  const double speedup = exh / bin;
  report("AC4", "relative speedup, dense n=12",
         exceeded == 0 && speedup >= 100.0 && total <= 45 * 60.0,
         fmt("binary %.3g s vs exhaustive %.3g s mean over 10 trials: %.0fx (need >= 100x); "
             "experiment %.1f s (limit 2700 s)",
             bin, exh, speedup, total));
  const double spike = exh / exh_half;
  report("AC5", "exhaustive density spike, n=12", exceeded == 0 && spike >= 10.0,
         fmt("exhaustive mean %.3g s at density 1.0 vs %.3g s at 0.5: %.0fx (need >= 10x)", exh,
             exh_half, spike));
}

double coefficient_of_variation(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size() - 1);
  return std::sqrt(var) / mean;
}

void criterion_variability() {
  bench::BenchPlan plan;
  plan.algorithms = {bench::Algorithm::Binary, bench::Algorithm::Linear};
  plan.sizes = {300};
  plan.densities = {1.0};
  plan.trials = 20;
  plan.base_seed = 300;
  const auto records = bench::run_plan(plan);
  std::vector<double> bin, lin;
  for (const auto& r : records) {
    (r.algorithm == bench::Algorithm::Binary ? bin : lin).push_back(r.elapsed_s);
  }
  const double cv_bin = coefficient_of_variation(bin);
  const double cv_lin = coefficient_of_variation(lin);
  report("AC6", "linear-search variability, dense n=300", bin.size() >= 20 && cv_lin > cv_bin,
         fmt("CV linear %.3f vs CV binary %.3f over %zu trials", cv_lin, cv_bin, bin.size()));
}

void criterion_scaling(std::size_t n, double limit_s, const char* id) {
  const FcmGraph g = generate({n, 1.0, 500});
  const auto t0 = clock_type::now();
  const auto results =
      total_effects_to_target(g, ConceptId(static_cast<std::uint32_t>(n - 1)), Method::Binary);
  const double elapsed = seconds_since(t0);
  std::size_t found = 0;
  for (const auto& r : results) found += r.path_found;
  report(id, n == 500 ? "scaling, dense n=500" : "scaling, dense n=1000 (long run)",
         elapsed < limit_s && found == n - 1,
         fmt("%zu sources to C%zu on %zu edges in %.2f s (limit %.0f s)", results.size(), n - 1,
             g.edge_count(), elapsed, limit_s));
}

void criterion_dynamics() {
  const ActivationSpec sigmoid{ActivationKind::Sigmoid, 1.0};
  bool zero_ok = true;
  for (std::size_t n : {1u, 4u, 9u}) {
    const FcmGraph zero = from_dense_matrix(WeightMatrix(n));
    StateVector s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<double>(i % 3) / 2.0;
    const StateVector once = step(zero, s, sigmoid);
    for (double x : once) zero_ok = zero_ok && x == 0.5;
    zero_ok = zero_ok && step(zero, once, sigmoid) == once;
    const auto run = simulate(zero, StateVector(n, 0.5), {sigmoid});
    zero_ok = zero_ok && run.status == SimulationStatus::FixedPoint && run.fixed_point_at == 1u;
  }

  const FcmGraph sample = testing::sample_map();
  const auto run = simulate(sample, {1, 1, 1, 1}, {sigmoid, 100, 1e-5});
  const bool fixed = run.status == SimulationStatus::FixedPoint;
  const double residual = max_norm_distance(step(sample, run.final_state(), sigmoid), run.final_state());

  double worst = 0.0;
  std::uint64_t seed = 8;
  for (int trial = 0; trial < 100; ++trial) {
    const FcmGraph g = generate({3 + static_cast<std::size_t>(trial % 40), 0.1 + 0.009 * trial,
                                 mix64(seed++)});
    StateVector s(g.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<double>((i * 7 + trial) % 11) / 10.0;
    const auto a = step(g, s, sigmoid);
    const auto b = step_matrix_form(g, s, sigmoid);
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  report("AC8", "dynamics", zero_ok && fixed && residual < 1e-5 && worst <= 1e-12,
         fmt("zero-map one-step 0.5 fixed point %s; sigmoid run %s at t=%zu, residual %.2e "
             "(< 1e-5); adjacency vs matrix max diff %.2e over 100 maps (<= 1e-12)",
             zero_ok ? "exact" : "WRONG", fixed ? "fixed point" : "NOT converged",
             run.iterations_run, residual, worst));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion_determinism() {
  const fs::path dir = fs::temp_directory_path() / ("tcec_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = TCEC_CLI_PATH;
  auto generate_to = [&](const std::string& name) {
    const std::string cmd = cli + " generate --n 200 --density 0.35 --seed 913 --out " +
                            (dir / name).string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  const bool ran = generate_to("first.csv") && generate_to("second.csv");
  const std::string first = slurp(dir / "first.csv");
  const bool identical = ran && !first.empty() && first == slurp(dir / "second.csv");

  bench::BenchPlan plan;
  plan.algorithms = {bench::Algorithm::Binary, bench::Algorithm::Linear,
                     bench::Algorithm::ExhaustivePruned};
  plan.sizes = {8, 10};
  plan.densities = {0.3, 0.7, 1.0};
  plan.trials = 4;
  bench::write_outputs(dir.string(), bench::run_plan(plan));
  std::ifstream raw(dir / "bench.csv");
  std::ostringstream rederived;
  bench::write_summary_csv(rederived, bench::summarize(bench::read_bench_csv(raw)));
  const bool rederivable = rederived.str() == slurp(dir / "summary.csv");
  fs::remove_all(dir);
  report("AC9", "determinism", identical && rederivable,
         fmt("generate twice: %s (%zu bytes); summary from raw records: %s",
             identical ? "byte-identical" : "DIFFERENT", first.size(),
             rederivable ? "bit-identical" : "DIFFERENT"));
}

}  // namespace

int main(int argc, char** argv) {
  const bool long_run = argc > 1 && std::string(argv[1]) == "--long";
  const Corpus corpus = build_corpus();
  criterion_oracle_equivalence(corpus);
  criterion_sample_golden();
  criterion_bottleneck(corpus);
  criteria_exhaustive_timing();
  criterion_variability();
  criterion_scaling(500, 300.0, "AC7");
  if (long_run) criterion_scaling(1000, 3600.0, "AC7b");
  criterion_dynamics();
  criterion_determinism();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
