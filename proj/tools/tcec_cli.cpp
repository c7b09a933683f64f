// tcec: total causal effects in fuzzy cognitive maps.
//
//   tcec generate  --n 100 --density 0.3 --seed 7 --out g.csv
//   tcec analyze   --input g.csv --target 99 [--method binary|linear|exhaustive]
//   tcec analyze   --input g.csv --all-pairs --threads 4
//   tcec simulate  --input g.csv --initial a0.csv --activation sigmoid
//   tcec bench     --algorithms binary,linear --sizes 10,100 --out-dir out/
//   tcec verify    --count 200
//
// Exit codes: 0 ok, 1 verification mismatch, 2 input error, 3 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tcec/tcec.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitUsage = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned default_threads() {
  if (const char* env = std::getenv("TCEC_THREADS")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (...) {
    }
  }
  return 1;
}

std::optional<tcec::GraphFormat> parse_format(const std::string& s) {
  if (s == "matrix") return tcec::GraphFormat::Matrix;
  if (s == "edgelist") return tcec::GraphFormat::EdgeList;
  if (s == "auto") return std::nullopt;
  throw UsageError("unknown format '" + s + "'");
}

std::string sidecar_path(const std::string& graph_path) { return graph_path + ".json"; }

/// Concept count for an edge list: explicit flag, else the generator sidecar.
std::optional<std::size_t> concept_count_hint(const std::string& input,
                                              std::optional<std::size_t> flag) {
  if (flag) return flag;
  std::ifstream in(sidecar_path(input));
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.contains("n")) return j.at("n").get<std::size_t>();
  } catch (const nlohmann::json::exception&) {
  }
  return std::nullopt;
}

tcec::FcmGraph load(const std::string& input, const std::string& format,
                    std::optional<std::size_t> concepts) {
  return tcec::load_graph(input, parse_format(format), concept_count_hint(input, concepts));
}

template <typename T>
std::vector<T> split_list(const std::string& s, auto&& parse) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string item = s.substr(start, comma == std::string::npos ? std::string::npos
                                                                        : comma - start);
    if (!item.empty()) out.push_back(parse(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  tcec::GenSpec spec;
  std::string out;
  std::string format = "edgelist";
  std::string sidecar;
};

int run_generate(const GenerateArgs& a) {
  const tcec::FcmGraph g = tcec::generate(a.spec);
  const auto format = parse_format(a.format).value_or(tcec::GraphFormat::EdgeList);
  tcec::save_graph(a.out, g, format);
  nlohmann::ordered_json j;
  j["generator"] = "tcec-synthgen";
  j["generator_version"] = tcec::kGeneratorVersion;
  j["engine"] = "mt19937_64";
  j["n"] = a.spec.n;
  j["density"] = a.spec.density;
  j["seed"] = a.spec.seed;
  j["min_magnitude"] = a.spec.min_magnitude;
  j["edges"] = g.edge_count();
  j["format"] = format == tcec::GraphFormat::EdgeList ? "edgelist" : "matrix";
  std::ofstream side = tcec::open_output(a.sidecar.empty() ? sidecar_path(a.out) : a.sidecar);
  side << j.dump(2) << '\n';
  return kExitOk;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string input;
  std::string format = "auto";
  std::optional<std::size_t> concepts;
  std::string method = "binary";
  std::string probe = "rebuild";
  std::optional<std::uint32_t> source;
  std::optional<std::uint32_t> target;
  bool all_pairs = false;
  bool force = false;
  std::string out;
  unsigned threads = 1;
};

int run_analyze(const AnalyzeArgs& a) {
  const auto method = tcec::parse_method(a.method);
  if (!method) throw UsageError("unknown method '" + a.method + "'");
  tcec::SolverOptions options;
  if (a.probe == "ranked") {
    options.probe = tcec::ProbeStrategy::RankFiltered;
  } else if (a.probe != "rebuild") {
    throw UsageError("unknown probe strategy '" + a.probe + "'");
  }
  if (a.all_pairs == a.target.has_value()) {
    throw UsageError("give exactly one of --target or --all-pairs");
  }
  if (a.source && a.all_pairs) throw UsageError("--source needs --target");

  const tcec::FcmGraph g = load(a.input, a.format, a.concepts);
  if (*method == tcec::Method::Exhaustive && g.size() > tcec::bench::kExhaustiveSizeLimit &&
      !a.force) {
    std::cerr << "warning: exhaustive search on " << g.size()
              << " concepts may run for hours; pass --force to run it anyway\n";
    return kExitUsage;
  }
  auto check = [&](std::uint32_t c, const char* what) {
    if (c >= g.size()) {
      throw UsageError(std::string(what) + " " + std::to_string(c) + " outside 0.." +
                       std::to_string(g.size() ? g.size() - 1 : 0));
    }
    return tcec::ConceptId(c);
  };

  std::ofstream file;
  if (!a.out.empty()) file = tcec::open_output(a.out);
  std::ostream& out = a.out.empty() ? std::cout : file;

  if (a.all_pairs) {
    tcec::write_matrix_csv(out, tcec::total_effects_all_pairs(g, *method, a.threads, options));
    return kExitOk;
  }
  const tcec::ConceptId target = check(*a.target, "target");
  std::vector<tcec::TotalEffectResult> results;
  if (a.source) {
    tcec::TotalEffectSolver solver(g, options);
    results.push_back(solver.solve(*method, check(*a.source, "source"), target));
  } else {
    results = tcec::total_effects_to_target(g, target, *method, options);
  }
  out << "source,value,critical_index,path_found\n";
  for (const auto& r : results) {
    out << r.source.value << ',' << tcec::format_real(r.value) << ',';
    if (r.critical_index) out << *r.critical_index;
    out << ',' << (r.path_found ? "true" : "false") << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string input;
  std::string format = "auto";
  std::optional<std::size_t> concepts;
  std::string initial;
  std::string activation = "sigmoid";
  double steepness = 1.0;
  std::size_t max_iterations = 100;
  double epsilon = 1e-5;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  const auto kind = tcec::parse_activation(a.activation);
  if (!kind) throw UsageError("unknown activation '" + a.activation + "'");
  const tcec::FcmGraph g = load(a.input, a.format, a.concepts);
  std::ifstream state_in = tcec::open_input(a.initial);
  const tcec::StateVector initial = tcec::read_state_csv(state_in);
  const tcec::SimulationConfig config{{*kind, a.steepness}, a.max_iterations, a.epsilon};
  const auto outcome = tcec::simulate(g, initial, config);

  std::ofstream file;
  if (!a.out.empty()) file = tcec::open_output(a.out);
  std::ostream& out = a.out.empty() ? std::cout : file;
  tcec::write_trajectory_csv(out, outcome.trajectory);
  if (outcome.status == tcec::SimulationStatus::FixedPoint) {
    std::cerr << "status: fixed_point at t=" << *outcome.fixed_point_at << '\n';
  } else {
    std::cerr << "status: not_converged after " << outcome.iterations_run << " iterations\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
  std::string algorithms = "binary,linear";
  std::string sizes = "10,12,50,100,500";
  std::string exhaustive_sizes = "8,10,12";
  bool sizes_given = false;
  bool exhaustive_sizes_given = false;
  std::string densities = "1.0";
  std::size_t trials = 10;
  bool full_trials = false;
  std::uint64_t base_seed = 0;
  std::string target_policy = "last_concept";
  double budget_s = 60.0;
  bool allow_large_exhaustive = false;
  bool no_warm_up = false;
  std::string probe = "rebuild";
  double min_magnitude = 1e-3;
  std::string out_dir = ".";
  bool verbose = false;
};

int run_bench(const BenchArgs& a) {
  namespace b = tcec::bench;
  b::BenchPlan plan;
  plan.algorithms = split_list<b::Algorithm>(a.algorithms, [](const std::string& s) {
    const auto alg = b::parse_algorithm(s);
    if (!alg) throw UsageError("unknown algorithm '" + s + "'");
    return *alg;
  });
  const auto parse_size = [](const std::string& s) {
    return static_cast<std::size_t>(std::stoul(s));
  };
  plan.sizes = split_list<std::size_t>(a.sizes, parse_size);
  // An explicit --sizes applies to every algorithm unless --exhaustive-sizes is also given.
  if (a.exhaustive_sizes_given || !a.sizes_given) {
    plan.exhaustive_sizes = split_list<std::size_t>(a.exhaustive_sizes, parse_size);
  }
  plan.densities = split_list<double>(a.densities, [](const std::string& s) { return std::stod(s); });
  plan.trials = a.full_trials ? 40 : a.trials;
  plan.base_seed = a.base_seed;
  if (a.target_policy == "last_concept") {
    plan.target_policy = b::TargetPolicy::LastConcept;
  } else if (a.target_policy == "all_pairs") {
    plan.target_policy = b::TargetPolicy::AllPairs;
  } else {
    throw UsageError("unknown target policy '" + a.target_policy + "'");
  }
  plan.solve_budget = std::chrono::duration<double>(a.budget_s);
  plan.allow_large_exhaustive = a.allow_large_exhaustive;
  plan.warm_up = !a.no_warm_up;
  plan.min_magnitude = a.min_magnitude;
  plan.probe = a.probe == "ranked" ? tcec::ProbeStrategy::RankFiltered : tcec::ProbeStrategy::Rebuild;

  std::filesystem::create_directories(a.out_dir);
  const auto records = b::run_plan(plan, [&](const b::BenchRecord& r) {
    if (!a.verbose) return;
    std::cerr << b::to_string(r.algorithm) << " n=" << r.n << " d=" << r.density
              << " trial=" << r.trial << " " << r.elapsed_s << "s " << b::to_string(r.status)
              << '\n';
  });
  b::write_outputs(a.out_dir, records);
  return kExitOk;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  tcec::VerifyConfig config;
  bool inject_fault = false;
};

int run_verify(const VerifyArgs& a) {
  std::function<void(tcec::TotalEffectResult&)> fault;
  if (a.inject_fault) {
    fault = [](tcec::TotalEffectResult& r) {
      if (r.path_found && r.critical_index > 1u) {
        r.critical_index = *r.critical_index - 1;
      }
    };
  }
  const tcec::VerifyReport report = tcec::verify_equivalence(a.config, fault);
  std::cout << "graphs: " << report.graphs << "\npairs: " << report.pairs
            << "\npairs with a path: " << report.paths_found
            << "\nmismatches: " << report.mismatches.size() << '\n';
  for (const auto& m : report.mismatches) {
    auto show = [](const tcec::TotalEffectResult& r) {
      return tcec::format_real(r.value) + "@" +
             (r.critical_index ? std::to_string(*r.critical_index) : std::string("-"));
    };
    std::cout << "MISMATCH graph=" << m.graph_index << " n=" << m.spec.n
              << " density=" << tcec::format_real(m.spec.density) << " seed=" << m.spec.seed
              << " pair=" << m.source.value << "->" << m.target.value << " (" << m.reason
              << ") binary=" << show(m.binary) << " linear=" << show(m.linear)
              << " exhaustive=" << show(m.exhaustive) << '\n';
  }
  return report.ok() ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total causal effects in fuzzy cognitive maps"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a seeded random FCM");
  generate->add_option("--n", gen.spec.n, "Concept count")->required();
  generate->add_option("--density", gen.spec.density, "Edge density in (0,1]")->required();
  generate->add_option("--seed", gen.spec.seed, "RNG seed")->required();
  generate->add_option("--min-magnitude", gen.spec.min_magnitude, "Smallest |weight|");
  generate->add_option("--out", gen.out, "Output graph path")->required();
  generate->add_option("--format", gen.format, "edgelist or matrix");
  generate->add_option("--sidecar", gen.sidecar, "JSON provenance path (default <out>.json)");

  AnalyzeArgs an;
  an.threads = default_threads();
  auto* analyze = app.add_subcommand("analyze", "Compute total causal effects");
  analyze->add_option("--input", an.input, "Graph CSV")->required();
  analyze->add_option("--format", an.format, "auto, matrix or edgelist");
  analyze->add_option("--concepts", an.concepts, "Concept count for edge lists");
  analyze->add_option("--method", an.method, "binary, linear or exhaustive");
  analyze->add_option("--probe", an.probe, "rebuild or ranked (binary prefix probes)");
  analyze->add_option("--source", an.source, "Restrict to one source concept");
  analyze->add_option("--target", an.target, "Target concept (0-based)");
  analyze->add_flag("--all-pairs", an.all_pairs, "Write the full effect matrix");
  analyze->add_flag("--force", an.force, "Allow exhaustive search on large maps");
  analyze->add_option("--out", an.out, "Output CSV (default stdout)");
  analyze->add_option("--threads", an.threads, "Worker threads for --all-pairs (0 = all cores)");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run FCM inference");
  simulate->add_option("--input", sim.input, "Graph CSV")->required();
  simulate->add_option("--format", sim.format, "auto, matrix or edgelist");
  simulate->add_option("--concepts", sim.concepts, "Concept count for edge lists");
  simulate->add_option("--initial", sim.initial, "Initial state CSV (one row)")
      ->required();
  simulate->add_option("--activation", sim.activation, "sigmoid, tanh, bivalent or trivalent");
  simulate->add_option("--steepness", sim.steepness, "Lambda for sigmoid/tanh");
  simulate->add_option("--max-iterations", sim.max_iterations, "T");
  simulate->add_option("--epsilon", sim.epsilon, "Fixed-point tolerance (max-norm)");
  simulate->add_option("--out", sim.out, "Trajectory CSV (default stdout)");

  BenchArgs be;
  auto* bench = app.add_subcommand("bench", "Time the solvers on generated maps");
  bench->add_option("--algorithms", be.algorithms,
                    "Comma list of binary, linear, exhaustive, exhaustive_pruned");
  auto* sizes_opt = bench->add_option("--sizes", be.sizes, "Comma list of concept counts");
  auto* exhaustive_sizes_opt = bench->add_option(
      "--exhaustive-sizes", be.exhaustive_sizes,
      "Concept counts for the exhaustive kinds (default 8,10,12; follows --sizes if only that is set)");
  bench->add_option("--densities", be.densities, "Comma list of densities");
  bench->add_option("--trials", be.trials, "Graphs per (n, density) cell");
  bench->add_flag("--full-trials", be.full_trials, "Use 40 trials per cell");
  bench->add_option("--base-seed", be.base_seed, "Seed from which cell seeds are derived");
  bench->add_option("--target-policy", be.target_policy, "last_concept or all_pairs");
  bench->add_option("--budget", be.budget_s, "Seconds allowed per timed exhaustive solve");
  bench->add_flag("--allow-large-exhaustive", be.allow_large_exhaustive,
                  "Permit exhaustive search above 13 concepts");
  bench->add_flag("--no-warm-up", be.no_warm_up, "Skip the untimed warm-up solve");
  bench->add_option("--probe", be.probe, "rebuild or ranked");
  bench->add_option("--min-magnitude", be.min_magnitude, "Smallest |weight| in generated maps");
  bench->add_option("--out-dir", be.out_dir, "Directory for the CSV outputs");
  bench->add_flag("-v,--verbose", be.verbose, "Print each record as it completes");

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "Cross-check all solvers on random maps");
  verify->add_option("--count", ve.config.graphs, "Number of random maps");
  verify->add_option("--seed", ve.config.base_seed, "Base seed");
  verify->add_option("--min-n", ve.config.min_n, "Smallest concept count");
  verify->add_option("--max-n", ve.config.max_n, "Largest concept count");
  verify->add_flag("--inject-fault", ve.inject_fault, "Corrupt binary results (self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*analyze) return run_analyze(an);
    if (*simulate) return run_simulate(sim);
    if (*bench) {
      be.sizes_given = sizes_opt->count() > 0;
      be.exhaustive_sizes_given = exhaustive_sizes_opt->count() > 0;
      return run_bench(be);
    }
    if (*verify) return run_verify(ve);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const tcec::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case tcec::ErrorCode::SameConcept:
      case tcec::ErrorCode::InvalidSpec:
      case tcec::ErrorCode::InvalidPlan:
      case tcec::ErrorCode::InvalidArgument:
        return kExitUsage;
      default:
        return kExitInput;
    }
  } catch (const std::logic_error& e) {
    // std::stoul / std::stod on malformed list items
    std::cerr << "error: bad argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}
