#pragma once

// Timing harness for the three solvers on generated FCMs, with CSV output
// for raw records, per-cell summaries, and plot-ready series.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "tcec/effect.hpp"
#include "tcec/error.hpp"
#include "tcec/graph.hpp"
#include "tcec/io.hpp"
#include "tcec/oracle.hpp"
#include "tcec/solver.hpp"
#include "tcec/synthgen.hpp"

namespace tcec::bench {

enum class Algorithm { Binary, Linear, Exhaustive, ExhaustivePruned };

constexpr std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Binary: return "binary";
    case Algorithm::Linear: return "linear";
    case Algorithm::Exhaustive: return "exhaustive";
    case Algorithm::ExhaustivePruned: return "exhaustive_pruned";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
  for (Algorithm a : {Algorithm::Binary, Algorithm::Linear, Algorithm::Exhaustive,
                      Algorithm::ExhaustivePruned}) {
    if (s == to_string(a)) return a;
  }
  return std::nullopt;
}

constexpr bool is_exhaustive(Algorithm a) {
  return a == Algorithm::Exhaustive || a == Algorithm::ExhaustivePruned;
}

enum class TargetPolicy { LastConcept, AllPairs };

inline constexpr std::size_t kExhaustiveSizeLimit = 13;

struct BenchPlan {
  std::vector<Algorithm> algorithms{Algorithm::Binary, Algorithm::Linear};
  std::vector<std::size_t> sizes{10, 12, 50, 100, 500};
  /// Sizes for the exhaustive kinds; they share `sizes` when unset.
  std::optional<std::vector<std::size_t>> exhaustive_sizes;
  std::vector<double> densities{1.0};
  std::size_t trials = 10;
  std::uint64_t base_seed = 0;
  TargetPolicy target_policy = TargetPolicy::LastConcept;
  /// Wall-clock cap on one timed solve; enforced for the exhaustive kinds.
  std::chrono::duration<double> solve_budget = std::chrono::seconds(60);
  bool allow_large_exhaustive = false;
  bool warm_up = true;
  double min_magnitude = 1e-3;
  ProbeStrategy probe = ProbeStrategy::Rebuild;

  const std::vector<std::size_t>& sizes_for(Algorithm a) const {
    return is_exhaustive(a) && exhaustive_sizes ? *exhaustive_sizes : sizes;
  }

  /// Every size some algorithm runs at, ascending.
  std::vector<std::size_t> all_sizes() const {
    std::vector<std::size_t> out;
    for (Algorithm a : algorithms) out.insert(out.end(), sizes_for(a).begin(), sizes_for(a).end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void validate() const {
    if (algorithms.empty() || densities.empty() ||
        std::any_of(algorithms.begin(), algorithms.end(),
                    [&](Algorithm a) { return sizes_for(a).empty(); })) {
      throw Error(ErrorCode::InvalidPlan, "plan needs algorithms, sizes and densities");
    }
    if (trials == 0) throw Error(ErrorCode::InvalidPlan, "plan needs at least one trial");
    if (!(solve_budget.count() > 0.0)) throw Error(ErrorCode::InvalidPlan, "budget must be positive");
    for (Algorithm a : algorithms) {
      if (!is_exhaustive(a) || allow_large_exhaustive) continue;
      for (std::size_t n : sizes_for(a)) {
        if (n > kExhaustiveSizeLimit) {
          throw Error(ErrorCode::InvalidPlan, "exhaustive search at n = " + std::to_string(n) +
                                                  " needs an explicit override");
        }
      }
    }
    for (std::size_t n : all_sizes()) {
      for (double d : densities) {
        try {
          GenSpec{n, d, 0, min_magnitude}.validate();
        } catch (const Error& e) {
          throw Error(ErrorCode::InvalidPlan, e.message());
        }
      }
    }
  }
};

enum class RecordStatus { Ok, BudgetExceeded };

constexpr std::string_view to_string(RecordStatus s) {
  return s == RecordStatus::Ok ? "ok" : "budget_exceeded";
}

struct BenchRecord {
  Algorithm algorithm = Algorithm::Binary;
  std::size_t n = 0;
  double density = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double elapsed_s = 0.0;
  RecordStatus status = RecordStatus::Ok;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

namespace detail {

inline double timed_solve(const FcmGraph& g, Algorithm algorithm, const BenchPlan& plan,
                          RecordStatus& status) {
  using clock = std::chrono::steady_clock;
  SolverOptions options;
  options.probe = plan.probe;
  options.exhaustive.prune = algorithm == Algorithm::ExhaustivePruned;
  options.exhaustive.max_paths = std::numeric_limits<std::uint64_t>::max();
  const Method method = algorithm == Algorithm::Binary   ? Method::Binary
                        : algorithm == Algorithm::Linear ? Method::Linear
                                                         : Method::Exhaustive;
  const auto start = clock::now();
  if (is_exhaustive(algorithm)) {
    options.exhaustive.deadline =
        start + std::chrono::duration_cast<clock::duration>(plan.solve_budget);
  }
  status = RecordStatus::Ok;
  double sink = 0.0;
  try {
    if (plan.target_policy == TargetPolicy::LastConcept) {
      const ConceptId target(static_cast<std::uint32_t>(g.size() - 1));
      for (const auto& r : total_effects_to_target(g, target, method, options)) sink += r.value;
    } else {
      const WeightMatrix all = total_effects_all_pairs(g, method, 1, options);
      sink += all(0, g.size() - 1);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    status = RecordStatus::BudgetExceeded;
  }
  const auto stop = clock::now();
  volatile double keep = sink;
  (void)keep;
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace detail

/// Runs every (n, density, trial) cell: one generated graph per cell, shared
/// by the algorithms that run at that size. Records come back ordered by
/// algorithm in plan order, then ascending n, density in plan order, trial. Timed solves run one at a time on the calling thread.
inline std::vector<BenchRecord> run_plan(
    const BenchPlan& plan, const std::function<void(const BenchRecord&)>& on_record = {}) {
  plan.validate();
  std::vector<std::vector<BenchRecord>> per_algorithm(plan.algorithms.size());
  for (std::size_t n : plan.all_sizes()) {
    for (double d : plan.densities) {
      for (std::size_t trial = 0; trial < plan.trials; ++trial) {
        const std::uint64_t seed = derive_seed(plan.base_seed, n, d, trial);
        const FcmGraph g = generate({n, d, seed, plan.min_magnitude});
        for (std::size_t a = 0; a < plan.algorithms.size(); ++a) {
          const Algorithm algorithm = plan.algorithms[a];
          const auto& own = plan.sizes_for(algorithm);
          if (std::find(own.begin(), own.end(), n) == own.end()) continue;
          RecordStatus status{};
          if (plan.warm_up && trial == 0) detail::timed_solve(g, algorithm, plan, status);
          const double elapsed = detail::timed_solve(g, algorithm, plan, status);
          per_algorithm[a].push_back({algorithm, n, d, trial, seed, elapsed, status});
          if (on_record) on_record(per_algorithm[a].back());
        }
      }
    }
  }
  std::vector<BenchRecord> out;
  for (auto& list : per_algorithm) out.insert(out.end(), list.begin(), list.end());
  return out;
}

struct CellSummary {
  Algorithm algorithm = Algorithm::Binary;
  std::size_t n = 0;
  double density = 0.0;
  std::size_t ok = 0;
  std::size_t exceeded = 0;
  // NaN when every record of the cell exceeded its budget.
  double mean_s = std::numeric_limits<double>::quiet_NaN();
  double median_s = std::numeric_limits<double>::quiet_NaN();
  double min_s = std::numeric_limits<double>::quiet_NaN();
  double max_s = std::numeric_limits<double>::quiet_NaN();
};

/// Mean of the per-density cell means at one n; cells without a single ok
/// record are left out of both the sum and D.
struct OverallSummary {
  Algorithm algorithm = Algorithm::Binary;
  std::size_t n = 0;
  std::size_t densities = 0;
  std::size_t exceeded = 0;
  double mean_s = std::numeric_limits<double>::quiet_NaN();
};

struct Summary {
  std::vector<CellSummary> cells;
  std::vector<OverallSummary> overall;
};

inline Summary summarize(const std::vector<BenchRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no records to summarize");
  using CellKey = std::tuple<int, std::size_t, double>;
  std::vector<CellKey> order;
  std::map<CellKey, std::vector<const BenchRecord*>> groups;
  for (const BenchRecord& r : records) {
    const CellKey key{static_cast<int>(r.algorithm), r.n, r.density};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }

  Summary out;
  for (const CellKey& key : order) {
    CellSummary c;
    c.algorithm = static_cast<Algorithm>(std::get<0>(key));
    c.n = std::get<1>(key);
    c.density = std::get<2>(key);
    std::vector<double> times;
    for (const BenchRecord* r : groups[key]) {
      if (r->status == RecordStatus::Ok) {
        times.push_back(r->elapsed_s);
      } else {
        ++c.exceeded;
      }
    }
    c.ok = times.size();
    if (!times.empty()) {
      double sum = 0.0;
      for (double t : times) sum += t;
      c.mean_s = sum / static_cast<double>(times.size());
      std::sort(times.begin(), times.end());
      const std::size_t mid = times.size() / 2;
      c.median_s = times.size() % 2 ? times[mid] : (times[mid - 1] + times[mid]) / 2.0;
      c.min_s = times.front();
      c.max_s = times.back();
    }
    out.cells.push_back(c);
  }

  for (const CellSummary& c : out.cells) {
    auto it = std::find_if(out.overall.begin(), out.overall.end(), [&](const OverallSummary& o) {
      return o.algorithm == c.algorithm && o.n == c.n;
    });
    if (it == out.overall.end()) {
      out.overall.push_back({c.algorithm, c.n, 0, 0, 0.0});
      it = std::prev(out.overall.end());
    }
    it->exceeded += c.exceeded;
    if (c.ok > 0) {
      it->mean_s += c.mean_s;
      ++it->densities;
    }
  }
  for (OverallSummary& o : out.overall) {
    o.mean_s = o.densities ? o.mean_s / static_cast<double>(o.densities)
                           : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

inline constexpr std::string_view kBenchHeader = "algorithm,n,density,trial,seed,elapsed_s,status";
inline constexpr std::string_view kSummaryHeader =
    "algorithm,n,density,mean_s,median_s,min_s,max_s,exceeded";
inline constexpr std::string_view kOverallHeader = "algorithm,n,densities,overall_mean_s,exceeded";

namespace detail {
inline std::string real_or_empty(double x) { return std::isnan(x) ? std::string() : format_real(x); }
}  // namespace detail

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kBenchHeader << '\n';
  for (const BenchRecord& r : records) {
    out << to_string(r.algorithm) << ',' << r.n << ',' << format_real(r.density) << ','
        << r.trial << ',' << r.seed << ',' << format_real(r.elapsed_s) << ','
        << to_string(r.status) << '\n';
  }
}

inline std::vector<BenchRecord> read_bench_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<BenchRecord> out;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (tcec::detail::blank(line)) continue;
    if (!header) {
      if (tcec::detail::trim(line) != kBenchHeader) {
        throw Error(ErrorCode::Parse, "expected bench header", line_no);
      }
      header = true;
      continue;
    }
    const auto f = tcec::detail::split_fields(line);
    if (f.size() != 7) throw Error(ErrorCode::Parse, "expected 7 fields", line_no);
    BenchRecord r;
    const auto algorithm = parse_algorithm(f[0]);
    if (!algorithm) throw Error(ErrorCode::Parse, "unknown algorithm '" + std::string(f[0]) + "'", line_no);
    r.algorithm = *algorithm;
    r.n = parse_index(f[1], line_no);
    r.density = parse_real(f[2], line_no);
    r.trial = parse_index(f[3], line_no);
    r.seed = parse_index(f[4], line_no);
    r.elapsed_s = parse_real(f[5], line_no);
    if (f[6] == "ok") {
      r.status = RecordStatus::Ok;
    } else if (f[6] == "budget_exceeded") {
      r.status = RecordStatus::BudgetExceeded;
    } else {
      throw Error(ErrorCode::Parse, "unknown status '" + std::string(f[6]) + "'", line_no);
    }
    out.push_back(r);
  }
  if (!header) throw Error(ErrorCode::Parse, "bench file is empty", line_no + 1);
  return out;
}

inline void write_summary_csv(std::ostream& out, const Summary& s) {
  out << kSummaryHeader << '\n';
  for (const CellSummary& c : s.cells) {
    out << to_string(c.algorithm) << ',' << c.n << ',' << format_real(c.density) << ','
        << detail::real_or_empty(c.mean_s) << ',' << detail::real_or_empty(c.median_s) << ','
        << detail::real_or_empty(c.min_s) << ',' << detail::real_or_empty(c.max_s) << ','
        << c.exceeded << '\n';
  }
}

inline void write_overall_csv(std::ostream& out, const Summary& s) {
  out << kOverallHeader << '\n';
  for (const OverallSummary& o : s.overall) {
    out << to_string(o.algorithm) << ',' << o.n << ',' << o.densities << ','
        << detail::real_or_empty(o.mean_s) << ',' << o.exceeded << '\n';
  }
}

/// Trial-by-trial elapsed times on fully dense graphs (variability plot).
inline void write_variability_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "algorithm,n,trial,elapsed_s\n";
  for (const BenchRecord& r : records) {
    if (r.density != 1.0 || r.status != RecordStatus::Ok) continue;
    out << to_string(r.algorithm) << ',' << r.n << ',' << r.trial << ','
        << format_real(r.elapsed_s) << '\n';
  }
}

/// Mean elapsed against density, one series per (algorithm, n).
inline void write_density_csv(std::ostream& out, const Summary& s) {
  out << "algorithm,n,density,mean_s\n";
  for (const CellSummary& c : s.cells) {
    if (c.ok == 0) continue;
    out << to_string(c.algorithm) << ',' << c.n << ',' << format_real(c.density) << ','
        << format_real(c.mean_s) << '\n';
  }
}

/// Writes bench.csv, summary.csv, overall.csv, variability.csv and density.csv.
inline void write_outputs(const std::string& dir, const std::vector<BenchRecord>& records) {
  const Summary s = summarize(records);
  auto emit = [&](const std::string& name, auto&& writer) {
    std::ofstream out = open_output(dir + "/" + name);
    writer(out);
    if (!out) throw Error(ErrorCode::Io, "write to '" + dir + "/" + name + "' failed");
  };
  emit("bench.csv", [&](std::ostream& o) { write_bench_csv(o, records); });
  emit("summary.csv", [&](std::ostream& o) { write_summary_csv(o, s); });
  emit("overall.csv", [&](std::ostream& o) { write_overall_csv(o, s); });
  emit("variability.csv", [&](std::ostream& o) { write_variability_csv(o, records); });
  emit("density.csv", [&](std::ostream& o) { write_density_csv(o, s); });
}

}  // namespace tcec::bench
