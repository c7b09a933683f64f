#pragma once

// Total causal effect between concepts as the critical weight of the sorted
// edge list: the first (highest-ranked) weight whose inclusion connects the
// source to the target. The binary variant locates it with O(log e)
// reachability probes; the linear variant adds edges one at a time.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "tcec/effect.hpp"
#include "tcec/error.hpp"
#include "tcec/graph.hpp"
#include "tcec/oracle.hpp"

namespace tcec {

/// How the binary search obtains the prefix subgraph for a probe.
enum class ProbeStrategy {
  /// Rebuild the adjacency of the k-prefix from scratch on every probe.
  Rebuild,
  /// Reuse one rank-annotated adjacency built up front; a probe filters
  /// out-edges by rank instead of copying them.
  RankFiltered,
};

struct SolverOptions {
  ProbeStrategy probe = ProbeStrategy::Rebuild;
  /// Used when a query asks for Method::Exhaustive.
  ExhaustiveOptions exhaustive{};
};

/// Out-adjacency restricted to the k highest-ranked edges of a sorted list.
class PrefixSubgraphView {
 public:
  PrefixSubgraphView(const SortedEdgeList& base, std::size_t n, std::size_t k = 0)
      : base_(&base), out_(n) {
    reset(k);
  }

  /// Rebuilds the view for prefix length `k`. O(n + k), reuses capacity.
  void reset(std::size_t k) {
    if (k > base_->size()) throw Error(ErrorCode::InvalidArgument, "prefix exceeds edge count");
    for (auto& list : out_) list.clear();
    for (std::size_t r = 0; r < k; ++r) {
      const Edge& e = (*base_)[r];
      out_[e.source.index()].push_back(e.target);
    }
    k_ = k;
  }

  /// Adds the next-ranked edge. Requires prefix_length() < base().size().
  void grow() {
    const Edge& e = (*base_)[k_];
    out_[e.source.index()].push_back(e.target);
    ++k_;
  }

  std::size_t prefix_length() const { return k_; }
  std::size_t size() const { return out_.size(); }
  const SortedEdgeList& base() const { return *base_; }
  std::span<const ConceptId> neighbors(ConceptId c) const { return out_[c.index()]; }

 private:
  const SortedEdgeList* base_;
  std::size_t k_ = 0;
  std::vector<std::vector<ConceptId>> out_;
};

/// Reusable BFS workspace. Visited marks are epoch-stamped so a probe costs
/// only what it touches.
class BreadthFirstProbe {
 public:
  explicit BreadthFirstProbe(std::size_t n) : stamp_(n, 0) { queue_.reserve(n); }

  template <typename Neighbors>
  bool reaches(ConceptId source, ConceptId target, Neighbors&& neighbors) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    queue_.clear();
    queue_.push_back(source);
    stamp_[source.index()] = epoch_;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const ConceptId u = queue_[head];
      bool found = false;
      neighbors(u, [&](ConceptId v) {
        if (stamp_[v.index()] == epoch_) return true;
        if (v == target) {
          found = true;
          return false;
        }
        stamp_[v.index()] = epoch_;
        queue_.push_back(v);
        return true;
      });
      if (found) return true;
    }
    return false;
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<ConceptId> queue_;
};

inline bool reachable(const PrefixSubgraphView& view, ConceptId source, ConceptId target,
                      BreadthFirstProbe& probe) {
  if (source == target) throw Error(ErrorCode::SameConcept, "reachability needs distinct concepts");
  return probe.reaches(source, target, [&](ConceptId u, auto&& visit) {
    for (ConceptId v : view.neighbors(u)) {
      if (!visit(v)) return;
    }
  });
}

inline bool reachable(const PrefixSubgraphView& view, ConceptId source, ConceptId target) {
  BreadthFirstProbe probe(view.size());
  return reachable(view, source, target, probe);
}

/// Precomputes the sorted edge list once and answers many (source, target)
/// queries. Not thread-safe; use one instance per thread.
class TotalEffectSolver {
 public:
  explicit TotalEffectSolver(const FcmGraph& graph, SolverOptions options = {})
      : graph_(&graph),
        sorted_(graph),
        options_(options),
        view_(sorted_, graph.size()),
        probe_(graph.size()) {
    if (options_.probe == ProbeStrategy::RankFiltered) build_ranked_adjacency();
  }
  TotalEffectSolver(const TotalEffectSolver&) = delete;
  TotalEffectSolver& operator=(const TotalEffectSolver&) = delete;

  const SortedEdgeList& sorted() const { return sorted_; }

  /// Reachability probes performed by the most recent query.
  std::size_t last_probe_count() const { return probes_; }

  TotalEffectResult binary(ConceptId source, ConceptId target) {
    check_pair(source, target);
    probes_ = 0;
    const std::size_t e = sorted_.size();
    if (e == 0 || !prefix_reaches(e, source, target)) return no_path(source, target);
    // Minimal k in [1, e] whose prefix connects source to target; the
    // predicate is monotone in k because prefixes are nested.
    std::size_t lo = 1;
    std::size_t hi = e;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (prefix_reaches(mid, source, target)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return found(source, target, lo);
  }

  TotalEffectResult linear(ConceptId source, ConceptId target) {
    check_pair(source, target);
    probes_ = 0;
    view_.reset(0);
    for (std::size_t k = 1; k <= sorted_.size(); ++k) {
      view_.grow();
      ++probes_;
      if (reachable(view_, source, target, probe_)) return found(source, target, k);
    }
    return no_path(source, target);
  }

  TotalEffectResult solve(Method method, ConceptId source, ConceptId target) {
    switch (method) {
      case Method::Binary: return binary(source, target);
      case Method::Linear: return linear(source, target);
      case Method::Exhaustive: break;
    }
    if (!exhaustive_) exhaustive_.emplace(*graph_, options_.exhaustive);
    return exhaustive_->solve(source, target);
  }

 private:
  void check_pair(ConceptId source, ConceptId target) const {
    if (!graph_->contains(source) || !graph_->contains(target)) {
      throw Error(ErrorCode::ConceptOutOfRange, "concept index outside graph");
    }
    if (source == target) {
      throw Error(ErrorCode::SameConcept,
                  "source and target are both concept " + std::to_string(source.value));
    }
  }

  bool prefix_reaches(std::size_t k, ConceptId source, ConceptId target) {
    ++probes_;
    if (options_.probe == ProbeStrategy::Rebuild) {
      view_.reset(k);
      return reachable(view_, source, target, probe_);
    }
    return probe_.reaches(source, target, [&](ConceptId u, auto&& visit) {
      const auto begin = ranked_offsets_[u.index()];
      const auto end = ranked_offsets_[u.index() + 1];
      for (auto i = begin; i < end && ranked_[i].rank < k; ++i) {
        if (!visit(ranked_[i].target)) return;
      }
    });
  }

  void build_ranked_adjacency() {
    const std::size_t n = graph_->size();
    ranked_offsets_.assign(n + 1, 0);
    for (const Edge& e : sorted_.entries()) ++ranked_offsets_[e.source.index() + 1];
    for (std::size_t i = 0; i < n; ++i) ranked_offsets_[i + 1] += ranked_offsets_[i];
    ranked_.resize(sorted_.size());
    std::vector<std::size_t> cursor(ranked_offsets_.begin(), ranked_offsets_.end() - 1);
    // Walking ranks in order leaves every per-source run sorted by rank.
    for (std::size_t r = 0; r < sorted_.size(); ++r) {
      const Edge& e = sorted_[r];
      ranked_[cursor[e.source.index()]++] = {e.target, r};
    }
  }

  TotalEffectResult found(ConceptId source, ConceptId target, std::size_t k) const {
    return {source, target, sorted_.weight_at_prefix(k), k, true};
  }
  static TotalEffectResult no_path(ConceptId source, ConceptId target) {
    return {source, target, 0.0, std::nullopt, false};
  }

  struct RankedEdge {
    ConceptId target;
    std::size_t rank;
  };

  const FcmGraph* graph_;
  SortedEdgeList sorted_;
  SolverOptions options_;
  PrefixSubgraphView view_;
  BreadthFirstProbe probe_;
  std::size_t probes_ = 0;
  std::vector<std::size_t> ranked_offsets_;
  std::vector<RankedEdge> ranked_;
  std::optional<ExhaustiveSolver> exhaustive_;
};

inline TotalEffectResult total_effect_binary(const FcmGraph& g, ConceptId source,
                                             ConceptId target, SolverOptions options = {}) {
  return TotalEffectSolver(g, options).binary(source, target);
}

inline TotalEffectResult total_effect_linear(const FcmGraph& g, ConceptId source,
                                             ConceptId target) {
  return TotalEffectSolver(g).linear(source, target);
}

/// One result per source != target, ordered by source index.
inline std::vector<TotalEffectResult> total_effects_to_target(const FcmGraph& g,
                                                              ConceptId target, Method method,
                                                              SolverOptions options = {}) {
  if (!g.contains(target)) throw Error(ErrorCode::ConceptOutOfRange, "target outside graph");
  TotalEffectSolver solver(g, options);
  std::vector<TotalEffectResult> out;
  out.reserve(g.size() ? g.size() - 1 : 0);
  for (std::uint32_t s = 0; s < g.size(); ++s) {
    if (ConceptId(s) == target) continue;
    out.push_back(solver.solve(method, ConceptId(s), target));
  }
  return out;
}

inline unsigned resolve_thread_count(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits rows [0, n) into contiguous blocks, one per worker. `fn(row)`
/// must only write state owned by that row.
template <typename RowFn>
void parallel_rows(std::size_t n, unsigned threads, RowFn&& fn) {
  const std::size_t workers = std::min<std::size_t>(resolve_thread_count(threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i, w);
    });
  }
  for (auto& t : pool) t.join();
}

/// n x n matrix of total effects, (i, j) = T(C_i, C_j); the diagonal is 0.
/// `threads` = 0 uses the hardware concurrency.
inline WeightMatrix total_effects_all_pairs(const FcmGraph& g, Method method,
                                            unsigned threads = 1, SolverOptions options = {}) {
  const std::size_t n = g.size();
  WeightMatrix out(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(
                                                           resolve_thread_count(threads), n));
  std::vector<std::optional<TotalEffectSolver>> solvers(workers);
  parallel_rows(n, static_cast<unsigned>(workers), [&](std::size_t i, std::size_t w) {
    auto& solver = solvers[w];
    if (!solver) solver.emplace(g, options);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      out(i, j) = solver->solve(method, ConceptId(static_cast<std::uint32_t>(i)),
                                ConceptId(static_cast<std::uint32_t>(j)))
                      .value;
    }
  });
  return out;
}

}  // namespace tcec
