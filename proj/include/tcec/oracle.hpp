#pragma once

// Exhaustive depth-first enumeration of simple causal paths. Each path's
// indirect effect is its weakest link; the total effect is the strongest
// such path. Exponential on dense graphs: this is the reference oracle and
// the slow baseline, nothing more.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcec/effect.hpp"
#include "tcec/error.hpp"
#include "tcec/graph.hpp"

namespace tcec {

struct PathEffect {
  std::vector<ConceptId> path;  // source first, target last
  double indirect_effect = 0.0;

  friend bool operator==(const PathEffect&, const PathEffect&) = default;
};

struct ExhaustiveOptions {
  /// Cut branches whose running bottleneck cannot beat the best path so far.
  bool prune = false;
  std::uint64_t max_paths = 100'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline{};
};

namespace detail {

class SimplePathSearch {
 public:
  SimplePathSearch(const FcmGraph& g, const ExhaustiveOptions& options)
      : options_(options), adjacency_(g.size()), on_path_(g.size(), 0) {
    const SortedEdgeList sorted(g);
    for (std::size_t r = 0; r < sorted.size(); ++r) {
      const Edge& e = sorted[r];
      adjacency_[e.source.index()].push_back({e.target, e.weight, r});
    }
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end(),
                [](const Step& a, const Step& b) { return a.to < b.to; });
    }
  }

  /// Calls `visit(path, min_weight, max_rank)` for every simple path from
  /// `source` to `target`, neighbors taken in ascending index order.
  template <typename Visit>
  void run(ConceptId source, ConceptId target, Visit&& visit) {
    if (source == target) {
      throw Error(ErrorCode::SameConcept,
                  "source and target are both concept " + std::to_string(source.value));
    }
    if (source.index() >= adjacency_.size() || target.index() >= adjacency_.size()) {
      throw Error(ErrorCode::ConceptOutOfRange, "concept index outside graph");
    }
    target_ = target;
    paths_ = 0;
    expansions_ = 0;
    best_rank_.reset();
    path_.assign(1, source);
    std::fill(on_path_.begin(), on_path_.end(), 0);
    on_path_[source.index()] = 1;
    descend(source, 0.0, 0, true, visit);
  }

  std::uint64_t paths() const { return paths_; }

 private:
  struct Step {
    ConceptId to;
    double weight;
    std::size_t rank;
  };

  template <typename Visit>
  void descend(ConceptId u, double running_min, std::size_t running_rank, bool first,
               Visit& visit) {
    if ((++expansions_ & 0xFFF) == 0 && options_.deadline &&
        std::chrono::steady_clock::now() >= *options_.deadline) {
      throw Error(ErrorCode::BudgetExceeded, "exhaustive search ran past its deadline");
    }
    for (const Step& s : adjacency_[u.index()]) {
      if (on_path_[s.to.index()]) continue;
      const double next_min = first ? s.weight : std::min(running_min, s.weight);
      const std::size_t next_rank = first ? s.rank : std::max(running_rank, s.rank);
      // Rank order refines weight order, so a branch that cannot reach a
      // lower bottleneck rank cannot reach a larger bottleneck weight.
      if (options_.prune && best_rank_ && next_rank >= *best_rank_) continue;
      if (s.to == target_) {
        if (++paths_ > options_.max_paths) {
          throw Error(ErrorCode::BudgetExceeded,
                      "more than " + std::to_string(options_.max_paths) + " paths enumerated");
        }
        path_.push_back(s.to);
        visit(std::span<const ConceptId>(path_), next_min, next_rank);
        path_.pop_back();
        if (!best_rank_ || next_rank < *best_rank_) best_rank_ = next_rank;
        continue;
      }
      on_path_[s.to.index()] = 1;
      path_.push_back(s.to);
      descend(s.to, next_min, next_rank, false, visit);
      path_.pop_back();
      on_path_[s.to.index()] = 0;
    }
  }

  ExhaustiveOptions options_;
  std::vector<std::vector<Step>> adjacency_;
  std::vector<std::uint8_t> on_path_;
  std::vector<ConceptId> path_;
  ConceptId target_;
  std::optional<std::size_t> best_rank_;
  std::uint64_t paths_ = 0;
  std::uint64_t expansions_ = 0;
};

}  // namespace detail

/// Every simple path from source to target with its weakest-link effect.
inline std::vector<PathEffect> enumerate_path_effects(const FcmGraph& g, ConceptId source,
                                                      ConceptId target,
                                                      ExhaustiveOptions options = {}) {
  options.prune = false;
  detail::SimplePathSearch search(g, options);
  std::vector<PathEffect> out;
  search.run(source, target, [&](std::span<const ConceptId> path, double min_weight,
                                 std::size_t) {
    out.push_back({{path.begin(), path.end()}, min_weight});
  });
  return out;
}

/// Reusable form of total_effect_exhaustive for many queries on one graph.
class ExhaustiveSolver {
 public:
  ExhaustiveSolver(const FcmGraph& g, ExhaustiveOptions options = {}) : search_(g, options) {}

  TotalEffectResult solve(ConceptId source, ConceptId target) {
    TotalEffectResult result{source, target, 0.0, std::nullopt, false};
    search_.run(source, target, [&](std::span<const ConceptId>, double min_weight,
                                    std::size_t max_rank) {
      if (!result.path_found || min_weight > result.value) result.value = min_weight;
      if (!result.path_found || max_rank + 1 < *result.critical_index) {
        result.critical_index = max_rank + 1;
      }
      result.path_found = true;
    });
    return result;
  }

  std::uint64_t last_path_count() const { return search_.paths(); }

 private:
  detail::SimplePathSearch search_;
};

/// Max over simple paths of the min edge weight. The critical index is
/// recovered independently as the min over paths of the worst edge rank.
inline TotalEffectResult total_effect_exhaustive(const FcmGraph& g, ConceptId source,
                                                 ConceptId target, bool prune,
                                                 ExhaustiveOptions options = {}) {
  options.prune = prune;
  return ExhaustiveSolver(g, options).solve(source, target);
}

}  // namespace tcec
