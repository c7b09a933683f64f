#pragma once

// Fuzzy cognitive map data model: concepts, signed causal weights, the dense
// weight matrix and out-adjacency views, and the globally rank-sorted edge
// list consumed by every solver.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tcec/error.hpp"

namespace tcec {

/// Index of a concept inside its owning graph, 0-based.
struct ConceptId {
  std::uint32_t value = 0;

  constexpr ConceptId() = default;
  constexpr explicit ConceptId(std::uint32_t v) : value(v) {}

  constexpr std::size_t index() const { return value; }
  friend constexpr auto operator<=>(ConceptId, ConceptId) = default;
};

struct Edge {
  ConceptId source;
  ConceptId target;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct OutEdge {
  ConceptId target;
  double weight = 0.0;
};

inline bool weight_in_range(double w) { return w >= -1.0 && w <= 1.0; }

/// Square row-major weight matrix; entry (i, j) is the weight of edge i -> j.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Immutable FCM. Edges are stored once per ordered pair, in (source, target)
/// order; the dense matrix and per-concept out-adjacency are kept alongside.
class FcmGraph {
 public:
  FcmGraph() = default;

  /// Validates and takes ownership of an edge set over `n` concepts.
  static FcmGraph from_edges(std::size_t n, std::vector<Edge> edges) {
    if (n > UINT32_MAX) throw Error(ErrorCode::InvalidArgument, "too many concepts");
    for (const Edge& e : edges) {
      if (e.source.index() >= n || e.target.index() >= n) {
        throw Error(ErrorCode::ConceptOutOfRange,
                    "edge " + std::to_string(e.source.value) + "->" +
                        std::to_string(e.target.value) + " outside concept count " +
                        std::to_string(n));
      }
      if (e.source == e.target) {
        throw Error(ErrorCode::NonzeroDiagonal,
                    "self-loop on concept " + std::to_string(e.source.value));
      }
      if (!weight_in_range(e.weight)) {
        throw Error(ErrorCode::WeightOutOfRange,
                    "weight of " + std::to_string(e.source.value) + "->" +
                        std::to_string(e.target.value) + " is " + std::to_string(e.weight));
      }
      if (e.weight == 0.0) {
        throw Error(ErrorCode::ZeroWeight, "edge " + std::to_string(e.source.value) + "->" +
                                               std::to_string(e.target.value) +
                                               " has zero weight");
      }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return std::pair(a.source, a.target) < std::pair(b.source, b.target);
    });
    for (std::size_t k = 1; k < edges.size(); ++k) {
      if (edges[k - 1].source == edges[k].source && edges[k - 1].target == edges[k].target) {
        throw Error(ErrorCode::DuplicateEdge, "duplicate edge " +
                                                  std::to_string(edges[k].source.value) + "->" +
                                                  std::to_string(edges[k].target.value));
      }
    }
    return FcmGraph(n, std::move(edges));
  }

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  /// Outgoing edges of `c`, ascending by target index.
  std::span<const OutEdge> out_edges(ConceptId c) const {
    const auto begin = offsets_[c.index()];
    return {out_.data() + begin, offsets_[c.index() + 1] - begin};
  }

  const WeightMatrix& matrix() const { return matrix_; }
  double weight(ConceptId from, ConceptId to) const {
    return matrix_(from.index(), to.index());
  }

  bool contains(ConceptId c) const { return c.index() < n_; }

  /// Optional human-readable names; empty or exactly size() entries.
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != n_) {
      throw Error(ErrorCode::DimensionMismatch, "label count must equal concept count");
    }
    labels_ = std::move(labels);
  }

  friend bool operator==(const FcmGraph& a, const FcmGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  FcmGraph(std::size_t n, std::vector<Edge> edges)
      : n_(n), edges_(std::move(edges)), offsets_(n + 1, 0), matrix_(n) {
    out_.reserve(edges_.size());
    for (const Edge& e : edges_) {
      ++offsets_[e.source.index() + 1];
      out_.push_back({e.target, e.weight});
      matrix_(e.source.index(), e.target.index()) = e.weight;
    }
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<OutEdge> out_;
  WeightMatrix matrix_;
  std::vector<std::string> labels_;
};

inline FcmGraph from_dense_matrix(const WeightMatrix& m) {
  const std::size_t n = m.size();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = m(i, j);
      if (!weight_in_range(w)) {
        throw Error(ErrorCode::WeightOutOfRange, "cell (" + std::to_string(i) + "," +
                                                     std::to_string(j) + ") = " +
                                                     std::to_string(w),
                    i + 1);
      }
      if (w == 0.0) continue;
      if (i == j) {
        throw Error(ErrorCode::NonzeroDiagonal,
                    "diagonal cell (" + std::to_string(i) + "," + std::to_string(i) + ")", i + 1);
      }
      edges.push_back({ConceptId(static_cast<std::uint32_t>(i)),
                       ConceptId(static_cast<std::uint32_t>(j)), w});
    }
  }
  return FcmGraph::from_edges(n, std::move(edges));
}

/// Row-list overload; rejects ragged or non-square input.
inline FcmGraph from_dense_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  WeightMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::NonSquare, "row " + std::to_string(i) + " has " +
                                            std::to_string(rows[i].size()) +
                                            " entries, expected " + std::to_string(n),
                  i + 1);
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return from_dense_matrix(m);
}

inline const WeightMatrix& to_dense_matrix(const FcmGraph& g) { return g.matrix(); }

/// e / (n (n - 1)).
inline double density(const FcmGraph& g) {
  if (g.size() < 2) throw Error(ErrorCode::TooFewConcepts, "density needs at least 2 concepts");
  const double n = static_cast<double>(g.size());
  return static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

/// Edges ranked by weight, descending; ties broken by (source, target)
/// ascending so the order, and therefore every critical index, is unique.
class SortedEdgeList {
 public:
  SortedEdgeList() = default;
  explicit SortedEdgeList(const FcmGraph& g) : entries_(g.edges().begin(), g.edges().end()) {
    std::sort(entries_.begin(), entries_.end(), ranks_before);
  }

  static bool ranks_before(const Edge& a, const Edge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const Edge> entries() const { return entries_; }

  /// 0-based rank (the k-th prefix holds ranks 0..k-1).
  const Edge& operator[](std::size_t rank) const { return entries_[rank]; }

  /// Weight at a 1-based prefix length, as used for critical indices.
  double weight_at_prefix(std::size_t k) const { return entries_.at(k - 1).weight; }

  friend bool operator==(const SortedEdgeList&, const SortedEdgeList&) = default;

 private:
  std::vector<Edge> entries_;
};

inline SortedEdgeList sorted_edges(const FcmGraph& g) { return SortedEdgeList(g); }

}  // namespace tcec
