#pragma once

// FCM inference: A_i(t+1) = f( sum_{j != i} A_j(t) w_ji ), iterated until a
// fixed point or the iteration cap.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcec/error.hpp"
#include "tcec/graph.hpp"

namespace tcec {

using StateVector = std::vector<double>;

enum class ActivationKind { Sigmoid, HyperbolicTangent, Bivalent, Trivalent };

constexpr std::string_view to_string(ActivationKind k) {
  switch (k) {
    case ActivationKind::Sigmoid: return "sigmoid";
    case ActivationKind::HyperbolicTangent: return "tanh";
    case ActivationKind::Bivalent: return "bivalent";
    case ActivationKind::Trivalent: return "trivalent";
  }
  return "?";
}

inline std::optional<ActivationKind> parse_activation(std::string_view s) {
  if (s == "sigmoid") return ActivationKind::Sigmoid;
  if (s == "tanh" || s == "hyperbolic_tangent") return ActivationKind::HyperbolicTangent;
  if (s == "bivalent") return ActivationKind::Bivalent;
  if (s == "trivalent") return ActivationKind::Trivalent;
  return std::nullopt;
}

struct ActivationSpec {
  ActivationKind kind = ActivationKind::Sigmoid;
  double steepness = 1.0;  // lambda; ignored by the discrete kinds

  double operator()(double x) const {
    switch (kind) {
      case ActivationKind::Sigmoid: return 1.0 / (1.0 + std::exp(-steepness * x));
      case ActivationKind::HyperbolicTangent: return std::tanh(steepness * x);
      case ActivationKind::Bivalent: return x > 0.0 ? 1.0 : 0.0;
      case ActivationKind::Trivalent: return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    }
    return 0.0;
  }

  /// Closed interval containing every output (and every valid state entry).
  double lower() const {
    return kind == ActivationKind::Sigmoid || kind == ActivationKind::Bivalent ? 0.0 : -1.0;
  }
  double upper() const { return 1.0; }

  void validate() const {
    const bool continuous =
        kind == ActivationKind::Sigmoid || kind == ActivationKind::HyperbolicTangent;
    if (continuous && !(steepness > 0.0 && std::isfinite(steepness))) {
      throw Error(ErrorCode::InvalidArgument, "steepness must be a positive finite real");
    }
  }
};

inline void validate_state(const FcmGraph& g, const StateVector& state,
                           const ActivationSpec& activation) {
  if (state.size() != g.size()) {
    throw Error(ErrorCode::DimensionMismatch, "state has " + std::to_string(state.size()) +
                                                  " entries, graph has " +
                                                  std::to_string(g.size()) + " concepts");
  }
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!(state[i] >= activation.lower() && state[i] <= activation.upper())) {
      throw Error(ErrorCode::StateOutOfRange,
                  "entry " + std::to_string(i) + " = " + std::to_string(state[i]) +
                      " outside the range of " + std::string(to_string(activation.kind)));
    }
  }
}

/// One application of the reasoning rule, accumulated over out-adjacency.
inline StateVector step(const FcmGraph& g, const StateVector& state,
                        const ActivationSpec& activation) {
  validate_state(g, state, activation);
  activation.validate();
  StateVector net(g.size(), 0.0);
  for (const Edge& e : g.edges()) net[e.target.index()] += state[e.source.index()] * e.weight;
  for (double& x : net) x = activation(x);
  return net;
}

/// Same rule as the row-vector/matrix product A W, column by column.
inline StateVector step_matrix_form(const FcmGraph& g, const StateVector& state,
                                    const ActivationSpec& activation) {
  validate_state(g, state, activation);
  activation.validate();
  const WeightMatrix& w = g.matrix();
  const std::size_t n = g.size();
  StateVector out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum += state[j] * w(j, i);
    }
    out[i] = activation(sum);
  }
  return out;
}

inline double max_norm_distance(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

struct SimulationConfig {
  ActivationSpec activation;
  std::size_t max_iterations = 100;  // T
  double epsilon = 1e-5;
};

enum class SimulationStatus { FixedPoint, NotConverged };

struct SimulationOutcome {
  std::vector<StateVector> trajectory;  // iterations_run + 1 states
  SimulationStatus status = SimulationStatus::NotConverged;
  std::optional<std::size_t> fixed_point_at;
  std::size_t iterations_run = 0;

  const StateVector& final_state() const { return trajectory.back(); }
};

/// Cyclic and chaotic runs are both reported as NotConverged.
inline SimulationOutcome simulate(const FcmGraph& g, const StateVector& initial,
                                  const SimulationConfig& config) {
  if (config.max_iterations < 1) {
    throw Error(ErrorCode::InvalidArgument, "max iterations must be at least 1");
  }
  if (!(config.epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  config.activation.validate();
  validate_state(g, initial, config.activation);

  SimulationOutcome out;
  out.trajectory.reserve(config.max_iterations + 1);
  out.trajectory.push_back(initial);
  for (std::size_t t = 1; t <= config.max_iterations; ++t) {
    StateVector next = step(g, out.trajectory.back(), config.activation);
    const double delta = max_norm_distance(next, out.trajectory.back());
    out.trajectory.push_back(std::move(next));
    out.iterations_run = t;
    if (delta < config.epsilon) {
      out.status = SimulationStatus::FixedPoint;
      out.fixed_point_at = t;
      break;
    }
  }
  return out;
}

}  // namespace tcec
