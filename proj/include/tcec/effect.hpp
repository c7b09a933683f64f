#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "tcec/graph.hpp"

namespace tcec {

/// T(source, target). `critical_index` is the 1-based length of the shortest
/// sorted-edge prefix that connects the pair; absent when no path exists,
/// in which case `value` is 0.
struct TotalEffectResult {
  ConceptId source;
  ConceptId target;
  double value = 0.0;
  std::optional<std::size_t> critical_index;
  bool path_found = false;

  friend bool operator==(const TotalEffectResult&, const TotalEffectResult&) = default;
};

enum class Method { Binary, Linear, Exhaustive };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::Binary: return "binary";
    case Method::Linear: return "linear";
    case Method::Exhaustive: return "exhaustive";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
  if (s == "binary") return Method::Binary;
  if (s == "linear") return Method::Linear;
  if (s == "exhaustive") return Method::Exhaustive;
  return std::nullopt;
}

}  // namespace tcec
