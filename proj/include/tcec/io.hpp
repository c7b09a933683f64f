#pragma once

// CSV readers and writers. Reals are written in shortest round-trip form, so
// reading a written file reproduces every weight bit for bit.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "tcec/dynamics.hpp"
#include "tcec/error.hpp"
#include "tcec/graph.hpp"

namespace tcec {

enum class GraphFormat { Matrix, EdgeList };

inline constexpr std::string_view kEdgeListHeader = "source,target,weight";

inline std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline bool blank(std::string_view line) { return trim(line).empty(); }

}  // namespace detail

inline double parse_real(std::string_view field, std::size_t line) {
  std::string_view s = detail::trim(field);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::Parse, "not a real number: '" + std::string(field) + "'", line);
  }
  return value;
}

inline std::uint64_t parse_index(std::string_view field, std::size_t line) {
  const std::string_view s = detail::trim(field);
  std::uint64_t value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::Parse, "not a concept index: '" + std::string(field) + "'", line);
  }
  return value;
}

/// n header-less rows of n comma-separated reals.
inline FcmGraph read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> row_lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::blank(line)) continue;
    std::vector<double> row;
    for (std::string_view f : detail::split_fields(line)) row.push_back(parse_real(f, line_no));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::NonSquare,
                  "row has " + std::to_string(row.size()) + " entries, expected " +
                      std::to_string(rows.front().size()),
                  line_no);
    }
    rows.push_back(std::move(row));
    row_lines.push_back(line_no);
  }
  if (!rows.empty() && rows.front().size() != rows.size()) {
    throw Error(ErrorCode::NonSquare, std::to_string(rows.size()) + " rows of " +
                                          std::to_string(rows.front().size()) + " entries",
                line_no);
  }
  // from_dense_matrix reports 1-based row numbers; map them back onto
  // physical lines since blank lines were skipped.
  try {
    return from_dense_matrix(rows);
  } catch (const Error& e) {
    if (!e.line() || *e.line() > row_lines.size()) throw;
    throw Error(e.code(), e.message(), row_lines[*e.line() - 1]);
  }
}

inline void write_matrix_csv(std::ostream& out, const WeightMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out << ',';
      out << format_real(m(i, j));
    }
    out << '\n';
  }
}

/// Header `source,target,weight`, 0-based indices. Without `n`, the concept
/// count is one past the largest index seen.
inline FcmGraph read_edgelist_csv(std::istream& in, std::optional<std::size_t> n = std::nullopt) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<Edge> edges;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  std::uint64_t max_index = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::blank(line)) continue;
    if (!header) {
      if (detail::trim(line) != kEdgeListHeader) {
        throw Error(ErrorCode::Parse, "expected header '" + std::string(kEdgeListHeader) + "'",
                    line_no);
      }
      header = true;
      continue;
    }
    const auto fields = detail::split_fields(line);
    if (fields.size() != 3) {
      throw Error(ErrorCode::Parse, "expected 3 fields, got " + std::to_string(fields.size()),
                  line_no);
    }
    const std::uint64_t s = parse_index(fields[0], line_no);
    const std::uint64_t t = parse_index(fields[1], line_no);
    const double w = parse_real(fields[2], line_no);
    if (s > UINT32_MAX || t > UINT32_MAX || (n && (s >= *n || t >= *n))) {
      throw Error(ErrorCode::ConceptOutOfRange, "edge " + std::to_string(s) + "->" +
                                                    std::to_string(t) + " outside concept range",
                  line_no);
    }
    if (s == t) {
      throw Error(ErrorCode::NonzeroDiagonal, "self-loop on concept " + std::to_string(s),
                  line_no);
    }
    if (!weight_in_range(w)) {
      throw Error(ErrorCode::WeightOutOfRange,
                  "weight " + std::string(fields[2]) + " outside [-1, 1]", line_no);
    }
    if (w == 0.0) throw Error(ErrorCode::ZeroWeight, "zero weight is not an edge", line_no);
    if (!seen.emplace(s, t).second) {
      throw Error(ErrorCode::DuplicateEdge,
                  "duplicate edge " + std::to_string(s) + "->" + std::to_string(t), line_no);
    }
    max_index = std::max({max_index, s, t});
    edges.push_back({ConceptId(static_cast<std::uint32_t>(s)),
                     ConceptId(static_cast<std::uint32_t>(t)), w});
  }
  if (!header) throw Error(ErrorCode::Parse, "empty edge list, header missing", line_no + 1);
  const std::size_t count = n ? *n : (edges.empty() ? 0 : max_index + 1);
  return FcmGraph::from_edges(count, std::move(edges));
}

inline void write_edgelist_csv(std::ostream& out, const FcmGraph& g) {
  out << kEdgeListHeader << '\n';
  for (const Edge& e : g.edges()) {
    out << e.source.value << ',' << e.target.value << ',' << format_real(e.weight) << '\n';
  }
}

/// First non-blank line decides: the edge-list header, or a matrix row.
inline GraphFormat detect_format(std::istream& in) {
  const auto start = in.tellg();
  std::string line;
  GraphFormat format = GraphFormat::Matrix;
  while (std::getline(in, line)) {
    if (detail::blank(line)) continue;
    if (detail::trim(line) == kEdgeListHeader) format = GraphFormat::EdgeList;
    break;
  }
  in.clear();
  in.seekg(start);
  return format;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  return out;
}

inline FcmGraph load_graph(const std::string& path, std::optional<GraphFormat> format = {},
                           std::optional<std::size_t> n = {}) {
  std::ifstream in = open_input(path);
  const GraphFormat f = format ? *format : detect_format(in);
  return f == GraphFormat::EdgeList ? read_edgelist_csv(in, n) : read_matrix_csv(in);
}

inline void save_graph(const std::string& path, const FcmGraph& g, GraphFormat format) {
  std::ofstream out = open_output(path);
  if (format == GraphFormat::EdgeList) {
    write_edgelist_csv(out, g);
  } else {
    write_matrix_csv(out, g.matrix());
  }
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

/// One row of comma-separated reals.
inline StateVector read_state_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::blank(line)) continue;
    StateVector state;
    for (std::string_view f : detail::split_fields(line)) state.push_back(parse_real(f, line_no));
    while (std::getline(in, line)) {
      ++line_no;
      if (!detail::blank(line)) {
        throw Error(ErrorCode::Parse, "state file must hold a single row", line_no);
      }
    }
    return state;
  }
  throw Error(ErrorCode::Parse, "state file is empty", line_no + 1);
}

inline void write_state_row(std::ostream& out, const StateVector& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out << ',';
    out << format_real(s[i]);
  }
  out << '\n';
}

/// One row per iteration, t = 0 first.
inline void write_trajectory_csv(std::ostream& out, const std::vector<StateVector>& trajectory) {
  for (const StateVector& s : trajectory) write_state_row(out, s);
}

}  // namespace tcec
