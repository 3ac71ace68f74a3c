#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wmop/dynamics.hpp"
#include "wmop/types.hpp"

namespace wmop {

// Edge lists ----------------------------------------------------------------
//
// One edge per line: "src dst weight", 1-based agents, whitespace separated.
// '#' starts a comment. Repeated (src, dst) pairs accumulate. Agent count is
// the largest index seen unless `n` is given.

struct EdgeListOptions {
  bool normalize = false;
  std::optional<std::size_t> n;
};

InfluenceNetwork parse_network(std::istream& in, const EdgeListOptions& opts = {});
InfluenceNetwork load_network(const std::filesystem::path& path, const EdgeListOptions& opts = {});

/// Writes every non-zero w_ij as an edge line (17 significant digits).
void write_network(std::ostream& out, const InfluenceNetwork& net);

// Traces --------------------------------------------------------------------
//
// CSV with header "t,x1,...,xn" and one row per recorded state, numbers at
// 17 significant digits, LF line endings.

void write_trace(std::ostream& out, const Trace& trace);
void export_trace(const Trace& trace, const std::filesystem::path& path);

/// Reads back the states and times of an exported trace (metadata is not stored).
Trace import_trace(const std::filesystem::path& path);

/// Formats a double with 17 significant digits ("%.17g").
std::string format_double(double v);

}  // namespace wmop
