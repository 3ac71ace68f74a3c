#include "wmop/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "wmop/errors.hpp"

namespace wmop {

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

std::size_t parse_agent(const std::string& tok, std::size_t line) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw IoError("bad agent index '" + tok + "'", line);
  }
  if (pos != tok.size() || v < 1) throw IoError("bad agent index '" + tok + "'", line);
  return static_cast<std::size_t>(v);
}

std::size_t parse_count(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || end != tok.data() + tok.size()) throw IoError("bad step index '" + tok + "'", line);
  return v;
}

double parse_number(const std::string& tok, std::size_t line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw IoError("bad number '" + tok + "'", line);
  }
  if (pos != tok.size() || !std::isfinite(v)) throw IoError("bad number '" + tok + "'", line);
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

InfluenceNetwork parse_network(std::istream& in, const EdgeListOptions& opts) {
  std::map<std::pair<std::size_t, std::size_t>, double> edges;
  std::size_t n = 0;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    const std::string body = strip_comment(raw);
    if (blank(body)) continue;
    std::istringstream ss(body);
    std::string a, b, w, extra;
    if (!(ss >> a >> b >> w)) throw IoError("expected 'src dst weight'", line);
    if (ss >> extra) throw IoError("trailing field '" + extra + "'", line);
    const std::size_t src = parse_agent(a, line);
    const std::size_t dst = parse_agent(b, line);
    const double weight = parse_number(w, line);
    if (weight < 0.0) throw IoError("negative weight", line);
    edges[{src - 1, dst - 1}] += weight;
    n = std::max({n, src, dst});
  }
  if (opts.n) {
    if (*opts.n < n) throw IoError("edge list references agent " + std::to_string(n) +
                                   " beyond n = " + std::to_string(*opts.n));
    n = *opts.n;
  }
  if (n == 0) throw IoError("edge list has no edges");

  std::vector<double> w(n * n, 0.0);
  for (const auto& [ij, weight] : edges) w[ij.first * n + ij.second] = weight;

  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += w[i * n + j];
    if (sum == 0.0) throw IoError("agent " + std::to_string(i + 1) + " has no outgoing weight");
    if (opts.normalize) {
      for (std::size_t j = 0; j < n; ++j) w[i * n + j] /= sum;
    } else if (std::abs(sum - 1.0) > kStochasticTol) {
      throw IoError("row " + std::to_string(i + 1) + " sums to " + format_double(sum) +
                    "; pass --normalize to rescale");
    }
  }
  return {n, std::move(w)};
}

InfluenceNetwork load_network(const std::filesystem::path& path, const EdgeListOptions& opts) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return parse_network(in, opts);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_network(std::ostream& out, const InfluenceNetwork& net) {
  const std::size_t n = net.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (net(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << format_double(net(i, j)) << '\n';
}

void write_trace(std::ostream& out, const Trace& trace) {
  out << 't';
  for (std::size_t i = 1; i <= trace.dimension; ++i) out << ",x" << i;
  out << '\n';
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    out << trace.times[k];
    for (double v : trace.states[k]) out << ',' << format_double(v);
    out << '\n';
  }
}

void export_trace(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  write_trace(out, trace);
  if (!out) throw IoError("write failed for " + path.string());
}

Trace import_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.empty() || line[0] != 't')
    throw IoError(path.string() + ": missing trace header", 1);

  Trace trace;
  trace.dimension = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  for (std::size_t no = 2; std::getline(in, line); ++no) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');
    trace.times.push_back(parse_count(field, no));
    OpinionVector x;
    while (std::getline(ss, field, ',')) x.push_back(parse_number(field, no));
    if (x.size() != trace.dimension)
      throw IoError(path.string() + ": row has " + std::to_string(x.size()) + " values", no);
    trace.states.push_back(std::move(x));
  }
  trace.steps = trace.times.empty() ? 0 : trace.times.back();
  return trace;
}

}  // namespace wmop
