#include "wmop/generators.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "wmop/errors.hpp"

namespace wmop {

namespace {

InfluenceNetwork complete(std::size_t n) {
  return {n, std::vector<double>(n * n, 1.0 / static_cast<double>(n))};
}

InfluenceNetwork star(std::size_t n, double hub_weight) {
  if (n < 2) throw InputError("star needs n >= 2");
  if (!(hub_weight >= 0.0 && hub_weight <= 1.0)) throw InputError("hub weight outside [0,1]");
  std::vector<double> w(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) w[j] = 1.0 / static_cast<double>(n);
  for (std::size_t i = 1; i < n; ++i) {
    w[i * n] = hub_weight;
    w[i * n + i] = 1.0 - hub_weight;
  }
  return {n, std::move(w)};
}

// Agent 1 listens only to itself, agents 2 and 3 listen only to each other,
// any further agents listen only to themselves.
InfluenceNetwork reciprocal_pair(std::size_t n) {
  if (n < 3) throw InputError("reciprocal-pair needs n >= 3");
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 1.0;
  w[1 * n + 1] = 0.0;
  w[2 * n + 2] = 0.0;
  w[1 * n + 2] = 1.0;
  w[2 * n + 1] = 1.0;
  return {n, std::move(w)};
}

InfluenceNetwork uniform_neighbor(std::size_t n, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t max_index = 0;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ss(raw);
    long long a = 0, b = 0;
    if (!(ss >> a)) continue;
    if (!(ss >> b) || a < 1 || b < 1) throw IoError(path.string() + ": expected 'i j'", line);
    pairs.emplace_back(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
    max_index = std::max({max_index, static_cast<std::size_t>(a), static_cast<std::size_t>(b)});
  }
  if (n == 0) n = max_index;
  if (max_index > n) throw InputError("adjacency references agents beyond n");
  if (n == 0) throw IoError(path.string() + ": adjacency list is empty");

  std::vector<std::set<std::size_t>> adj(n);
  for (auto [a, b] : pairs) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (adj[i].empty()) throw InputError("agent " + std::to_string(i + 1) + " has no neighbours");
    const double share = 1.0 / static_cast<double>(adj[i].size());
    for (std::size_t j : adj[i]) w[i * n + j] = share;
  }
  return {n, std::move(w)};
}

// Integer weights 1..8 on a random sparsity pattern, divided by the row total.
InfluenceNetwork random_row_stochastic(std::size_t n, double density, std::uint64_t seed) {
  if (n == 0) throw InputError("n must be positive");
  if (!(density >= 0.0 && density <= 1.0)) throw InputError("density outside [0,1]");
  std::mt19937_64 rng(seed);
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (uniform01(rng) < density) {
        w[i * n + j] = static_cast<double>(1 + rng() % 8);
        total += w[i * n + j];
      }
    }
    if (total == 0.0) {
      w[i * n + i] = 1.0;
      total = 1.0;
    }
    for (std::size_t j = 0; j < n; ++j) w[i * n + j] /= total;
  }
  return {n, std::move(w)};
}

}  // namespace

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) {
  if (name == "complete") return GeneratorKind::Complete;
  if (name == "star") return GeneratorKind::Star;
  if (name == "reciprocal-pair") return GeneratorKind::ReciprocalPair;
  if (name == "uniform-neighbor") return GeneratorKind::UniformNeighbor;
  if (name == "random") return GeneratorKind::RandomRowStochastic;
  return std::nullopt;
}

std::string_view to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Complete: return "complete";
    case GeneratorKind::Star: return "star";
    case GeneratorKind::ReciprocalPair: return "reciprocal-pair";
    case GeneratorKind::UniformNeighbor: return "uniform-neighbor";
    case GeneratorKind::RandomRowStochastic: return "random";
  }
  return "unknown";
}

InfluenceNetwork generate(const GeneratorParams& params, std::uint64_t seed) {
  switch (params.kind) {
    case GeneratorKind::Complete:
      if (params.n == 0) throw InputError("n must be positive");
      return complete(params.n);
    case GeneratorKind::Star: return star(params.n, params.hub_weight);
    case GeneratorKind::ReciprocalPair: return reciprocal_pair(params.n);
    case GeneratorKind::UniformNeighbor: return uniform_neighbor(params.n, params.edges);
    case GeneratorKind::RandomRowStochastic:
      return random_row_stochastic(params.n, params.density, seed);
  }
  throw InputError("unknown generator");
}

}  // namespace wmop
