#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "wmop/types.hpp"

namespace wmop {

enum class GeneratorKind { Complete, Star, ReciprocalPair, UniformNeighbor, RandomRowStochastic };

std::optional<GeneratorKind> parse_generator_kind(std::string_view name);
std::string_view to_string(GeneratorKind k);

struct GeneratorParams {
  GeneratorKind kind = GeneratorKind::Complete;
  std::size_t n = 0;
  /// Star: weight each leaf puts on the hub (agent 1); the rest stays on itself.
  double hub_weight = 0.6;
  /// UniformNeighbor: undirected adjacency list, lines "i j" (1-based, an
  /// optional third column is ignored). Each agent spreads weight evenly over
  /// its neighbours; self-loops count only when listed.
  std::filesystem::path edges;
  /// RandomRowStochastic: probability that an off-diagonal entry is non-zero.
  double density = 0.5;
};

/// Deterministic in (params, seed). Only RandomRowStochastic consumes the seed.
InfluenceNetwork generate(const GeneratorParams& params, std::uint64_t seed);

/// Uniform double in [0, 1) from the top 53 bits of one 64-bit draw.
/// Used everywhere randomness must be reproducible across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace wmop
