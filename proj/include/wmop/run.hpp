#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wmop/analysis.hpp"
#include "wmop/dynamics.hpp"
#include "wmop/generators.hpp"
#include "wmop/types.hpp"

namespace wmop {

// Config JSON ----------------------------------------------------------------
//
//   lambda       array | {"uniform": [lo, hi]}        draws lo + (hi-lo)*(1-U), i.e. (lo, hi]
//   u            array | "copy-x0"
//   x0           array | {"range": [lo, hi]}          draws lo + (hi-lo)*U
//   unprejudiced optional array of 1-based agents forced to lambda = 0
//
// Missing keys fall back to the default experiment: x0_i = 0.5 - 0.1 (i-1),
// u = x0, lambda ~ U(0, 1].

struct ResolvedConfig {
  OpinionVector x0;
  PrejudiceConfig cfg;
};

/// Draw order is fixed: lambda first, then x0, from one mt19937_64(seed).
ResolvedConfig resolve_config(const nlohmann::json& config, std::size_t n, std::uint64_t seed);

enum class ModelChoice { WM, FJ, Both };

struct RunSpec {
  std::optional<std::filesystem::path> network_path;
  std::optional<GeneratorParams> generator;
  bool normalize = false;
  nlohmann::json config = nlohmann::json::object();
  ModelChoice model = ModelChoice::WM;
  SimulationOptions sim;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
};

/// Run summary; to_json emits exactly the keys
/// {model, converged, stop_reason, steps, limit, clusters, consensus_guaranteed, rate_check}.
struct RunSummary {
  Model model = Model::WM;
  bool converged = false;
  StopReason stop_reason = StopReason::MaxSteps;
  std::size_t steps = 0;
  std::optional<OpinionVector> limit;
  std::size_t clusters = 0;
  std::optional<bool> consensus_guaranteed;
  std::optional<bool> rate_check;
};

nlohmann::json to_json(const RunSummary& s);

/// Builds the network named by the spec (file or generator).
InfluenceNetwork build_network(const RunSpec& spec);

/// Simulates one model and runs the analysis passes that apply:
/// consensus predicate (mixed agents, common prejudice) and rate check
/// (WM, all prejudiced). Clusters counted on the limit, or the last state.
RunSummary summarize(const Trace& trace, Model model, const InfluenceNetwork& net,
                     const PrejudiceConfig& cfg, double tol);

struct RunOutput {
  std::vector<RunSummary> summaries;
  std::vector<std::filesystem::path> files;
};

/// Executes the spec and writes trace_<model>.csv and summary_<model>.json
/// into out_dir. Throws the wmop error types; see exit_code_for.
RunOutput run(const RunSpec& spec);

/// 0 success, 2 precondition/input violations, 1 IO/parse errors.
int exit_code_for(const std::exception& e) noexcept;

}  // namespace wmop
