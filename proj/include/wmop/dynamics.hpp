#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "wmop/types.hpp"

namespace wmop {

enum class Model { WM, FJ };
enum class StopReason { ToleranceMet, MaxSteps, CycleDetected };

std::string_view to_string(Model m);
std::string_view to_string(StopReason r);

/// Recorded trajectory. `states[k]` is x(times[k]); times[0] == 0 and the
/// final state of the run is always recorded regardless of stride.
struct Trace {
  std::size_t dimension = 0;
  std::vector<OpinionVector> states;
  std::vector<std::size_t> times;
  bool converged = false;
  std::optional<OpinionVector> limit;
  std::size_t steps = 0;
  StopReason stop_reason = StopReason::MaxSteps;
  /// Shortest period found when stop_reason == CycleDetected, else 0.
  std::size_t cycle_period = 0;

  const OpinionVector& final_state() const { return states.back(); }
};

struct SimulationOptions {
  double tol = 1e-12;
  std::size_t max_steps = 1'000'000;
  std::size_t cycle_window = 64;
  /// Record every `stride`-th state (1 = full history).
  std::size_t stride = 1;
};

/// x_i(t+1) = lambda_i u_i + (1 - lambda_i) Med_i(x(t); W), evaluated as
/// std::lerp(Med_i, u_i, lambda_i).
OpinionVector step_wm(std::span<const double> x, const InfluenceNetwork& net,
                      const PrejudiceConfig& cfg);

/// x(t+1) = Lambda u + (I - Lambda) W x(t).
OpinionVector step_fj(std::span<const double> x, const InfluenceNetwork& net,
                      const PrejudiceConfig& cfg);

/// Serial reference of step_fj (the parallel version splits rows across threads).
OpinionVector step_fj_serial(std::span<const double> x, const InfluenceNetwork& net,
                             const PrejudiceConfig& cfg);

/// Iterate the chosen stepper from x0.
///
/// Stops with ToleranceMet once ||x(t+1) - x(t)||_inf < tol. Stops with
/// CycleDetected when x(t+1) is within tol of some x(s), t+1-window <= s < t,
/// provided the orbit is genuinely periodic: the return distance is at most
/// 1e-3 of the one-step change, and the one-step change has not shrunk over
/// the period. Converging oscillations and rotations are not reported as cycles.
/// Otherwise stops at max_steps.
Trace simulate(std::span<const double> x0, const InfluenceNetwork& net,
               const PrejudiceConfig& cfg, Model model, const SimulationOptions& opts = {});

/// Per recorded state: (max_i x_i, min_i x_i).
std::vector<std::pair<double, double>> max_min_envelope(const Trace& trace);

}  // namespace wmop
