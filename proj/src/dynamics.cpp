#include "wmop/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "wmop/errors.hpp"
#include "wmop/median.hpp"

namespace wmop {

namespace {

void check_dimensions(std::span<const double> x, const InfluenceNetwork& net,
                      const PrejudiceConfig& cfg) {
  if (x.size() != net.size() || cfg.size() != net.size())
    throw InputError("state, network and prejudice config dimensions disagree");
}

double fj_row(std::span<const double> x, const InfluenceNetwork& net, const PrejudiceConfig& cfg,
              std::size_t i) {
  const auto w = net.row(i);
  double acc = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * x[j];
  return std::lerp(acc, cfg.u()[i], cfg.lambda()[i]);
}

}  // namespace

std::string_view to_string(Model m) { return m == Model::WM ? "wm" : "fj"; }

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::ToleranceMet: return "tolerance-met";
    case StopReason::MaxSteps: return "max-steps";
    case StopReason::CycleDetected: return "cycle-detected";
  }
  return "unknown";
}

OpinionVector step_wm(std::span<const double> x, const InfluenceNetwork& net,
                      const PrejudiceConfig& cfg) {
  check_dimensions(x, net, cfg);
  OpinionVector next = median_map(x, net);
  const auto& lam = cfg.lambda();
  const auto& u = cfg.u();
  // lerp is exact at lambda = 0 and 1 and when u_i equals the median
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::lerp(next[i], u[i], lam[i]);
  return next;
}

OpinionVector step_fj_serial(std::span<const double> x, const InfluenceNetwork& net,
                             const PrejudiceConfig& cfg) {
  check_dimensions(x, net, cfg);
  OpinionVector next(x.size());
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = fj_row(x, net, cfg, i);
  return next;
}

OpinionVector step_fj(std::span<const double> x, const InfluenceNetwork& net,
                      const PrejudiceConfig& cfg) {
  check_dimensions(x, net, cfg);
  OpinionVector next(x.size());
  const auto rows = static_cast<std::ptrdiff_t>(next.size());
#pragma omp parallel for schedule(static) if (rows >= 128)
  for (std::ptrdiff_t i = 0; i < rows; ++i)
    next[static_cast<std::size_t>(i)] = fj_row(x, net, cfg, static_cast<std::size_t>(i));
  return next;
}

Trace simulate(std::span<const double> x0, const InfluenceNetwork& net,
               const PrejudiceConfig& cfg, Model model, const SimulationOptions& opts) {
  check_dimensions(x0, net, cfg);
  if (!(opts.tol > 0.0)) throw InputError("tolerance must be positive");
  if (opts.max_steps < 1) throw InputError("max_steps must be at least 1");
  if (opts.cycle_window < 2) throw InputError("cycle_window must be at least 2");
  if (opts.stride < 1) throw InputError("stride must be at least 1");

  Trace trace;
  trace.dimension = x0.size();
  trace.states.emplace_back(x0.begin(), x0.end());
  trace.times.push_back(0);

  // recent[k] = x(t - k); one extra slot so the one-step change a period ago is known.
  std::deque<OpinionVector> recent{OpinionVector(x0.begin(), x0.end())};
  OpinionVector current(x0.begin(), x0.end());

  auto record = [&](std::size_t t, const OpinionVector& x) {
    if (trace.times.back() != t) {
      trace.states.push_back(x);
      trace.times.push_back(t);
    }
  };

  for (std::size_t t = 0; t < opts.max_steps; ++t) {
    OpinionVector next = model == Model::WM ? step_wm(current, net, cfg) : step_fj(current, net, cfg);
    const std::size_t tn = t + 1;
    const double change = max_abs_diff(next, current);
    trace.steps = tn;

    if (change < opts.tol) {
      record(tn, next);
      trace.converged = true;
      trace.stop_reason = StopReason::ToleranceMet;
      trace.limit = next;
      return trace;
    }

    // recent[0] = x(t); compare x(t+1) against x(t-1), x(t-2), ... in the window.
    for (std::size_t lag = 1; lag < recent.size() && lag + 1 <= opts.cycle_window; ++lag) {
      const double miss = max_abs_diff(next, recent[lag]);
      if (miss >= opts.tol) continue;
      // A genuine orbit returns far more precisely than it moves; a converging
      // rotation only returns to within the size of its current step.
      if (miss > 1e-3 * change) continue;
      const std::size_t period = lag + 1;
      // One-step change at the start of the candidate period: x(s+1) - x(s), s = t+1-period.
      const bool have_earlier = period + 1 <= recent.size();
      const double earlier_change =
          have_earlier ? max_abs_diff(recent[period - 1], recent[period]) : change;
      if (change + 1e-3 * opts.tol < earlier_change) continue;
      record(tn, next);
      trace.stop_reason = StopReason::CycleDetected;
      trace.cycle_period = period;
      return trace;
    }

    if (tn % opts.stride == 0) record(tn, next);
    recent.push_front(next);
    if (recent.size() > opts.cycle_window + 1) recent.pop_back();
    current = std::move(next);
  }

  record(trace.steps, current);
  trace.stop_reason = StopReason::MaxSteps;
  return trace;
}

std::vector<std::pair<double, double>> max_min_envelope(const Trace& trace) {
  if (trace.states.empty()) throw InputError("trace is empty");
  std::vector<std::pair<double, double>> env;
  env.reserve(trace.states.size());
  for (const auto& x : trace.states) {
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    env.emplace_back(*hi, *lo);
  }
  return env;
}

}  // namespace wmop
