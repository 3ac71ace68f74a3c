#include "wmop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wmop/errors.hpp"
#include "wmop/median.hpp"

namespace wmop {

namespace {

void require_all_prejudiced(const PrejudiceConfig& cfg, const char* what) {
  if (!cfg.all_prejudiced())
    throw PreconditionError(std::string(what) + " requires every lambda_i > 0");
}

void check_indices(std::span<const std::size_t> subset, std::size_t n) {
  for (std::size_t i : subset)
    if (i >= n) throw InputError("agent index " + std::to_string(i + 1) + " out of range");
}

constexpr double kSelectionTol = 1e-9;
constexpr double kSolveResidualTol = 1e-10;

}  // namespace

FixedPointResult fixed_point(const InfluenceNetwork& net, const PrejudiceConfig& cfg, double tol,
                             std::optional<std::span<const double>> start,
                             std::size_t max_iterations) {
  if (cfg.size() != net.size()) throw InputError("prejudice config does not match network size");
  require_all_prejudiced(cfg, "fixed_point");
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");

  OpinionVector x = start ? OpinionVector(start->begin(), start->end()) : cfg.u();
  if (x.size() != net.size()) throw InputError("start vector does not match network size");

  for (std::size_t it = 1; it <= max_iterations; ++it) {
    OpinionVector next = step_wm(x, net, cfg);
    const double residual = max_abs_diff(next, x);
    x = std::move(next);
    if (residual < tol) return {std::move(x), it};
  }
  throw ConsistencyError("fixed-point iteration did not reach tolerance in " +
                         std::to_string(max_iterations) + " iterations");
}

SelectionMatrix extract_selection(std::span<const double> xstar, const InfluenceNetwork& net,
                                  const PrejudiceConfig& cfg) {
  const std::size_t n = net.size();
  if (xstar.size() != n || cfg.size() != n) throw InputError("dimensions disagree");
  const OpinionVector med = median_map(xstar, net);

  SelectionMatrix sel{std::vector<std::size_t>(n), cfg.lambda()};
  for (std::size_t i = 0; i < n; ++i) {
    auto hit = std::find_if(xstar.begin(), xstar.end(),
                            [&](double v) { return std::abs(v - med[i]) <= kSelectionTol; });
    if (hit == xstar.end())
      throw ConsistencyError("no agent holds the median of row " + std::to_string(i + 1));
    sel.k[i] = static_cast<std::size_t>(hit - xstar.begin());

    const double lam = cfg.lambda()[i];
    const double implied = lam * cfg.u()[i] + (1.0 - lam) * xstar[sel.k[i]];
    if (std::abs(implied - xstar[i]) > kSelectionTol)
      throw ConsistencyError("agent " + std::to_string(i + 1) +
                             " violates the fixed-point equation; not a fixed point");
  }
  return sel;
}

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  if (a.size() != n * n) throw InputError("matrix is not square or does not match rhs");

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    if (a[pivot * n + col] == 0.0) throw ConsistencyError("singular matrix");
    if (pivot != col) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(col * n),
                       a.begin() + static_cast<std::ptrdiff_t>(col * n + n),
                       a.begin() + static_cast<std::ptrdiff_t>(pivot * n));
      std::swap(b[col], b[pivot]);
    }
    const double d = a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / d;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
    x[r] = s / a[r * n + r];
  }
  return x;
}

OpinionVector limit_from_selection(const SelectionMatrix& sel, const PrejudiceConfig& cfg) {
  const std::size_t n = cfg.size();
  if (sel.k.size() != n) throw InputError("selection does not match prejudice config");
  require_all_prejudiced(cfg, "limit_from_selection");
  for (std::size_t k : sel.k)
    if (k >= n) throw InputError("selection column out of range");

  std::vector<double> m(n * n, 0.0);
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = cfg.lambda()[i];
    m[i * n + i] = 1.0;
    m[i * n + sel.k[i]] -= 1.0 - lam;
    rhs[i] = lam * cfg.u()[i];
  }
  OpinionVector x = solve_dense(m, rhs);

  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = -rhs[i];
    for (std::size_t j = 0; j < n; ++j) r += m[i * n + j] * x[j];
    residual = std::max(residual, std::abs(r));
  }
  if (residual > kSolveResidualTol)
    throw ConsistencyError("selection solve residual " + std::to_string(residual) + " too large");
  return x;
}

SelectionMatrix complete_graph_selection(std::size_t n, const PrejudiceConfig& cfg) {
  if (n == 0 || cfg.size() != n) throw InputError("config does not match agent count");
  require_all_prejudiced(cfg, "complete_graph_selection");
  if (!std::is_sorted(cfg.u().begin(), cfg.u().end()))
    throw PreconditionError("prejudices must be sorted ascending; sort agents and keep the permutation");

  SelectionMatrix sel{std::vector<std::size_t>(n), cfg.lambda()};
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t k = n % 2 == 1 ? (n + 1) / 2 : n / 2 + (2 * i - 1) / n;
    sel.k[i - 1] = k - 1;
  }
  return sel;
}

bool verify_rate(const Trace& trace, std::span<const double> xstar, double lambda_min) {
  if (trace.states.empty()) return true;
  const double rate = 1.0 - lambda_min;
  const double initial = max_abs_diff(trace.states.front(), xstar);
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    const double bound = std::pow(rate, static_cast<double>(trace.times[k])) * initial;
    if (max_abs_diff(trace.states[k], xstar) > bound + 1e-9) return false;
  }
  return true;
}

double inside_mass(std::size_t i, std::span<const std::size_t> subset, const InfluenceNetwork& net) {
  double m = 0.0;
  for (std::size_t j : subset) m += net(i, j);
  return m;
}

bool is_cohesive(std::span<const std::size_t> subset, const InfluenceNetwork& net) {
  if (subset.empty()) throw InputError("a cohesive set must be non-empty");
  check_indices(subset, net.size());
  return std::all_of(subset.begin(), subset.end(), [&](std::size_t i) {
    return inside_mass(i, subset, net) >= 0.5 - kHalfMassTol;
  });
}

namespace {

template <class Pick>
CohesiveReport peel(std::span<const std::size_t> candidates, const InfluenceNetwork& net, Pick pick) {
  check_indices(candidates, net.size());
  std::vector<std::size_t> remaining(candidates.begin(), candidates.end());
  std::sort(remaining.begin(), remaining.end());
  remaining.erase(std::unique(remaining.begin(), remaining.end()), remaining.end());

  CohesiveReport report;
  std::vector<std::pair<std::size_t, double>> weak;  // (position in remaining, mass)
  while (true) {
    weak.clear();
    for (std::size_t p = 0; p < remaining.size(); ++p) {
      const double m = inside_mass(remaining[p], remaining, net);
      if (m < 0.5 - kHalfMassTol) weak.emplace_back(p, m);
    }
    if (weak.empty()) break;
    const auto [pos, mass] = weak[pick(weak.size())];
    report.peel_order.emplace_back(remaining[pos], mass);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  report.maximal_subset = std::move(remaining);
  return report;
}

}  // namespace

CohesiveReport max_cohesive_subset(std::span<const std::size_t> candidates,
                                   const InfluenceNetwork& net) {
  return peel(candidates, net, [](std::size_t) { return std::size_t{0}; });
}

CohesiveReport max_cohesive_subset(std::span<const std::size_t> candidates,
                                   const InfluenceNetwork& net, std::mt19937_64& rng) {
  return peel(candidates, net, [&](std::size_t count) {
    return static_cast<std::size_t>(rng() % count);
  });
}

bool consensus_predicate(const InfluenceNetwork& net, const PrejudiceConfig& cfg) {
  if (cfg.size() != net.size()) throw InputError("prejudice config does not match network size");
  const auto v1 = cfg.prejudiced();
  const auto v2 = cfg.unprejudiced();
  if (v1.empty() || v2.empty())
    throw PreconditionError(
        "consensus check needs both prejudiced and unprejudiced agents; "
        "with every agent prejudiced use the fixed-point analysis");
  const double u0 = cfg.u()[v1.front()];
  for (std::size_t i : v1)
    if (std::abs(cfg.u()[i] - u0) > kHalfMassTol)
      throw PreconditionError("consensus check requires a common prejudice among prejudiced agents");
  return max_cohesive_subset(v2, net).maximal_subset.empty();
}

std::size_t count_clusters(std::span<const double> values, double gap) {
  if (values.empty()) return 0;
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  std::size_t clusters = 1;
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k] - v[k - 1] > gap) ++clusters;
  return clusters;
}

}  // namespace wmop
