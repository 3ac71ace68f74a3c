#include "wmop/median.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wmop/errors.hpp"

namespace wmop {

namespace {

void check_weights(std::span<const double> w) {
  double sum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("weights must be finite and non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kStochasticTol)
    throw InputError("weights sum to " + std::to_string(sum) + ", not 1");
}

void check_arguments(std::span<const double> x, const WeightVector& w, double self_opinion) {
  if (x.empty()) throw InputError("opinion vector is empty");
  if (x.size() != w.size())
    throw InputError("opinion vector has " + std::to_string(x.size()) + " entries, weights " +
                     std::to_string(w.size()));
  for (double v : x)
    if (!std::isfinite(v)) throw InputError("opinions must be finite");
  if (std::find(x.begin(), x.end(), self_opinion) == x.end())
    throw InputError("self opinion is not an entry of the opinion vector");
}

bool within_half(double mass) { return mass <= 0.5 + kHalfMassTol; }

double closest(std::span<const double> candidates, double self_opinion) {
  double best = candidates.front();
  double best_dist = std::abs(best - self_opinion);
  for (double c : candidates.subspan(1)) {
    // candidates ascend, so keeping the first of equal distances keeps the smaller
    const double d = std::abs(c - self_opinion);
    if (d < best_dist) {
      best = c;
      best_dist = d;
    }
  }
  return best;
}

// Sort by value, merge equal values into groups, and keep each group whose
// strictly-below and strictly-above masses are both at most 1/2.
void collect_candidates(std::span<const double> x, std::span<const double> w,
                        std::vector<double>& out) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  std::vector<double> values;
  std::vector<double> mass;
  values.reserve(n);
  mass.reserve(n);
  for (std::size_t k : order) {
    if (values.empty() || x[k] != values.back()) {
      values.push_back(x[k]);
      mass.push_back(w[k]);
    } else {
      mass.back() += w[k];
    }
  }

  const std::size_t groups = values.size();
  std::vector<double> above(groups, 0.0);
  for (std::size_t g = groups - 1; g > 0; --g) above[g - 1] = above[g] + mass[g];

  out.clear();
  double below = 0.0;
  for (std::size_t g = 0; g < groups; ++g) {
    if (within_half(below) && within_half(above[g])) out.push_back(values[g]);
    below += mass[g];
  }
}

}  // namespace

WeightVector::WeightVector(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw InputError("weight vector is empty");
  check_weights(w_);
}

MedianResult weighted_median(std::span<const double> x, const WeightVector& w,
                             double self_opinion) {
  check_arguments(x, w, self_opinion);
  MedianResult r;
  collect_candidates(x, w.values(), r.candidates);
  if (r.candidates.empty())
    throw ConsistencyError("no weighted median found; weights are not a probability vector");
  r.unique = r.candidates.size() == 1;
  r.value = closest(r.candidates, self_opinion);
  return r;
}

MedianResult brute_force_median(std::span<const double> x, const WeightVector& w,
                                double self_opinion) {
  check_arguments(x, w, self_opinion);
  if (x.size() > 32) throw InputError("brute-force median is limited to 32 entries");
  const auto wv = w.values();

  // Neumaier summation of the weights selected by `pick`.
  auto mass = [&](auto pick) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!pick(x[i])) continue;
      const double t = sum + wv[i];
      comp += std::abs(sum) >= std::abs(wv[i]) ? (sum - t) + wv[i] : (wv[i] - t) + sum;
      sum = t;
    }
    return sum + comp;
  };

  MedianResult r;
  for (double z : x) {
    const double lo = mass([z](double v) { return v < z; });
    const double hi = mass([z](double v) { return v > z; });
    if (within_half(lo) && within_half(hi)) r.candidates.push_back(z);
  }
  std::sort(r.candidates.begin(), r.candidates.end());
  r.candidates.erase(std::unique(r.candidates.begin(), r.candidates.end()), r.candidates.end());
  if (r.candidates.empty())
    throw ConsistencyError("no weighted median found; weights are not a probability vector");
  r.unique = r.candidates.size() == 1;
  r.value = closest(r.candidates, self_opinion);
  return r;
}

double median_value(std::span<const double> x, std::span<const double> w, double self_opinion) {
  thread_local std::vector<double> candidates;
  collect_candidates(x, w, candidates);
  if (candidates.empty()) throw ConsistencyError("row without a weighted median");
  return closest(candidates, self_opinion);
}

OpinionVector median_map_serial(std::span<const double> x, const InfluenceNetwork& net) {
  const std::size_t n = net.size();
  if (x.size() != n) throw InputError("opinion vector length does not match network size");
  OpinionVector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = median_value(x, net.row(i), x[i]);
  return out;
}

OpinionVector median_map(std::span<const double> x, const InfluenceNetwork& net) {
  const std::size_t n = net.size();
  if (x.size() != n) throw InputError("opinion vector length does not match network size");
  OpinionVector out(n);
  const auto rows = static_cast<std::ptrdiff_t>(n);
  // Rows are independent; exceptions cannot cross the parallel region.
  bool failed = false;
#pragma omp parallel for schedule(static) if (rows >= 64) reduction(|| : failed)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    try {
      const auto r = static_cast<std::size_t>(i);
      out[r] = median_value(x, net.row(r), x[r]);
    } catch (...) {
      failed = true;
    }
  }
  if (failed) throw ConsistencyError("row without a weighted median");
  return out;
}

}  // namespace wmop
