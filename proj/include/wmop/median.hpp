#pragma once

#include <span>
#include <vector>

#include "wmop/types.hpp"

namespace wmop {

/// Non-negative weights summing to 1 (within 1e-9).
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  std::size_t size() const noexcept { return w_.size(); }
  std::span<const double> values() const noexcept { return w_; }

 private:
  std::vector<double> w_;
};

struct MedianResult {
  double value = 0.0;
  bool unique = true;
  /// Every weighted median of x, ascending, distinct values.
  std::vector<double> candidates;
};

/// Weighted median of x under w. When several entries qualify, the one closest
/// to `self_opinion` is returned; equidistant candidates resolve to the smaller.
/// `self_opinion` must be an entry of x.
MedianResult weighted_median(std::span<const double> x, const WeightVector& w,
                             double self_opinion);

/// Exhaustive O(n^2) check of every entry against the two half-mass
/// inequalities, with compensated accumulation. Oracle for weighted_median; n <= 32.
MedianResult brute_force_median(std::span<const double> x, const WeightVector& w,
                                double self_opinion);

/// Unchecked kernel used by the steppers: w is assumed to be a validated row.
double median_value(std::span<const double> x, std::span<const double> w, double self_opinion);

/// Med(x; W): component i is the weighted median of x under row i of W,
/// tie-broken towards x_i. Rows are evaluated in parallel when built with OpenMP.
OpinionVector median_map(std::span<const double> x, const InfluenceNetwork& net);

/// Single-threaded reference for median_map. Results are bit-identical.
OpinionVector median_map_serial(std::span<const double> x, const InfluenceNetwork& net);

}  // namespace wmop
