#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wmop {

/// Opinion state x(t), one entry per agent.
using OpinionVector = std::vector<double>;

/// Tolerance on row sums / weight-vector sums.
inline constexpr double kStochasticTol = 1e-9;

/// Absolute tolerance on half-mass comparisons (weighted median, cohesion).
inline constexpr double kHalfMassTol = 1e-12;

/// Row-stochastic influence matrix W, stored row-major. Agents are 0-based.
class InfluenceNetwork {
 public:
  /// Validates: n > 0, n*n entries, all in [0,1], every row sums to 1 within 1e-9.
  InfluenceNetwork(std::size_t n, std::vector<double> weights);

  static InfluenceNetwork identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return w_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {w_.data() + i * n_, n_};
  }
  const std::vector<double>& weights() const noexcept { return w_; }

  friend bool operator==(const InfluenceNetwork&, const InfluenceNetwork&) = default;

 private:
  std::size_t n_;
  std::vector<double> w_;
};

/// Susceptibilities lambda_i in [0,1] and prejudices u_i.
/// lambda_i > 0 marks agent i prejudiced, lambda_i == 0 unprejudiced.
class PrejudiceConfig {
 public:
  PrejudiceConfig(std::vector<double> lambda, std::vector<double> u);

  std::size_t size() const noexcept { return lambda_.size(); }
  const std::vector<double>& lambda() const noexcept { return lambda_; }
  const std::vector<double>& u() const noexcept { return u_; }

  double lambda_min() const noexcept;
  double lambda_max() const noexcept;
  bool all_prejudiced() const noexcept { return lambda_min() > 0.0; }

  std::vector<std::size_t> prejudiced() const;
  std::vector<std::size_t> unprejudiced() const;

 private:
  std::vector<double> lambda_;
  std::vector<double> u_;
};

/// ||a - b||_inf; throws InputError on length mismatch.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace wmop
