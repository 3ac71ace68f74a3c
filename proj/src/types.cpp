#include "wmop/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wmop/errors.hpp"

namespace wmop {

InfluenceNetwork::InfluenceNetwork(std::size_t n, std::vector<double> weights)
    : n_(n), w_(std::move(weights)) {
  if (n_ == 0) throw InputError("influence network needs at least one agent");
  if (w_.size() != n_ * n_)
    throw InputError("influence matrix has " + std::to_string(w_.size()) + " entries, expected " +
                     std::to_string(n_ * n_));
  for (std::size_t i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double w = w_[i * n_ + j];
      if (!(w >= 0.0 && w <= 1.0))
        throw InputError("w(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") outside [0,1]");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kStochasticTol)
      throw InputError("row " + std::to_string(i + 1) + " sums to " + std::to_string(sum) +
                       ", not 1");
  }
}

InfluenceNetwork InfluenceNetwork::identity(std::size_t n) {
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 1.0;
  return {n, std::move(w)};
}

PrejudiceConfig::PrejudiceConfig(std::vector<double> lambda, std::vector<double> u)
    : lambda_(std::move(lambda)), u_(std::move(u)) {
  if (lambda_.size() != u_.size())
    throw InputError("lambda and u lengths differ");
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    if (!(lambda_[i] >= 0.0 && lambda_[i] <= 1.0))
      throw InputError("lambda_" + std::to_string(i + 1) + " outside [0,1]");
    if (!std::isfinite(u_[i])) throw InputError("u_" + std::to_string(i + 1) + " not finite");
  }
}

double PrejudiceConfig::lambda_min() const noexcept {
  return lambda_.empty() ? 0.0 : *std::min_element(lambda_.begin(), lambda_.end());
}

double PrejudiceConfig::lambda_max() const noexcept {
  return lambda_.empty() ? 0.0 : *std::max_element(lambda_.begin(), lambda_.end());
}

std::vector<std::size_t> PrejudiceConfig::prejudiced() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < lambda_.size(); ++i)
    if (lambda_[i] > 0.0) out.push_back(i);
  return out;
}

std::vector<std::size_t> PrejudiceConfig::unprejudiced() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < lambda_.size(); ++i)
    if (lambda_[i] == 0.0) out.push_back(i);
  return out;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("vector lengths differ");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace wmop
