#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "wmop/dynamics.hpp"
#include "wmop/types.hpp"

namespace wmop {

// Limit point of the all-prejudiced system -------------------------------

struct FixedPointResult {
  OpinionVector x;
  std::size_t iterations = 0;
};

/// Iterates F(x) = Lambda u + (I - Lambda) Med(x; W) until ||F(x) - x||_inf < tol.
/// F is a (1 - lambda_min)-contraction, so the result is within tol / lambda_min
/// of the unique fixed point. Starts from u unless `start` is given.
/// Throws PreconditionError when some lambda_i == 0.
FixedPointResult fixed_point(const InfluenceNetwork& net, const PrejudiceConfig& cfg,
                             double tol = 1e-12,
                             std::optional<std::span<const double>> start = std::nullopt,
                             std::size_t max_iterations = 10'000'000);

/// Row i of A holds 1 - lambda_i in column k[i] (0-based) and zeros elsewhere.
struct SelectionMatrix {
  std::vector<std::size_t> k;
  std::vector<double> lambda;
};

/// k_i = smallest j with x*_j == Med_i(x*; W) within 1e-9.
/// Throws ConsistencyError when x* violates x*_i = lambda_i u_i + (1-lambda_i) x*_{k_i} by more than 1e-9.
SelectionMatrix extract_selection(std::span<const double> xstar, const InfluenceNetwork& net,
                                  const PrejudiceConfig& cfg);

/// Solves (I - A) x = Lambda u by Gaussian elimination with partial pivoting.
/// Throws PreconditionError when some lambda_i == 0.
OpinionVector limit_from_selection(const SelectionMatrix& sel, const PrejudiceConfig& cfg);

/// Selection for the complete graph w_ij = 1/n with u sorted ascending:
/// odd n locks everyone onto the middle agent, even n splits between the two
/// middle agents by which half the agent sits in.
SelectionMatrix complete_graph_selection(std::size_t n, const PrejudiceConfig& cfg);

/// Dense solve of a square system, row-major `a` (n*n). Partial pivoting.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b);

/// Contraction-rate check: ||x(t) - x*|| <= (1 - lambda_min)^t ||x(0) - x*|| + 1e-9 at every recorded t.
bool verify_rate(const Trace& trace, std::span<const double> xstar, double lambda_min);

// Cohesive sets ------------------------------------------------------------

/// sum_{j in subset} w_ij.
double inside_mass(std::size_t i, std::span<const std::size_t> subset, const InfluenceNetwork& net);

/// Every member places at least 1/2 (minus 1e-12) of its weight inside the set.
/// Throws InputError for an empty subset or out-of-range index.
bool is_cohesive(std::span<const std::size_t> subset, const InfluenceNetwork& net);

struct CohesiveReport {
  /// Ascending, possibly empty.
  std::vector<std::size_t> maximal_subset;
  /// (agent, inside mass at the moment it was removed).
  std::vector<std::pair<std::size_t, double>> peel_order;
};

/// Peels agents whose inside mass is below 1/2 until none remain; what is
/// left is the unique largest cohesive subset of `candidates`. Each round
/// removes the qualifying agent with the smallest index.
CohesiveReport max_cohesive_subset(std::span<const std::size_t> candidates,
                                   const InfluenceNetwork& net);

/// Same fixpoint, but each round removes a uniformly random qualifying agent.
CohesiveReport max_cohesive_subset(std::span<const std::size_t> candidates,
                                   const InfluenceNetwork& net, std::mt19937_64& rng);

/// Partial-prejudice regime with a common prejudice: true iff the unprejudiced
/// agents contain no cohesive set, in which case every initial state reaches
/// consensus on u. Throws PreconditionError when prejudices differ or when
/// either side of the prejudiced/unprejudiced split is empty.
bool consensus_predicate(const InfluenceNetwork& net, const PrejudiceConfig& cfg);

// Clusters -----------------------------------------------------------------

/// Number of groups after sorting `values` and splitting wherever consecutive
/// values differ by more than `gap`.
std::size_t count_clusters(std::span<const double> values, double gap = 1e-6);

}  // namespace wmop
