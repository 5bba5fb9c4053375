#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "cascade/matrix.hpp"

namespace cascade {

/// P(action | treasure location): one column per true location, one row per
/// inspected location. Entries are strictly positive so a Bayesian update
/// can never wipe out the true location; columns sum to 1.
class LikelihoodMatrix {
 public:
  explicit LikelihoodMatrix(Matrix values);

  /// Matrix with `diag` on the diagonal and the leftover probability spread
  /// evenly across the other locations of each column.
  static LikelihoodMatrix symmetric(std::size_t n_locations, double diag);

  std::size_t size() const { return values_.rows(); }
  double operator()(std::size_t action, std::size_t treasure) const {
    return values_(action, treasure);
  }
  const Matrix& values() const { return values_; }

 private:
  Matrix values_;
};

/// An agent's probability estimate of where the treasure is. The all-zero
/// state is reachable only when the agent's world model rules out every
/// location (a certainty agent in a world that actually moves the treasure);
/// it then searches at random until evidence re-seeds the estimate.
class Belief {
 public:
  static Belief uniform(std::size_t n_locations);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }
  bool is_degenerate() const { return degenerate_; }

  /// Pick the most probable location; ties within 1e-12 of the maximum are
  /// broken uniformly at random, which covers the fresh uniform state too.
  /// When every location has been ruled out, search uniformly at random.
  std::size_t select_action(std::mt19937_64& rng) const;

  /// Fold in the result of inspecting a location. Finding the treasure
  /// restarts the estimate at uniform; finding nothing removes that
  /// location's mass and rescales the rest.
  void observe_location_result(std::size_t location, bool found);

  /// Bayes step on another agent's observed inspection:
  /// b(t) <- L(action | t) b(t), renormalized. No-op once degenerate.
  void social_update(std::size_t observed_action, const LikelihoodMatrix& likelihood);

  /// Account for the chance the treasure moved since the last look:
  /// b(t) <- p_change / n + (1 - p_change) b(t). Preserves the ranking of
  /// entries for p_change < 1. Errors on a degenerate belief; agents that
  /// run this every turn keep all entries positive and never get there.
  void apply_uncertainty(double p_change);

 private:
  explicit Belief(std::size_t n_locations);

  std::vector<double> probs_;
  bool degenerate_ = false;
};

}  // namespace cascade
