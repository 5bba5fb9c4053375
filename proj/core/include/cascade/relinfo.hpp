#pragma once

#include <stdexcept>
#include <string>

#include "cascade/infotheory.hpp"
#include "cascade/matrix.hpp"

namespace cascade {

/// Pay-off table U(action, world state). Entries must be finite.
class UtilityMatrix {
 public:
  explicit UtilityMatrix(Matrix values);

  std::size_t actions() const { return values_.rows(); }
  std::size_t states() const { return values_.cols(); }
  double operator()(std::size_t a, std::size_t r) const { return values_(a, r); }
  const Matrix& values() const { return values_; }

 private:
  Matrix values_;
};

/// Conditional action policy p(action | world state). Each column (fixed
/// state) is a probability distribution over actions.
class Strategy {
 public:
  explicit Strategy(Matrix cond);

  static Strategy uniform(std::size_t actions, std::size_t states);

  std::size_t actions() const { return cond_.rows(); }
  std::size_t states() const { return cond_.cols(); }
  double operator()(std::size_t a, std::size_t r) const { return cond_(a, r); }
  const Matrix& cond() const { return cond_; }

 private:
  Matrix cond_;
};

/// One point on the utility/information trade-off: the achieved expected
/// pay-off, the bits the strategy processes, and the strategy itself.
struct TradeoffPoint {
  double utility;
  double information;
  Strategy strategy;
};

/// Thrown when the alternating minimization fails to settle within the
/// iteration cap; carries the last iterate for inspection.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, TradeoffPoint last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const TradeoffPoint& last_iterate() const { return last_; }

 private:
  TradeoffPoint last_;
};

/// Expected pay-off sum_a sum_r U(a,r) p(a|r) p(r).
double strategy_performance(const Strategy& s, const UtilityMatrix& u, const Distribution& prior);

/// Bits of state information the strategy's actions carry: the mutual
/// information of the joint p(a,r) = p(a|r) p(r).
double strategy_information(const Strategy& s, const Distribution& prior);

/// Joint distribution induced by a strategy and a state prior.
JointDistribution strategy_joint(const Strategy& s, const Distribution& prior);

/// Closed-form minimum information (bits) needed to reach performance u in
/// the n-location treasure task: 0 for u <= 1/n, otherwise
/// log2 n + u log2 u + (1-u) log2((1-u)/(n-1)).
double ri_closed_form(double performance, std::size_t n_locations);

/// n x n indicator pay-off: 1 exactly when the action hits the treasure.
UtilityMatrix utility_treasure_matrix(std::size_t n_locations);

/// Minimal-information strategy meeting a performance floor, found by
/// tracing the trade-off curve with an inverse-temperature sweep of the
/// alternating updates p(a|r) ∝ q(a) exp(beta U(a,r)),
/// q(a) = sum_r p(r) p(a|r), then picking the smallest feasible beta.
TradeoffPoint ri_minimize(const UtilityMatrix& u, const Distribution& prior,
                          double performance_floor, double tol);

}  // namespace cascade
