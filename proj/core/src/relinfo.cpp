#include "cascade/relinfo.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace cascade {

namespace {

void check_same_shape(const Strategy& s, const UtilityMatrix& u, const Distribution& prior) {
  if (s.actions() != u.actions() || s.states() != u.states()) {
    throw std::invalid_argument("strategy and utility matrix shapes differ");
  }
  if (prior.size() != u.states()) {
    throw std::invalid_argument("prior size does not match the number of states");
  }
}

}  // namespace

UtilityMatrix::UtilityMatrix(Matrix values) : values_(std::move(values)) {
  for (std::size_t a = 0; a < values_.rows(); ++a) {
    for (std::size_t r = 0; r < values_.cols(); ++r) {
      if (!std::isfinite(values_(a, r))) {
        throw std::invalid_argument("utility entries must be finite");
      }
    }
  }
}

Strategy::Strategy(Matrix cond) : cond_(std::move(cond)) {
  for (std::size_t r = 0; r < cond_.cols(); ++r) {
    double sum = 0.0;
    for (std::size_t a = 0; a < cond_.rows(); ++a) {
      const double p = cond_(a, r);
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw std::invalid_argument("conditional probabilities must be finite and non-negative");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbSumTolerance) {
      throw std::invalid_argument("strategy column " + std::to_string(r) +
                                  " sums to " + std::to_string(sum) + ", expected 1");
    }
  }
}

Strategy Strategy::uniform(std::size_t actions, std::size_t states) {
  return Strategy(Matrix(actions, states, 1.0 / static_cast<double>(actions)));
}

double strategy_performance(const Strategy& s, const UtilityMatrix& u, const Distribution& prior) {
  check_same_shape(s, u, prior);
  double total = 0.0;
  for (std::size_t r = 0; r < s.states(); ++r) {
    double column = 0.0;
    for (std::size_t a = 0; a < s.actions(); ++a) {
      column += u(a, r) * s(a, r);
    }
    total += prior[r] * column;
  }
  return total;
}

JointDistribution strategy_joint(const Strategy& s, const Distribution& prior) {
  if (prior.size() != s.states()) {
    throw std::invalid_argument("prior size does not match the number of states");
  }
  Matrix joint(s.actions(), s.states(), 0.0);
  for (std::size_t a = 0; a < s.actions(); ++a) {
    for (std::size_t r = 0; r < s.states(); ++r) {
      joint(a, r) = s(a, r) * prior[r];
    }
  }
  return JointDistribution(std::move(joint));
}

double strategy_information(const Strategy& s, const Distribution& prior) {
  return mutual_information(strategy_joint(s, prior));
}

double ri_closed_form(double performance, std::size_t n_locations) {
  if (n_locations < 2) {
    throw std::invalid_argument("need at least two locations");
  }
  if (!(performance >= 0.0) || performance > 1.0) {
    throw std::invalid_argument("performance must lie in [0, 1]");
  }
  const double n = static_cast<double>(n_locations);
  if (performance <= 1.0 / n) {
    return 0.0;
  }
  const double u = performance;
  double bits = std::log2(n) + u * std::log2(u);
  if (u < 1.0) {
    bits += (1.0 - u) * std::log2((1.0 - u) / (n - 1.0));
  }
  return bits;
}

UtilityMatrix utility_treasure_matrix(std::size_t n_locations) {
  return UtilityMatrix(Matrix::identity(n_locations));
}

namespace {

// One inverse-temperature slice: alternate
//   p(a|r) ∝ q(a) exp(beta U(a,r))   (exponent shifted by the column max)
//   q(a)   = sum_r p(r) p(a|r)
// from a uniform q until the policy moves by less than `threshold` in max
// norm between iterations. Returns the conditional policy.
Matrix solve_at_beta(const UtilityMatrix& u, const Distribution& prior, double beta,
                     double threshold, std::size_t max_iterations, bool& converged) {
  const std::size_t actions = u.actions();
  const std::size_t states = u.states();
  std::vector<double> q(actions, 1.0 / static_cast<double>(actions));
  Matrix cond(actions, states, 0.0);
  Matrix prev(actions, states, 0.0);

  std::vector<double> col_max(states, -std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < states; ++r) {
    for (std::size_t a = 0; a < actions; ++a) {
      col_max[r] = std::max(col_max[r], u(a, r));
    }
  }

  converged = false;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (std::size_t r = 0; r < states; ++r) {
      double z = 0.0;
      for (std::size_t a = 0; a < actions; ++a) {
        const double w = q[a] * std::exp(beta * (u(a, r) - col_max[r]));
        cond(a, r) = w;
        z += w;
      }
      if (z > 0.0) {
        for (std::size_t a = 0; a < actions; ++a) {
          cond(a, r) /= z;
        }
      } else {
        // Every weight underflowed; fall back to the column's best actions.
        std::size_t ties = 0;
        for (std::size_t a = 0; a < actions; ++a) {
          if (u(a, r) == col_max[r]) ++ties;
        }
        for (std::size_t a = 0; a < actions; ++a) {
          cond(a, r) = (u(a, r) == col_max[r]) ? 1.0 / static_cast<double>(ties) : 0.0;
        }
      }
    }

    std::fill(q.begin(), q.end(), 0.0);
    double delta = 0.0;
    for (std::size_t r = 0; r < states; ++r) {
      for (std::size_t a = 0; a < actions; ++a) {
        q[a] += prior[r] * cond(a, r);
        delta = std::max(delta, std::abs(cond(a, r) - prev(a, r)));
      }
    }
    prev = cond;
    if (delta < threshold) {
      converged = true;
      break;
    }
  }
  return cond;
}

TradeoffPoint point_from_cond(Matrix cond, const UtilityMatrix& u, const Distribution& prior) {
  Strategy s(std::move(cond));
  const double perf = strategy_performance(s, u, prior);
  const double info = strategy_information(s, prior);
  return TradeoffPoint{perf, info, std::move(s)};
}

}  // namespace

TradeoffPoint ri_minimize(const UtilityMatrix& u, const Distribution& prior,
                          double performance_floor, double tol) {
  if (prior.size() != u.states()) {
    throw std::invalid_argument("prior size does not match the number of states");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw std::invalid_argument("tolerance must be positive and finite");
  }
  if (!std::isfinite(performance_floor)) {
    throw std::invalid_argument("performance floor must be finite");
  }

  const std::size_t actions = u.actions();
  const std::size_t states = u.states();

  // Best achievable pay-off with full state knowledge, and the best a fixed
  // (state-blind) action can do. Floors at or below the latter cost no bits.
  double max_u = 0.0;
  for (std::size_t r = 0; r < states; ++r) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < actions; ++a) {
      best = std::max(best, u(a, r));
    }
    max_u += prior[r] * best;
  }
  std::size_t blind_best = 0;
  double blind_value = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < actions; ++a) {
    double mean = 0.0;
    for (std::size_t r = 0; r < states; ++r) {
      mean += prior[r] * u(a, r);
    }
    if (mean > blind_value) {
      blind_value = mean;
      blind_best = a;
    }
  }

  if (performance_floor > max_u + 1e-12) {
    throw std::invalid_argument("performance floor " + std::to_string(performance_floor) +
                                " exceeds the maximum achievable " + std::to_string(max_u));
  }

  if (performance_floor <= blind_value) {
    Matrix cond(actions, states, 0.0);
    for (std::size_t r = 0; r < states; ++r) {
      cond(blind_best, r) = 1.0;
    }
    Strategy s(std::move(cond));
    const double perf = strategy_performance(s, u, prior);
    // A fixed state-independent action carries no state information at all;
    // report that exactly rather than through the estimator's rounding.
    return TradeoffPoint{perf, 0.0, std::move(s)};
  }

  // Aim slightly below the floor so a floor at the very top of the curve
  // stays reachable at finite inverse temperature.
  const double target = performance_floor - tol / 2.0;
  constexpr std::size_t kMaxInner = 10000;

  auto solve = [&](double beta) -> TradeoffPoint {
    bool converged = false;
    Matrix cond = solve_at_beta(u, prior, beta, tol, kMaxInner, converged);
    TradeoffPoint point = point_from_cond(std::move(cond), u, prior);
    if (!converged) {
      throw ConvergenceError("alternating updates did not settle within " +
                                 std::to_string(kMaxInner) + " iterations",
                             std::move(point));
    }
    return point;
  };

  double lo = 0.0;
  double hi = 1.0;
  TradeoffPoint at_hi = solve(hi);
  std::size_t doublings = 0;
  while (at_hi.utility < target) {
    hi *= 2.0;
    if (++doublings > 60) {
      throw ConvergenceError("could not bracket the requested performance floor",
                             std::move(at_hi));
    }
    at_hi = solve(hi);
  }

  for (std::size_t it = 0; it < 200; ++it) {
    if (std::abs(at_hi.utility - target) <= tol / 4.0 || hi - lo <= 1e-12 * hi) {
      break;
    }
    const double mid = 0.5 * (lo + hi);
    TradeoffPoint at_mid = solve(mid);
    if (at_mid.utility >= target) {
      hi = mid;
      at_hi = std::move(at_mid);
    } else {
      lo = mid;
    }
  }
  return at_hi;
}

}  // namespace cascade
