#include "cascade/belief.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cascade {

namespace {
constexpr double kColumnSumTolerance = 1e-6;
constexpr double kTieTolerance = 1e-12;
}  // namespace

LikelihoodMatrix::LikelihoodMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw std::invalid_argument("likelihood matrix must be square");
  }
  if (values_.rows() < 2) {
    throw std::invalid_argument("likelihood matrix needs at least two locations");
  }
  for (std::size_t t = 0; t < values_.cols(); ++t) {
    double sum = 0.0;
    for (std::size_t a = 0; a < values_.rows(); ++a) {
      const double p = values_(a, t);
      if (!(p > 0.0) || !std::isfinite(p)) {
        throw std::invalid_argument("likelihood entries must be finite and strictly positive");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kColumnSumTolerance) {
      throw std::invalid_argument("likelihood column " + std::to_string(t) + " sums to " +
                                  std::to_string(sum) + ", expected 1");
    }
  }
}

LikelihoodMatrix LikelihoodMatrix::symmetric(std::size_t n_locations, double diag) {
  if (n_locations < 2) {
    throw std::invalid_argument("likelihood matrix needs at least two locations");
  }
  if (!(diag > 0.0) || !(diag < 1.0)) {
    throw std::invalid_argument("diagonal probability must lie strictly between 0 and 1");
  }
  const double off = (1.0 - diag) / static_cast<double>(n_locations - 1);
  Matrix values(n_locations, n_locations, off);
  for (std::size_t i = 0; i < n_locations; ++i) {
    values(i, i) = diag;
  }
  return LikelihoodMatrix(std::move(values));
}

Belief::Belief(std::size_t n_locations)
    : probs_(n_locations, 1.0 / static_cast<double>(n_locations)) {}

Belief Belief::uniform(std::size_t n_locations) {
  if (n_locations < 2) {
    throw std::invalid_argument("belief needs at least two locations");
  }
  return Belief(n_locations);
}

std::size_t Belief::select_action(std::mt19937_64& rng) const {
  const std::size_t n = probs_.size();
  if (degenerate_) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }
  double best = probs_[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (probs_[i] > best) best = probs_[i];
  }
  std::size_t tie_count = 0;
  std::size_t first = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (probs_[i] >= best - kTieTolerance) {
      if (tie_count == 0) first = i;
      ++tie_count;
    }
  }
  if (tie_count == 1) {
    return first;
  }
  std::size_t pick = std::uniform_int_distribution<std::size_t>(0, tie_count - 1)(rng);
  for (std::size_t i = first; i < n; ++i) {
    if (probs_[i] >= best - kTieTolerance) {
      if (pick == 0) return i;
      --pick;
    }
  }
  return first;  // unreachable
}

void Belief::observe_location_result(std::size_t location, bool found) {
  const std::size_t n = probs_.size();
  if (location >= n) {
    throw std::out_of_range("location index out of range");
  }
  if (found) {
    const double uniform = 1.0 / static_cast<double>(n);
    for (double& p : probs_) p = uniform;
    degenerate_ = false;
    return;
  }
  probs_[location] = 0.0;
  double sum = 0.0;
  for (double p : probs_) sum += p;
  if (sum <= 0.0) {
    for (double& p : probs_) p = 0.0;
    degenerate_ = true;
    return;
  }
  for (double& p : probs_) p /= sum;
}

void Belief::social_update(std::size_t observed_action, const LikelihoodMatrix& likelihood) {
  const std::size_t n = probs_.size();
  if (likelihood.size() != n) {
    throw std::invalid_argument("likelihood size does not match belief size");
  }
  if (observed_action >= n) {
    throw std::out_of_range("observed action out of range");
  }
  if (degenerate_) {
    return;
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    probs_[t] *= likelihood(observed_action, t);
    sum += probs_[t];
  }
  for (double& p : probs_) p /= sum;
}

void Belief::apply_uncertainty(double p_change) {
  if (!(p_change >= 0.0) || p_change > 1.0) {
    throw std::invalid_argument("p_change must lie in [0, 1]");
  }
  if (degenerate_) {
    throw std::logic_error("cannot discount a degenerate belief: no mass left to mix");
  }
  if (p_change == 0.0) {
    return;
  }
  const std::size_t n = probs_.size();
  const double moved = p_change / static_cast<double>(n);
  double sum = 0.0;
  for (double& p : probs_) {
    p = moved + (1.0 - p_change) * p;
    sum += p;
  }
  for (double& p : probs_) p /= sum;
}

}  // namespace cascade
