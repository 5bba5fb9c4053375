#include "cascade/infotheory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cascade {

namespace {

void check_probability_entries(const std::vector<double>& probs, const char* what) {
  if (probs.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) {  // also rejects NaN
      throw std::invalid_argument(std::string(what) + ": negative or non-finite entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTolerance) {
    throw std::invalid_argument(std::string(what) + ": entries sum to " + std::to_string(sum) +
                                ", expected 1");
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  check_probability_entries(probs_, "Distribution");
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Distribution::uniform: n must be positive");
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

JointDistribution::JointDistribution(Matrix probs) : probs_(std::move(probs)) {
  check_probability_entries(probs_.data(), "JointDistribution");
}

Distribution JointDistribution::row_marginal() const {
  std::vector<double> m(rows(), 0.0);
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c) m[r] += probs_(r, c);
  return Distribution(std::move(m));
}

Distribution JointDistribution::column_marginal() const {
  std::vector<double> m(cols(), 0.0);
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c) m[c] += probs_(r, c);
  return Distribution(std::move(m));
}

JointCounts::JointCounts(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), counts_(rows * cols, 0) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("JointCounts: dimensions must be positive");
  }
}

void JointCounts::add(std::size_t r, std::size_t c, std::uint64_t k) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("JointCounts::add: index out of range");
  counts_[r * cols_ + c] += k;
  total_ += k;
}

void JointCounts::merge(const JointCounts& other) {
  if (rows_ == 0) {
    *this = other;
    return;
  }
  if (other.rows_ != rows_ || other.cols_ != cols_) {
    throw std::invalid_argument("JointCounts::merge: dimension mismatch");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
}

double entropy(const Distribution& d) {
  double h = 0.0;
  for (double p : d.probs()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double conditional_entropy(const JointDistribution& j) {
  // H(row | col) = -sum_c p(c) sum_r p(r|c) log2 p(r|c), accumulated as
  // -sum_{r,c} p(r,c) log2(p(r,c) / p(c)).
  const Matrix& p = j.probs();
  double h = 0.0;
  for (std::size_t c = 0; c < p.cols(); ++c) {
    double pc = 0.0;
    for (std::size_t r = 0; r < p.rows(); ++r) pc += p(r, c);
    if (pc <= 0.0) continue;
    for (std::size_t r = 0; r < p.rows(); ++r) {
      const double prc = p(r, c);
      if (prc > 0.0) h -= prc * std::log2(prc / pc);
    }
  }
  return h;
}

double mutual_information(const JointDistribution& j) {
  // KL form, kept independent of the entropy/conditional-entropy route so
  // the chain identity H(row) - H(row|col) = I(row;col) is a real check.
  const Matrix& p = j.probs();
  const Distribution pr = j.row_marginal();
  const Distribution pc = j.column_marginal();
  double mi = 0.0;
  for (std::size_t r = 0; r < p.rows(); ++r) {
    for (std::size_t c = 0; c < p.cols(); ++c) {
      const double prc = p(r, c);
      if (prc > 0.0) mi += prc * std::log2(prc / (pr[r] * pc[c]));
    }
  }
  return mi < 0.0 ? 0.0 : mi;
}

JointDistribution joint_from_counts(const JointCounts& c) {
  if (c.total() == 0) {
    throw std::invalid_argument("joint_from_counts: empty count table");
  }
  Matrix probs(c.rows(), c.cols());
  const double total = static_cast<double>(c.total());
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t col = 0; col < c.cols(); ++col)
      probs(r, col) = static_cast<double>(c.at(r, col)) / total;
  return JointDistribution(std::move(probs));
}

double location_observation_information(std::size_t n_locations) {
  if (n_locations < 2) {
    throw std::invalid_argument("location_observation_information: need at least 2 locations");
  }
  const double n = static_cast<double>(n_locations);
  return std::log2(n) - (1.0 - 1.0 / n) * std::log2(n - 1.0);
}

}  // namespace cascade
