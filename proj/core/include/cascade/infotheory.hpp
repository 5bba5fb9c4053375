#pragma once

#include <cstdint>
#include <vector>

#include "cascade/matrix.hpp"

namespace cascade {

/// Tolerance used when validating that probabilities sum to one.
inline constexpr double kProbSumTolerance = 1e-9;

/// Probability distribution over a finite alphabet. Entries are
/// non-negative and sum to one within kProbSumTolerance.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  static Distribution uniform(std::size_t n);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

/// Joint distribution of two finite random variables, stored as a
/// (row symbol, column symbol) probability table.
class JointDistribution {
 public:
  explicit JointDistribution(Matrix probs);

  const Matrix& probs() const { return probs_; }
  std::size_t rows() const { return probs_.rows(); }
  std::size_t cols() const { return probs_.cols(); }

  Distribution row_marginal() const;
  Distribution column_marginal() const;
  JointDistribution transposed() const { return JointDistribution(probs_.transposed()); }

 private:
  Matrix probs_;
};

/// Integer co-occurrence counts of two finite variables, the empirical
/// basis for plug-in information estimates. Mergeable by summation.
class JointCounts {
 public:
  JointCounts() = default;
  JointCounts(std::size_t rows, std::size_t cols);

  void add(std::size_t r, std::size_t c, std::uint64_t k = 1);
  void merge(const JointCounts& other);

  std::uint64_t at(std::size_t r, std::size_t c) const { return counts_[r * cols_ + c]; }
  std::uint64_t total() const { return total_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool operator==(const JointCounts& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Shannon entropy in bits, with the 0 log 0 = 0 convention.
double entropy(const Distribution& d);

/// H(row | column) in bits. Columns with zero marginal contribute nothing.
double conditional_entropy(const JointDistribution& j);

/// I(row; column) in bits. Non-negative; tiny negative rounding
/// residues are clamped to zero.
double mutual_information(const JointDistribution& j);

/// Plug-in joint estimate: each probability is count / total.
JointDistribution joint_from_counts(const JointCounts& c);

/// Information (bits) a single empty/treasure inspection of one location
/// carries about a uniformly placed treasure among n locations:
/// log2 n - (1 - 1/n) log2(n - 1).
double location_observation_information(std::size_t n_locations);

}  // namespace cascade
