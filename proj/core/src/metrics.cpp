#include "cascade/metrics.hpp"

#include <limits>
#include <stdexcept>

namespace cascade {

AgentSelector AgentSelector::population() { return AgentSelector(Kind::kPopulation, 0); }

AgentSelector AgentSelector::focal(std::size_t index) {
  return AgentSelector(Kind::kFocal, index);
}

AgentSelector AgentSelector::all_except(std::size_t index) {
  return AgentSelector(Kind::kAllExcept, index);
}

bool AgentSelector::includes(std::size_t agent_index) const {
  switch (kind_) {
    case Kind::kPopulation:
      return true;
    case Kind::kFocal:
      return agent_index == index_;
    case Kind::kAllExcept:
      return agent_index != index_;
  }
  return false;
}

JointCounts pooled_counts(const RunRecord& record, const AgentSelector& selector) {
  JointCounts pooled(record.n_locations, record.n_locations);
  bool matched = false;
  for (std::size_t i = 0; i < record.n_agents(); ++i) {
    if (!selector.includes(i)) continue;
    pooled.merge(record.per_agent[i]);
    matched = true;
  }
  if (!matched) {
    throw std::invalid_argument("selector matches no agent in the record");
  }
  return pooled;
}

namespace {

std::uint64_t diagonal_hits(const JointCounts& counts) {
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < counts.rows(); ++i) {
    hits += counts.at(i, i);
  }
  return hits;
}

}  // namespace

double performance_ratio(const RunRecord& record, const AgentSelector& selector) {
  const JointCounts pooled = pooled_counts(record, selector);
  if (pooled.total() == 0) {
    throw std::invalid_argument("record holds no inspections for the selected agents");
  }
  return static_cast<double>(diagonal_hits(pooled)) / static_cast<double>(pooled.total());
}

double mi_estimate(const RunRecord& record, const AgentSelector& selector) {
  return mutual_information(joint_from_counts(pooled_counts(record, selector)));
}

MeasuredPoint tradeoff_point(const RunRecord& record, const AgentSelector& selector) {
  const JointCounts pooled = pooled_counts(record, selector);
  if (pooled.total() == 0) {
    throw std::invalid_argument("record holds no inspections for the selected agents");
  }
  const double performance =
      static_cast<double>(diagonal_hits(pooled)) / static_cast<double>(pooled.total());
  const double information = mutual_information(joint_from_counts(pooled));
  return MeasuredPoint{performance, information};
}

double mean_turns_between_finds(const RunRecord& record, const AgentSelector& selector) {
  const JointCounts pooled = pooled_counts(record, selector);
  const std::uint64_t hits = diagonal_hits(pooled);
  if (hits == 0) {
    return std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(pooled.total()) / static_cast<double>(hits);
}

}  // namespace cascade
