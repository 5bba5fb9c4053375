#pragma once

#include <cstddef>

#include "cascade/engine.hpp"
#include "cascade/infotheory.hpp"

namespace cascade {

/// Which agents of a record to pool when computing statistics.
class AgentSelector {
 public:
  static AgentSelector population();
  static AgentSelector focal(std::size_t index);
  static AgentSelector all_except(std::size_t index);

  bool includes(std::size_t agent_index) const;

 private:
  enum class Kind { kPopulation, kFocal, kAllExcept };
  AgentSelector(Kind kind, std::size_t index) : kind_(kind), index_(index) {}

  Kind kind_;
  std::size_t index_;
};

/// Counts pooled over the selected agents; throws when nothing matches.
JointCounts pooled_counts(const RunRecord& record, const AgentSelector& selector);

/// Fraction of the selected agents' inspections that hit the treasure.
double performance_ratio(const RunRecord& record, const AgentSelector& selector);

/// Plug-in mutual information (bits) between the inspected location and the
/// true location, over the selected agents.
double mi_estimate(const RunRecord& record, const AgentSelector& selector);

/// Measured (performance, information) pair, for plotting a population
/// against the minimal-information trade-off curve.
struct MeasuredPoint {
  double performance;
  double information;
};

MeasuredPoint tradeoff_point(const RunRecord& record, const AgentSelector& selector);

/// Average inspections per find: total inspections / finds. Infinity when
/// the selected agents never found the treasure.
double mean_turns_between_finds(const RunRecord& record, const AgentSelector& selector);

}  // namespace cascade
