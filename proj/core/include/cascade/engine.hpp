#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cascade/belief.hpp"
#include "cascade/infotheory.hpp"
#include "cascade/world.hpp"

namespace cascade {

/// Per-agent behaviour switches. Observation is observer-side: a social
/// agent sees each other agent's action each turn with probability
/// observation_prob, and its own visibility is unaffected. Agents with the
/// uncertainty model discount their belief by the scenario's p_change every
/// turn; the rest treat the world as static.
struct AgentConfig {
  bool social = false;
  bool uncertainty_model = false;
  double observation_prob = 0.0;
};

/// Everything that defines one simulation setup. p_change drives both the
/// world's relocation chance and the discount used by uncertainty-model
/// agents. The likelihood matrix is only needed when some agent is social.
struct ScenarioConfig {
  std::size_t n_locations = 10;
  std::size_t n_turns = 1000;
  double p_change = 0.0;
  std::vector<AgentConfig> agents;
  std::optional<LikelihoodMatrix> likelihood;

  void validate() const;
};

/// Pooled outcome counts from one or more runs: per agent, how often each
/// (inspected location, true location) pair occurred, plus bookkeeping for
/// rates. merge() folds another record in; records from independent runs
/// merge to the same totals in any grouping because counts are integers.
struct RunRecord {
  std::size_t n_locations = 0;
  std::size_t n_turns = 0;
  std::vector<JointCounts> per_agent;
  std::uint64_t relocation_events = 0;

  std::size_t n_agents() const { return per_agent.size(); }
  void merge(const RunRecord& other);

  bool operator==(const RunRecord& other) const = default;
};

/// One live agent: its configuration plus its current belief.
struct Agent {
  AgentConfig config;
  Belief belief;
};

/// Measure how reliably a solitary certainty agent pinpoints a treasure
/// that never moves, then spread the miss probability evenly: the result
/// is the action likelihood P(inspected | true location) that social agents
/// use to read each other. samples is the number of turns pooled and must
/// be at least 10000.
LikelihoodMatrix calibrate_likelihood(std::size_t n_locations, std::size_t samples,
                                      std::uint64_t seed);

/// Advance one turn in place. Agents act in index order. For each actor:
/// the (action, treasure) pair is recorded, social agents fold the action
/// into their beliefs (observers never see the outcome, only the choice),
/// the actor learns its own inspection result, and an uncertainty-model
/// actor then discounts its belief by the world's p_change. After everyone
/// acted, the world rolls its relocation chance once.
void run_turn(World& world, std::vector<Agent>& agents,
              const std::optional<LikelihoodMatrix>& likelihood, std::mt19937_64& rng,
              RunRecord& record);

/// Run one full simulation. The random stream is derived from (seed,
/// run_index), so every run is reproducible in isolation.
RunRecord run_simulation(const ScenarioConfig& scenario, std::uint64_t seed,
                         std::uint64_t run_index);

/// Run n_runs independent simulations, possibly across threads, and merge
/// their records in run order. threads == 0 picks the hardware concurrency.
/// Results are identical for any thread count.
RunRecord run_batch(const ScenarioConfig& scenario, std::uint64_t seed, std::uint64_t n_runs,
                    unsigned threads = 0);

}  // namespace cascade
