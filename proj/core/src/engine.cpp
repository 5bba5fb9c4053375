#include "cascade/engine.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace cascade {

namespace {

// seed_seq keeps only the low 32 bits of each value, so wide seeds and run
// indices are split into words before mixing.
std::mt19937_64 make_run_rng(std::uint64_t seed, std::uint64_t run_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xFFFFFFFFULL),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run_index & 0xFFFFFFFFULL),
                    static_cast<std::uint32_t>(run_index >> 32)};
  return std::mt19937_64(seq);
}

void check_unit_interval(double value, const char* name) {
  if (!(value >= 0.0) || value > 1.0) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  if (n_locations < 2) {
    throw std::invalid_argument("scenario needs at least two locations");
  }
  if (n_turns == 0) {
    throw std::invalid_argument("scenario needs at least one turn");
  }
  if (agents.empty()) {
    throw std::invalid_argument("scenario needs at least one agent");
  }
  check_unit_interval(p_change, "p_change");
  bool any_social = false;
  for (const AgentConfig& a : agents) {
    check_unit_interval(a.observation_prob, "observation probability");
    any_social = any_social || a.social;
  }
  if (any_social) {
    if (!likelihood.has_value()) {
      throw std::invalid_argument("social agents need a likelihood matrix");
    }
    if (likelihood->size() != n_locations) {
      throw std::invalid_argument("likelihood size does not match the location count");
    }
  }
}

void RunRecord::merge(const RunRecord& other) {
  if (n_locations == 0 && per_agent.empty()) {
    *this = other;
    return;
  }
  if (other.n_locations != n_locations || other.per_agent.size() != per_agent.size()) {
    throw std::invalid_argument("cannot merge records of different shapes");
  }
  n_turns += other.n_turns;
  relocation_events += other.relocation_events;
  for (std::size_t i = 0; i < per_agent.size(); ++i) {
    per_agent[i].merge(other.per_agent[i]);
  }
}

LikelihoodMatrix calibrate_likelihood(std::size_t n_locations, std::size_t samples,
                                      std::uint64_t seed) {
  if (n_locations < 2) {
    throw std::invalid_argument("calibration needs at least two locations");
  }
  if (samples < 10000) {
    throw std::invalid_argument("calibration needs at least 10000 samples");
  }
  std::mt19937_64 rng = make_run_rng(seed, 0);
  World world(n_locations, 0.0, std::size_t{0});
  Belief belief = Belief::uniform(n_locations);
  std::uint64_t hits = 0;
  for (std::size_t t = 0; t < samples; ++t) {
    const std::size_t action = belief.select_action(rng);
    const bool found = world.inspect(action);
    hits += found ? 1 : 0;
    belief.observe_location_result(action, found);
  }
  const double diag = static_cast<double>(hits) / static_cast<double>(samples);
  return LikelihoodMatrix::symmetric(n_locations, diag);
}

void run_turn(World& world, std::vector<Agent>& agents,
              const std::optional<LikelihoodMatrix>& likelihood, std::mt19937_64& rng,
              RunRecord& record) {
  const std::size_t m = agents.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t action = agents[i].belief.select_action(rng);
    const bool found = world.inspect(action);
    record.per_agent[i].add(action, world.treasure());
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i || !agents[j].config.social) continue;
      const double p = agents[j].config.observation_prob;
      if (p <= 0.0) continue;
      if (p < 1.0 && !std::bernoulli_distribution(p)(rng)) continue;
      agents[j].belief.social_update(action, *likelihood);
    }
    agents[i].belief.observe_location_result(action, found);
    if (agents[i].config.uncertainty_model) {
      agents[i].belief.apply_uncertainty(world.p_change());
    }
  }
  if (world.step_relocation(rng)) {
    ++record.relocation_events;
  }
  ++record.n_turns;
}

RunRecord run_simulation(const ScenarioConfig& scenario, std::uint64_t seed,
                         std::uint64_t run_index) {
  scenario.validate();
  std::mt19937_64 rng = make_run_rng(seed, run_index);
  World world(scenario.n_locations, scenario.p_change, rng);

  std::vector<Agent> agents;
  agents.reserve(scenario.agents.size());
  for (const AgentConfig& cfg : scenario.agents) {
    agents.push_back(Agent{cfg, Belief::uniform(scenario.n_locations)});
  }

  RunRecord record;
  record.n_locations = scenario.n_locations;
  record.per_agent.assign(agents.size(), JointCounts(scenario.n_locations, scenario.n_locations));

  for (std::size_t t = 0; t < scenario.n_turns; ++t) {
    run_turn(world, agents, scenario.likelihood, rng, record);
  }
  return record;
}

RunRecord run_batch(const ScenarioConfig& scenario, std::uint64_t seed, std::uint64_t n_runs,
                    unsigned threads) {
  scenario.validate();
  if (n_runs == 0) {
    throw std::invalid_argument("need at least one run");
  }
  if (threads == 0) {
    threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
  }
  if (threads > n_runs) {
    threads = static_cast<unsigned>(n_runs);
  }

  std::vector<RunRecord> results(n_runs);
  if (threads == 1) {
    for (std::uint64_t i = 0; i < n_runs; ++i) {
      results[i] = run_simulation(scenario, seed, i);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&]() {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= n_runs) return;
        try {
          results[i] = run_simulation(scenario, seed, i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  RunRecord total;
  for (std::uint64_t i = 0; i < n_runs; ++i) {
    total.merge(results[i]);
  }
  return total;
}

}  // namespace cascade
