#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cascade/belief.hpp"
#include "cascade/engine.hpp"

namespace cascade::cli {

/// Fully resolved settings for one invocation. Starts from a preset,
/// then config-file values, then command-line flags, each layer
/// overriding the one before. Observation probabilities are percentages,
/// matching the flags; agent 0 is the focal agent.
struct Options {
  std::string preset = "single";
  std::size_t locations = 10;
  std::size_t agents = 1;
  std::size_t turns = 1000;
  std::uint64_t runs = 1000;
  std::uint64_t seed = 0;
  double p_change = 0.0;
  double obs_prob = 0.0;
  double focal_obs_prob = 0.0;
  bool focal_social = false;
  bool others_social = false;
  bool uncertainty_model = false;
  std::size_t samples = 100000;
  std::string likelihood_file;
  std::string out_file;
};

/// Values supplied explicitly by a config file or by flags; unset fields
/// keep whatever the layer below chose. obs_prob moves every agent;
/// focal_obs_prob then pins agent 0 alone.
struct Overrides {
  std::optional<std::string> preset;
  std::optional<std::size_t> locations;
  std::optional<std::size_t> agents;
  std::optional<std::size_t> turns;
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> seed;
  std::optional<double> p_change;
  std::optional<double> obs_prob;
  std::optional<double> focal_obs_prob;
  std::optional<std::size_t> samples;
  std::optional<std::string> likelihood_file;
  std::optional<std::string> out_file;
};

/// Baseline settings for a named scenario. Throws on an unknown name,
/// listing the valid ones.
Options make_preset(const std::string& name);

/// Parse a flat key=value config file ('#' starts a comment) into
/// overrides. Unknown or malformed keys throw, naming the key.
Overrides parse_config_file(const std::string& path);

/// Layer explicit values onto options, range-checking each named key.
void apply_overrides(const Overrides& o, Options& opts);

/// Turn resolved options into an engine scenario (likelihood left empty).
ScenarioConfig build_scenario(const Options& opts);

/// Likelihood matrix persistence: header row t0..t{n-1}, one row per
/// inspected location, 9 significant digits, comma separated, LF endings.
void write_likelihood_csv(const std::string& path, const LikelihoodMatrix& matrix);
LikelihoodMatrix read_likelihood_csv(const std::string& path);

/// Utility matrices for the trade-off solver use the same layout with an
/// s0..s{k-1} header and no distribution constraints.
Matrix read_matrix_csv(const std::string& path);

/// Entry point used by the binary: parses argv, dispatches to one of the
/// calibrate / run / sweep / ri-curve subcommands, reports errors on
/// stderr. Returns the process exit code (0 on success).
int run_cli(int argc, const char* const* argv);

}  // namespace cascade::cli
