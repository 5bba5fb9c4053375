#include "cascade/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cascade/metrics.hpp"
#include "cascade/relinfo.hpp"

namespace cascade::cli {

namespace {

constexpr const char* kPresetList =
    "single, single-social, all-social, single-changing, single-uncertain, "
    "all-uncertain-social, partial";

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
    const std::uint64_t parsed = std::stoull(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': '" + value +
                                "' is not a valid non-negative integer");
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    const double parsed = std::stod(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': '" + value + "' is not a number");
  }
}

void check_range(bool ok, const std::string& key, const char* requirement) {
  if (!ok) {
    throw std::invalid_argument("key '" + key + "': " + requirement);
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path);
  }
  return out;
}

}  // namespace

Options make_preset(const std::string& name) {
  Options o;
  o.preset = name;
  if (name == "single") {
    o.agents = 1;
  } else if (name == "single-social") {
    o.agents = 10;
    o.focal_social = true;
    o.focal_obs_prob = 100.0;
  } else if (name == "all-social") {
    o.agents = 10;
    o.focal_social = true;
    o.others_social = true;
    o.obs_prob = 100.0;
    o.focal_obs_prob = 100.0;
  } else if (name == "single-changing") {
    o.agents = 1;
    o.p_change = 0.01;
  } else if (name == "single-uncertain") {
    o.agents = 1;
    o.p_change = 0.01;
    o.uncertainty_model = true;
  } else if (name == "all-uncertain-social") {
    o.agents = 10;
    o.p_change = 0.01;
    o.focal_social = true;
    o.others_social = true;
    o.obs_prob = 100.0;
    o.focal_obs_prob = 100.0;
    o.uncertainty_model = true;
  } else if (name == "partial") {
    o.agents = 10;
    o.p_change = 0.01;
    o.focal_social = true;
    o.others_social = true;
    o.obs_prob = 30.0;
    o.focal_obs_prob = 30.0;
    o.uncertainty_model = true;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'; available presets: " +
                                kPresetList);
  }
  return o;
}

Overrides parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config file: " + path);
  }
  Overrides o;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "preset") {
      o.preset = value;
    } else if (key == "locations") {
      o.locations = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "agents") {
      o.agents = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "turns") {
      o.turns = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "runs") {
      o.runs = parse_u64(key, value);
    } else if (key == "seed") {
      o.seed = parse_u64(key, value);
    } else if (key == "p-change") {
      o.p_change = parse_real(key, value);
    } else if (key == "obs-prob") {
      o.obs_prob = parse_real(key, value);
    } else if (key == "focal-obs-prob") {
      o.focal_obs_prob = parse_real(key, value);
    } else if (key == "samples") {
      o.samples = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "likelihood") {
      o.likelihood_file = value;
    } else if (key == "out") {
      o.out_file = value;
    } else {
      throw std::invalid_argument("unknown config key '" + key + "' in " + path);
    }
  }
  return o;
}

void apply_overrides(const Overrides& o, Options& opts) {
  if (o.locations) {
    check_range(*o.locations >= 2, "locations", "needs at least 2");
    opts.locations = *o.locations;
  }
  if (o.agents) {
    check_range(*o.agents >= 1, "agents", "needs at least 1");
    opts.agents = *o.agents;
  }
  if (o.turns) {
    check_range(*o.turns >= 1, "turns", "needs at least 1");
    opts.turns = *o.turns;
  }
  if (o.runs) {
    check_range(*o.runs >= 1, "runs", "needs at least 1");
    opts.runs = *o.runs;
  }
  if (o.seed) {
    opts.seed = *o.seed;
  }
  if (o.p_change) {
    check_range(*o.p_change >= 0.0 && *o.p_change <= 1.0, "p-change", "must lie in [0, 1]");
    opts.p_change = *o.p_change;
  }
  if (o.obs_prob) {
    check_range(*o.obs_prob >= 0.0 && *o.obs_prob <= 100.0, "obs-prob",
                "must lie in [0, 100] percent");
    opts.obs_prob = *o.obs_prob;
    opts.focal_obs_prob = *o.obs_prob;
  }
  if (o.focal_obs_prob) {
    check_range(*o.focal_obs_prob >= 0.0 && *o.focal_obs_prob <= 100.0, "focal-obs-prob",
                "must lie in [0, 100] percent");
    opts.focal_obs_prob = *o.focal_obs_prob;
  }
  if (o.samples) {
    check_range(*o.samples >= 10000, "samples", "needs at least 10000 calibration samples");
    opts.samples = *o.samples;
  }
  if (o.likelihood_file) {
    opts.likelihood_file = *o.likelihood_file;
  }
  if (o.out_file) {
    opts.out_file = *o.out_file;
  }
}

ScenarioConfig build_scenario(const Options& opts) {
  ScenarioConfig scenario;
  scenario.n_locations = opts.locations;
  scenario.n_turns = opts.turns;
  scenario.p_change = opts.p_change;
  scenario.agents.reserve(opts.agents);
  for (std::size_t i = 0; i < opts.agents; ++i) {
    const bool focal = (i == 0);
    AgentConfig agent;
    agent.social = focal ? opts.focal_social : opts.others_social;
    agent.uncertainty_model = opts.uncertainty_model;
    agent.observation_prob = (focal ? opts.focal_obs_prob : opts.obs_prob) / 100.0;
    scenario.agents.push_back(agent);
  }
  return scenario;
}

void write_likelihood_csv(const std::string& path, const LikelihoodMatrix& matrix) {
  std::ofstream out = open_output(path);
  const std::size_t n = matrix.size();
  for (std::size_t t = 0; t < n; ++t) {
    out << (t == 0 ? "" : ",") << 't' << t;
  }
  out << '\n';
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t t = 0; t < n; ++t) {
      out << (t == 0 ? "" : ",") << format_number(matrix(a, t));
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed while writing file: " + path);
  }
}

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read file: " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument(path + ": empty file, expected a header row");
  }
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      row.push_back(parse_real(path + ":" + std::to_string(lineno), trim(cell)));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": inconsistent column count");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw std::invalid_argument(path + ": no data rows");
  }
  Matrix m(rows.size(), rows.front().size(), 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

LikelihoodMatrix read_likelihood_csv(const std::string& path) {
  return LikelihoodMatrix(read_matrix_csv(path));
}

namespace {

bool scenario_is_social(const ScenarioConfig& scenario) {
  for (const AgentConfig& a : scenario.agents) {
    if (a.social) return true;
  }
  return false;
}

LikelihoodMatrix obtain_likelihood(const Options& opts) {
  if (!opts.likelihood_file.empty()) {
    return read_likelihood_csv(opts.likelihood_file);
  }
  return calibrate_likelihood(opts.locations, opts.samples, opts.seed);
}

// Independent but reproducible seed for grid point `index` of a sweep.
std::uint64_t sweep_point_seed(std::uint64_t base, std::size_t index) {
  return base ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1));
}

void write_run_rows(std::ostream& out, const Options& opts, const RunRecord& record) {
  out << "scenario,selector,n_locations,n_agents,p_change,obs_prob,focal_obs_prob,"
         "runs,turns,seed,performance,mi_bits\n";
  const auto row = [&](const char* name, const AgentSelector& selector) {
    const MeasuredPoint point = tradeoff_point(record, selector);
    out << opts.preset << ',' << name << ',' << opts.locations << ',' << opts.agents << ','
        << format_number(opts.p_change) << ',' << format_number(opts.obs_prob) << ','
        << format_number(opts.focal_obs_prob) << ',' << opts.runs << ',' << opts.turns << ','
        << opts.seed << ',' << format_number(point.performance) << ','
        << format_number(point.information) << '\n';
  };
  row("population", AgentSelector::population());
  if (record.n_agents() > 1) {
    row("focal", AgentSelector::focal(0));
    row("others", AgentSelector::all_except(0));
  }
}

void cmd_calibrate(const Options& opts) {
  const LikelihoodMatrix matrix = calibrate_likelihood(opts.locations, opts.samples, opts.seed);
  write_likelihood_csv(opts.out_file, matrix);
}

void cmd_run(const Options& opts) {
  ScenarioConfig scenario = build_scenario(opts);
  if (scenario_is_social(scenario)) {
    scenario.likelihood = obtain_likelihood(opts);
  }
  const RunRecord record = run_batch(scenario, opts.seed, opts.runs);
  if (opts.out_file.empty()) {
    write_run_rows(std::cout, opts, record);
  } else {
    std::ofstream out = open_output(opts.out_file);
    write_run_rows(out, opts, record);
  }
}

void cmd_sweep(const Options& base, const std::string& param, double start, double stop,
               double step) {
  if (param != "population" && param != "focal") {
    throw std::invalid_argument("sweep parameter must be 'population' or 'focal'");
  }
  if (!(step > 0.0) || !(start >= 0.0) || !(start <= stop) || !(stop <= 100.0)) {
    throw std::invalid_argument("malformed grid: need 0 <= start <= stop <= 100 and step > 0");
  }
  const bool population = (param == "population");

  std::optional<LikelihoodMatrix> likelihood;
  {
    const ScenarioConfig probe = build_scenario(base);
    if (scenario_is_social(probe)) {
      likelihood = obtain_likelihood(base);
    }
  }

  std::ostringstream out;
  out << "param,obs_prob_percent,performance,mi_bits\n";
  const std::size_t points =
      static_cast<std::size_t>((stop - start) / step + 1e-9) + 1;
  for (std::size_t k = 0; k < points; ++k) {
    const double percent = start + static_cast<double>(k) * step;
    Options point = base;
    if (population) {
      point.obs_prob = percent;
      point.focal_obs_prob = percent;
    } else {
      point.focal_obs_prob = percent;
    }
    ScenarioConfig scenario = build_scenario(point);
    scenario.likelihood = likelihood;
    const RunRecord record = run_batch(scenario, sweep_point_seed(base.seed, k), base.runs);
    const AgentSelector selector =
        population ? AgentSelector::population() : AgentSelector::focal(0);
    const MeasuredPoint measured = tradeoff_point(record, selector);
    out << param << ',' << format_number(percent) << ',' << format_number(measured.performance)
        << ',' << format_number(measured.information) << '\n';
  }

  if (base.out_file.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file = open_output(base.out_file);
    file << out.str();
    if (!file) {
      throw std::runtime_error("failed while writing file: " + base.out_file);
    }
  }
}

void cmd_ri_curve(std::size_t locations, double start, double stop, double step, bool solver,
                  const std::string& utility_file, double tol, const std::string& out_file) {
  if (!(step > 0.0) || !(start <= stop)) {
    throw std::invalid_argument("malformed grid: need start <= stop and step > 0");
  }
  std::ostringstream out;
  out << "u,ri_bits\n";
  const std::size_t points = static_cast<std::size_t>((stop - start) / step + 1e-9) + 1;
  if (solver) {
    UtilityMatrix utility = utility_file.empty()
                                ? utility_treasure_matrix(locations)
                                : UtilityMatrix(read_matrix_csv(utility_file));
    const Distribution prior = Distribution::uniform(utility.states());
    for (std::size_t k = 0; k < points; ++k) {
      const double u = start + static_cast<double>(k) * step;
      const TradeoffPoint point = ri_minimize(utility, prior, u, tol);
      out << format_number(u) << ',' << format_number(point.information) << '\n';
    }
  } else {
    for (std::size_t k = 0; k < points; ++k) {
      const double u = start + static_cast<double>(k) * step;
      out << format_number(u) << ',' << format_number(ri_closed_form(u, locations)) << '\n';
    }
  }
  if (out_file.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file = open_output(out_file);
    file << out.str();
    if (!file) {
      throw std::runtime_error("failed while writing file: " + out_file);
    }
  }
}

void add_common_options(CLI::App* cmd, Overrides& o, std::string& config_path) {
  cmd->add_option("--config", config_path, "flat key=value config file");
  cmd->add_option("--locations", o.locations, "number of treasure locations");
  cmd->add_option("--agents", o.agents, "number of agents");
  cmd->add_option("--turns", o.turns, "turns per run");
  cmd->add_option("--runs", o.runs, "independent runs to merge");
  cmd->add_option("--seed", o.seed, "master random seed");
  cmd->add_option("--p-change", o.p_change, "per-turn treasure relocation probability");
  cmd->add_option("--obs-prob", o.obs_prob, "observation probability for every agent, percent");
  cmd->add_option("--focal-obs-prob", o.focal_obs_prob,
                  "observation probability for agent 0, percent");
  cmd->add_option("--samples", o.samples, "calibration sample count");
  cmd->add_option("--likelihood", o.likelihood_file,
                  "likelihood CSV to load instead of calibrating");
  cmd->add_option("--out", o.out_file, "output CSV path (stdout when omitted)");
}

Options resolve_options(const std::string& positional_preset, const std::string& default_preset,
                        const std::string& config_path, const Overrides& flags) {
  Overrides file;
  if (!config_path.empty()) {
    file = parse_config_file(config_path);
  }
  std::string preset = default_preset;
  if (file.preset) preset = *file.preset;
  if (!positional_preset.empty()) preset = positional_preset;
  Options opts = make_preset(preset);
  apply_overrides(file, opts);
  apply_overrides(flags, opts);
  return opts;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"treasure-hunt simulator: social Bayesian agents and the cost of copying"};
  app.require_subcommand(1);

  auto* calibrate = app.add_subcommand(
      "calibrate", "estimate the action likelihood matrix and write it as CSV");
  struct {
    std::size_t locations = 10;
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    std::string out;
  } cal;
  calibrate->add_option("--locations", cal.locations, "number of treasure locations")
      ->capture_default_str();
  calibrate->add_option("--samples", cal.samples, "actions to observe (min 10000)")
      ->capture_default_str();
  calibrate->add_option("--seed", cal.seed, "random seed")->capture_default_str();
  calibrate->add_option("--out", cal.out, "output CSV path")->required();

  auto* run = app.add_subcommand("run", "run one scenario and report performance and MI");
  std::string run_preset;
  std::string run_config;
  Overrides run_flags;
  run->add_option("preset", run_preset,
                  std::string("scenario preset: ") + kPresetList);
  add_common_options(run, run_flags, run_config);

  auto* sweep = app.add_subcommand(
      "sweep", "vary an observation probability over a grid and report each point");
  std::string sweep_preset;
  std::string sweep_config;
  std::string sweep_param = "population";
  double sweep_start = 0.0, sweep_stop = 100.0, sweep_step = 5.0;
  Overrides sweep_flags;
  sweep->add_option("preset", sweep_preset,
                    std::string("base scenario preset, default partial: ") + kPresetList);
  sweep->add_option("--param", sweep_param, "which probability to sweep: population or focal")
      ->capture_default_str();
  sweep->add_option("--start", sweep_start, "grid start, percent")->capture_default_str();
  sweep->add_option("--stop", sweep_stop, "grid stop, percent")->capture_default_str();
  sweep->add_option("--step", sweep_step, "grid step, percent")->capture_default_str();
  add_common_options(sweep, sweep_flags, sweep_config);

  auto* ri = app.add_subcommand(
      "ri-curve", "tabulate the minimum information needed for a target success rate");
  struct {
    std::size_t locations = 10;
    double start = 0.0, stop = 1.0, step = 0.001;
    bool solver = false;
    std::string utility;
    double tol = 1e-6;
    std::string out;
  } riv;
  ri->add_option("--locations", riv.locations, "number of treasure locations")
      ->capture_default_str();
  ri->add_option("--start", riv.start, "first target success rate")->capture_default_str();
  ri->add_option("--stop", riv.stop, "last target success rate")->capture_default_str();
  ri->add_option("--step", riv.step, "grid step")->capture_default_str();
  ri->add_flag("--solver", riv.solver,
               "use the alternating-minimization solver instead of the closed form");
  ri->add_option("--utility", riv.utility,
                 "utility matrix CSV for the solver (default: hit-the-treasure)");
  ri->add_option("--tol", riv.tol, "solver tolerance in utility/bits")->capture_default_str();
  ri->add_option("--out", riv.out, "output CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (calibrate->parsed()) {
      Options opts;
      opts.locations = cal.locations;
      opts.samples = cal.samples;
      opts.seed = cal.seed;
      opts.out_file = cal.out;
      check_range(opts.locations >= 2, "locations", "needs at least 2");
      cmd_calibrate(opts);
    } else if (run->parsed()) {
      cmd_run(resolve_options(run_preset, "single", run_config, run_flags));
    } else if (sweep->parsed()) {
      const Options opts = resolve_options(sweep_preset, "partial", sweep_config, sweep_flags);
      cmd_sweep(opts, sweep_param, sweep_start, sweep_stop, sweep_step);
    } else if (ri->parsed()) {
      check_range(riv.locations >= 2, "locations", "needs at least 2");
      cmd_ri_curve(riv.locations, riv.start, riv.stop, riv.step, riv.solver, riv.utility,
                   riv.tol, riv.out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace cascade::cli
