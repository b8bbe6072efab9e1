// Command-line front end: single runs, the instance x seed matrix, and
// pairwise comparisons over a results directory.

#include "vndn/experiment/matrix.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace vndn;
namespace fs = std::filesystem;
using nlohmann::json;

constexpr int EXIT_CONFIG = 2;
constexpr int EXIT_RUN = 3;
constexpr std::string_view VERSION = "0.1.0";

struct Common
{
  std::string config;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> deployments;
  std::vector<int> scenarios;
  std::string out;
};

std::string
default_out()
{
  const char* env = std::getenv("NDNSIM_RESULTS_DIR");
  return env && *env ? env : "results";
}

sim::Scenario
load_base(const Common& c)
{
  sim::Scenario s = c.config.empty() ? sim::Scenario{} : sim::load_scenario(c.config);
  if (c.seed)
    s.seed = *c.seed;
  return s;
}

std::vector<ndn::DeploymentMode>
parse_deployments(const std::vector<std::string>& tokens)
{
  std::vector<ndn::DeploymentMode> out;
  for (const auto& t : tokens) {
    auto m = ndn::DeploymentMode::parse(t);
    if (!m)
      throw ConfigError("--deployment: unknown value '" + t + "'");
    out.push_back(*m);
  }
  return out;
}

json
manifest_base(const sim::Scenario& s, const Common& c)
{
  json m;
  m["tool"] = "vndn";
  m["version"] = VERSION;
  m["compiler"] = __VERSION__;
  m["config_path"] = c.config;
  m["config_hash"] = sim::config_hash(s);
  m["config"] = sim::to_ini(s, false);
  m["base_seed"] = s.seed;
  m["seed_override"] = c.seed.has_value();
  return m;
}

int
cmd_run(const Common& c)
{
  sim::Scenario s = load_base(c);
  auto modes = parse_deployments(c.deployments);
  if (modes.size() > 1 || c.scenarios.size() > 1)
    throw ConfigError("run: give at most one --deployment and one --scenario");
  if (!modes.empty())
    s.mode = modes.front();
  if (!c.scenarios.empty())
    s.apps.scenario = c.scenarios.front();
  s.validate();

  stats::RunMetrics m;
  try {
    m = sim::run(s);
  }
  catch (const ConfigError&) {
    throw;
  }
  catch (const std::exception& e) {
    throw experiment::RunFailure(s.instance(), s.seed, e.what());
  }

  fs::path dir = fs::path(c.out) / sim::config_hash(s);
  std::string stem = s.instance() + "-seed-" + std::to_string(s.seed);
  std::ostringstream csv;
  stats::write_run_csv(csv, m);
  experiment::write_text(dir / (stem + ".csv"), csv.str());

  json man = manifest_base(s, c);
  man["command"] = "run";
  man["instance"] = s.instance();
  man["seed"] = s.seed;
  man["metrics"] = stem + ".csv";
  man["interests_sent"] = m.interests_sent();
  man["data_received"] = m.data_received();
  experiment::write_text(dir / (stem + ".json"), man.dump(2) + "\n");

  std::printf("%s seed=%llu interests=%llu data=%llu satisfaction=%.4f\n%s\n",
              s.instance().c_str(), static_cast<unsigned long long>(s.seed),
              static_cast<unsigned long long>(m.interests_sent()),
              static_cast<unsigned long long>(m.data_received()), m.satisfaction_ratio(),
              (dir / (stem + ".csv")).string().c_str());
  return 0;
}

int
cmd_matrix(const Common& c, std::size_t seeds, std::size_t jobs)
{
  sim::Scenario s = load_base(c);
  auto modes = parse_deployments(c.deployments);
  if (modes.empty())
    modes.assign(ndn::DeploymentMode::all().begin(), ndn::DeploymentMode::all().end());
  std::vector<int> scenarios = c.scenarios.empty() ? std::vector<int>{1, 2} : c.scenarios;
  if (seeds == 0)
    throw ConfigError("--seeds: must be >= 1");

  experiment::MatrixOptions opt;
  opt.instances.clear();
  for (auto m : modes)
    for (int sc : scenarios) {
      if (sc != 1 && sc != 2)
        throw ConfigError("--scenario: must be 1 or 2");
      opt.instances.push_back({m, sc});
    }
  opt.seeds = seeds;
  opt.jobs = jobs;

  auto res = experiment::run_matrix(s, opt);
  fs::path dir = fs::path(c.out) / sim::config_hash(s);
  experiment::write_matrix(dir, res);

  json man = manifest_base(s, c);
  man["command"] = "matrix";
  man["seeds_per_instance"] = seeds;
  man["seed_rule"] = "base_seed + instance_index * 1000 + run_index";
  json inst = json::array();
  for (const auto& i : res.instances) {
    json seeds_list = json::array();
    for (std::size_t r = 0; r < seeds; ++r)
      seeds_list.push_back(experiment::run_seed(s.seed, i, r));
    inst.push_back({{"instance", i.label()}, {"index", i.index()}, {"seeds", seeds_list}});
  }
  man["instances"] = inst;
  man["summary"] = "summary.csv";
  man["comparisons"] = "comparisons.csv";
  experiment::write_text(dir / "manifest.json", man.dump(2) + "\n");

  for (const auto& sm : res.summaries)
    std::printf("%-11s runs=%zu mean_satisfaction=%.4f data=%llu\n", sm.instance.c_str(), sm.runs,
                sm.mean_satisfaction, static_cast<unsigned long long>(sm.data_received));
  std::printf("%s\n", dir.string().c_str());
  return 0;
}

int
cmd_compare(const std::string& results, const std::string& a, const std::string& b)
{
  auto ra = experiment::load_instance_runs(results, a);
  auto rb = experiment::load_instance_runs(results, b);
  if (ra.size() != rb.size())
    throw std::runtime_error("instances " + a + " and " + b + " have different seed counts (" +
                             std::to_string(ra.size()) + " vs " + std::to_string(rb.size()) + ")");
  auto c = stats::compare_samples(a, b, "data_received", stats::data_received_sample(ra),
                                  stats::data_received_sample(rb));
  std::ostringstream row;
  stats::write_comparison_row(row, c);
  std::cout << stats::COMPARISON_CSV_HEADER << '\n' << row.str();

  fs::path log = fs::path(results) / "compare.csv";
  bool fresh = !fs::exists(log);
  std::ofstream out(log, std::ios::app | std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write '" + log.string() + "'");
  if (fresh)
    out << stats::COMPARISON_CSV_HEADER << '\n';
  out << row.str();
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Vehicular NDN over Wi-Fi simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(VERSION));

  Common common;
  common.out = default_out();
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "Scenario INI file")->check(CLI::ExistingFile);
    sub->add_option("--seed", common.seed, "Seed (run) or base seed (matrix)");
    sub->add_option("--deployment", common.deployments, "standard, up, down or proposal");
    sub->add_option("--scenario", common.scenarios, "Application scenario, 1 or 2");
    sub->add_option("--out", common.out, "Results directory (default $NDNSIM_RESULTS_DIR or ./results)");
  };

  auto* run = app.add_subcommand("run", "Execute one simulation run");
  add_common(run);

  std::size_t seeds = 31;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* matrix = app.add_subcommand("matrix", "Run every instance x seed and compare instances");
  add_common(matrix);
  matrix->add_option("--seeds", seeds, "Runs per instance");
  matrix->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  std::string results;
  std::string pair_a, pair_b;
  auto* compare = app.add_subcommand("compare", "Compare two instances of a results directory");
  compare->add_option("results", results, "Matrix results directory")->required();
  compare->add_option("a", pair_a, "First instance, e.g. Proposal-1")->required();
  compare->add_option("b", pair_b, "Second instance, e.g. Standard-1")->required();

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : EXIT_CONFIG;
  }

  try {
    if (*run)
      return cmd_run(common);
    if (*matrix)
      return cmd_matrix(common, seeds, jobs);
    return cmd_compare(results, pair_a, pair_b);
  }
  catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return EXIT_CONFIG;
  }
  catch (const mobility::TraceError& e) {
    std::cerr << "config error: trace: " << e.what() << '\n';
    return EXIT_CONFIG;
  }
  catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_RUN;
  }
}
