#pragma once

#include "vndn/sim/simulation.hpp"
#include "vndn/stats/summary.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

namespace vndn::experiment {

namespace fs = std::filesystem;

/// One (deployment, scenario) cell of the instance grid.
struct Instance
{
  ndn::DeploymentMode mode;
  int scenario = 1;

  std::string
  label() const
  {
    return std::string(mode.label()) + "-" + std::to_string(scenario);
  }

  /// Position in the full grid Standard-1, Standard-2, Up-1, ..., Proposal-2.
  std::size_t
  index() const
  {
    auto all = ndn::DeploymentMode::all();
    auto it = std::find(all.begin(), all.end(), mode);
    return static_cast<std::size_t>(it - all.begin()) * 2 + static_cast<std::size_t>(scenario - 1);
  }
};

inline std::vector<Instance>
all_instances()
{
  std::vector<Instance> out;
  for (auto m : ndn::DeploymentMode::all())
    for (int sc : {1, 2})
      out.push_back({m, sc});
  return out;
}

/// Seed of run @p run of @p instance: disjoint blocks of 1000 per instance.
inline std::uint64_t
run_seed(std::uint64_t base, const Instance& instance, std::size_t run)
{
  return base + instance.index() * 1000 + run;
}

class RunFailure : public std::runtime_error
{
public:
  RunFailure(std::string instance, std::uint64_t seed, const std::string& why)
    : std::runtime_error("run " + instance + " seed " + std::to_string(seed) + " failed: " + why)
    , instance(std::move(instance))
    , seed(seed)
  {
  }

  std::string instance;
  std::uint64_t seed;
};

struct MatrixOptions
{
  std::vector<Instance> instances = all_instances();
  std::size_t seeds = 31;
  std::size_t jobs = 1;
};

struct MatrixResult
{
  std::vector<Instance> instances;
  std::vector<std::vector<stats::RunMetrics>> runs; ///< [instance][run]
  std::vector<stats::Summary> summaries;
  std::vector<stats::ComparisonResult> comparisons;

  const std::vector<stats::RunMetrics>&
  runs_of(const std::string& label) const
  {
    for (std::size_t i = 0; i < instances.size(); ++i)
      if (instances[i].label() == label)
        return runs[i];
    throw std::out_of_range("instance '" + label + "' not in matrix");
  }
};

/// Runs @p count jobs on up to @p jobs threads; the first exception is rethrown.
template<typename F>
void
parallel_for(std::size_t count, std::size_t jobs, F&& body)
{
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed) {
      std::size_t i = next++;
      if (i >= count)
        return;
      try {
        body(i);
      }
      catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        failed = true;
      }
    }
  };
  if (jobs == 1) {
    worker();
  }
  else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j)
      pool.emplace_back(worker);
  }
  if (error)
    std::rethrow_exception(error);
}

/// Pairwise comparisons of every instance pair on data received in vehicles.
inline std::vector<stats::ComparisonResult>
compare_all(const std::vector<Instance>& instances,
            const std::vector<std::vector<stats::RunMetrics>>& runs)
{
  std::vector<stats::ComparisonResult> out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t j = i + 1; j < instances.size(); ++j) {
      out.push_back(stats::compare_samples(instances[i].label(), instances[j].label(),
                                           "data_received", stats::data_received_sample(runs[i]),
                                           stats::data_received_sample(runs[j])));
    }
  }
  return out;
}

/**
 * Runs every (instance, run) pair of the grid. Results are placed by
 * index, so they do not depend on the number of threads or scheduling.
 */
inline MatrixResult
run_matrix(const sim::Scenario& base, const MatrixOptions& opt)
{
  base.validate();
  MatrixResult res;
  res.instances = opt.instances;
  res.runs.assign(opt.instances.size(), std::vector<stats::RunMetrics>(opt.seeds));

  parallel_for(opt.instances.size() * opt.seeds, opt.jobs, [&](std::size_t k) {
    const auto& inst = opt.instances[k / opt.seeds];
    std::size_t run = k % opt.seeds;
    sim::Scenario s = base;
    s.mode = inst.mode;
    s.apps.scenario = inst.scenario;
    s.seed = run_seed(base.seed, inst, run);
    try {
      res.runs[k / opt.seeds][run] = sim::run(s);
    }
    catch (const std::exception& e) {
      throw RunFailure(inst.label(), s.seed, e.what());
    }
  });

  for (const auto& r : res.runs)
    res.summaries.push_back(stats::summarize(r));
  res.comparisons = compare_all(res.instances, res.runs);
  return res;
}

inline fs::path
run_csv_path(const fs::path& dir, const std::string& instance, std::uint64_t seed)
{
  return dir / "runs" / instance / ("seed-" + std::to_string(seed) + ".csv");
}

inline void
write_text(const fs::path& path, const std::string& text)
{
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

inline void
write_summary_csv(const fs::path& path, const std::vector<stats::Summary>& summaries)
{
  std::ostringstream os;
  os << stats::SUMMARY_CSV_HEADER << '\n';
  for (const auto& s : summaries)
    stats::write_summary_row(os, s);
  write_text(path, os.str());
}

inline void
write_comparisons_csv(const fs::path& path, const std::vector<stats::ComparisonResult>& rows)
{
  std::ostringstream os;
  os << stats::COMPARISON_CSV_HEADER << '\n';
  for (const auto& c : rows)
    stats::write_comparison_row(os, c);
  write_text(path, os.str());
}

/// Writes per-run CSVs, summary.csv and comparisons.csv under @p dir.
inline void
write_matrix(const fs::path& dir, const MatrixResult& res)
{
  for (std::size_t i = 0; i < res.instances.size(); ++i) {
    for (const auto& r : res.runs[i]) {
      std::ostringstream os;
      stats::write_run_csv(os, r);
      write_text(run_csv_path(dir, r.instance, r.seed), os.str());
    }
  }
  write_summary_csv(dir / "summary.csv", res.summaries);
  write_comparisons_csv(dir / "comparisons.csv", res.comparisons);
}

/// Reads back every run CSV of @p instance, ordered by seed.
inline std::vector<stats::RunMetrics>
load_instance_runs(const fs::path& dir, const std::string& instance)
{
  fs::path sub = dir / "runs" / instance;
  if (!fs::is_directory(sub))
    throw std::runtime_error("instance '" + instance + "' not found in " + dir.string());
  std::vector<stats::RunMetrics> runs;
  for (const auto& entry : fs::directory_iterator(sub)) {
    if (entry.path().extension() == ".csv")
      runs.push_back(stats::read_run_csv(entry.path().string()));
  }
  if (runs.empty())
    throw std::runtime_error("instance '" + instance + "' has no runs in " + dir.string());
  std::sort(runs.begin(), runs.end(),
            [](const auto& a, const auto& b) { return a.seed < b.seed; });
  return runs;
}

} // namespace vndn::experiment
