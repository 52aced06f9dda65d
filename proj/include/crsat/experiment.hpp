#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crsat/engine.hpp"
#include "crsat/harness.hpp"

namespace crsat {

// Generated instance suite: `count` instances with `inputs` inputs and an
// And-gate count drawn uniformly from [ands_min, ands_max].
struct SuiteSpec {
    std::size_t count = 0;
    std::size_t inputs = 16;
    std::size_t ands_min = 300;
    std::size_t ands_max = 800;
    std::uint64_t seed = 1;
};

struct ExperimentConfig {
    std::vector<std::filesystem::path> instance_files;
    SuiteSpec suite;
    std::vector<Heuristic> heuristics;
    std::vector<double> noises = default_noise_candidates();
    std::size_t tries = 25;
    RunBudget budget;
    std::uint64_t master_seed = 1;
    std::filesystem::path output_dir = "results";
    unsigned jobs = 0;  // 0: one per hardware thread
    std::vector<std::pair<Heuristic, Heuristic>> scatter_pairs;
    std::optional<Heuristic> trivial_reference;
    double trivial_threshold = kDefaultTrivialThreshold;
    MetricOptions metrics;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// `key = value` lines; '#' starts a comment. Relative instance paths and the
// output directory are resolved against `base_dir`. Keys:
//   instances, suite, suite_inputs, suite_ands (min-max), suite_seed,
//   heuristics, noises, tries, timeout, cutoff (0 = none), seed, output, jobs,
//   clock (cpu|work), work_unit, scatter (a:b, ...), trivial_reference,
//   trivial_threshold, alevel (self|level), flow (fanin|fanout)
ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir = ".");
ExperimentConfig read_experiment_config(const std::filesystem::path& path);

struct ExperimentResult {
    std::vector<TryRecord> records;
    std::vector<InstanceSummary> summaries;  // instance-major, heuristics in config order
    HeuristicSummaries by_heuristic;         // the instances used for cactus/scatter
    std::vector<std::string> trivial_instances;
};

std::vector<Instance> load_instances(const ExperimentConfig& config);

// Runs every (instance, heuristic, noise, try) job, tunes noise per instance
// and heuristic, and writes tries.csv, summaries.csv, cactus.csv,
// scatter.csv, report.csv (and trivial.csv when a trivial reference is set)
// to the output directory. Generated suite instances are saved under
// instances/ there.
ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream* log = nullptr);

// heuristic,instances,solved,median_steps,step_ratio_vs_<first heuristic>
// where the ratio is the geometric mean over instances of censored median
// steps relative to the first heuristic.
std::string emit_report_csv(const HeuristicSummaries& summaries);

}  // namespace crsat
