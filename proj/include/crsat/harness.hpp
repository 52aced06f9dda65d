#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crsat/circuit.hpp"
#include "crsat/engine.hpp"
#include "crsat/metrics.hpp"

namespace crsat {

// Steps reported for a try (or instance) that did not finish.
inline constexpr double kCensoredSteps = 1e7;
inline constexpr double kDefaultTrivialThreshold = 730;
inline constexpr std::uint64_t kNoCutoff = ~std::uint64_t{0};

std::vector<double> default_noise_candidates();  // 0.05, 0.1, 0.2, 0.3, 0.4, 0.5

struct Instance {
    std::string id;
    std::shared_ptr<const ConstrainedCircuit> circuit;
    std::shared_ptr<const StructuralProfile> profile;

    static Instance make(std::string id, ConstrainedCircuit cc, MetricOptions options = {});
};

// Cpu: per-thread CPU time. Work: deterministic virtual time, the number of
// steps plus propagation pops, times `work_unit_seconds`; runs are then bit-reproducible.
enum class ClockMode { Cpu, Work };

struct RunBudget {
    double timeout = 20.0;  // seconds per try
    std::uint64_t cutoff = kNoCutoff;
    ClockMode clock = ClockMode::Cpu;
    double work_unit_seconds = 1e-7;
};

enum class Outcome { Sat, Unknown };

struct TryRecord {
    std::string instance;
    std::string heuristic;
    double wp = 0.0;
    std::uint32_t try_index = 0;
    std::uint64_t seed = 0;
    Outcome outcome = Outcome::Unknown;
    std::uint64_t steps = 0;
    double wall_time = 0.0;
};

struct InstanceSummary {
    std::string instance;
    std::string heuristic;
    double best_wp = 0.0;
    double success_rate = 0.0;
    double median_time = 0.0;
    double median_steps = 0.0;
    bool solved = false;
};

class HarnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Seed of try `try_index` on an instance; shared by every heuristic and noise
// value so that configurations are compared on the same initial states.
std::uint64_t try_seed(std::uint64_t master_seed, const std::string& instance_id, std::uint32_t try_index);

// One seeded run under the budget. A SAT witness is re-verified against the
// instance before it is recorded; a run that finishes past the timeout counts
// as a timeout.
TryRecord run_try(const Instance& inst, Heuristic h, double wp, std::uint32_t try_index, std::uint64_t master_seed,
                  const RunBudget& budget);

// Lower median (element (n-1)/2 of the sorted values).
double lower_median(std::vector<double> values);

// Medians run over every try: timeouts count at the full timeout and at
// kCensoredSteps steps. solved <=> success rate >= 0.5.
InstanceSummary summarize(std::span<const TryRecord> records, std::size_t tries, double timeout);

struct NoiseChoice {
    double best_wp = 0.0;
    InstanceSummary summary;
    std::vector<TryRecord> records;  // all candidates, candidate-major
};

// Picks the noise with the highest success rate, then the lowest median time;
// remaining ties are broken uniformly at random by a stream derived from the
// master seed.
NoiseChoice choose_noise(const std::string& instance_id, const std::string& heuristic,
                         std::span<const double> candidates, std::vector<TryRecord> records, std::size_t tries,
                         double timeout, std::uint64_t master_seed);

// Runs `tries` tries per candidate on `jobs` worker threads, then choose_noise.
NoiseChoice optimize_noise(const Instance& inst, Heuristic h, std::size_t tries, const RunBudget& budget,
                           std::span<const double> candidates, std::uint64_t master_seed, unsigned jobs = 1);

// Calls fn(i) for i in [0, count) on a pool of worker threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

using HeuristicSummaries = std::vector<std::pair<std::string, std::vector<InstanceSummary>>>;

// heuristic,rank,median_time over solved instances sorted by time.
std::string emit_cactus_csv(const HeuristicSummaries& summaries);

// heuristic_a,heuristic_b,instance,median_steps_a,median_steps_b; a side that
// did not solve the instance is censored to kCensoredSteps. Rows follow the
// order of `a`. Throws HarnessError if the instance sets differ.
std::string emit_scatter_csv(const std::string& name_a, std::span<const InstanceSummary> a,
                             const std::string& name_b, std::span<const InstanceSummary> b, bool header = true);

struct TrivialPartition {
    std::vector<InstanceSummary> trivial;
    std::vector<InstanceSummary> retained;
};

// Trivial: median steps strictly below the threshold.
TrivialPartition filter_trivial(std::span<const InstanceSummary> summaries,
                                double threshold = kDefaultTrivialThreshold);

std::string tries_csv(std::span<const TryRecord> records);
std::string summaries_csv(std::span<const InstanceSummary> summaries);

// Step value used on scatter plots and ratio reports.
inline double censored_steps(const InstanceSummary& s) { return s.solved ? s.median_steps : kCensoredSteps; }

}  // namespace crsat
