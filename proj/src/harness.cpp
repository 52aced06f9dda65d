#include "crsat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "crsat/rng.hpp"

namespace crsat {

std::vector<double> default_noise_candidates() { return {0.05, 0.1, 0.2, 0.3, 0.4, 0.5}; }

Instance Instance::make(std::string id, ConstrainedCircuit cc, MetricOptions options) {
    auto circuit = std::make_shared<const ConstrainedCircuit>(std::move(cc));
    auto profile = std::make_shared<const StructuralProfile>(build_profile(circuit->circuit(), options));
    return Instance{std::move(id), std::move(circuit), std::move(profile)};
}

std::uint64_t try_seed(std::uint64_t master_seed, const std::string& instance_id, std::uint32_t try_index) {
    return derive_seed(master_seed, {stable_hash(instance_id), try_index});
}

TryRecord run_try(const Instance& inst, Heuristic h, double wp, std::uint32_t try_index, std::uint64_t master_seed,
                  const RunBudget& budget) {
    SolverConfig config;
    config.wp = wp;
    config.cutoff = budget.cutoff;
    config.heuristic = h;
    config.seed = try_seed(master_seed, inst.id, try_index);

    const double start = thread_cpu_seconds();
    auto elapsed = [&](const SearchProgress& p) {
        return budget.clock == ClockMode::Work ? static_cast<double>(p.work) * budget.work_unit_seconds
                                               : thread_cpu_seconds() - start;
    };
    SolveResult r = crsat_solve(*inst.circuit, *inst.profile, config,
                                [&](const SearchProgress& p) { return elapsed(p) > budget.timeout; });
    const double time = elapsed(SearchProgress{r.steps_used, r.work});

    TryRecord rec;
    rec.instance = inst.id;
    rec.heuristic = h.name();
    rec.wp = wp;
    rec.try_index = try_index;
    rec.seed = config.seed;
    rec.steps = r.steps_used;
    if (r.status == SolveStatus::Sat) {
        if (!r.witness || !verify_satisfying(*inst.circuit, *r.witness))
            throw HarnessError("refusing to record an unverifiable witness for " + inst.id);
        if (time <= budget.timeout) rec.outcome = Outcome::Sat;
    }
    rec.wall_time = std::min(time, budget.timeout);
    return rec;
}

double lower_median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
    std::nth_element(values.begin(), mid, values.end());
    return *mid;
}

InstanceSummary summarize(std::span<const TryRecord> records, std::size_t tries, double timeout) {
    if (records.size() != tries || tries == 0)
        throw HarnessError("summarize: expected " + std::to_string(tries) + " tries, got " + std::to_string(records.size()));
    InstanceSummary s;
    s.instance = records.front().instance;
    s.heuristic = records.front().heuristic;
    s.best_wp = records.front().wp;
    std::vector<double> times, steps;
    std::size_t successes = 0;
    for (const auto& r : records) {
        if (r.outcome == Outcome::Sat) {
            ++successes;
            times.push_back(r.wall_time);
            steps.push_back(static_cast<double>(r.steps));
        } else {
            times.push_back(timeout);
            steps.push_back(kCensoredSteps);
        }
    }
    s.success_rate = static_cast<double>(successes) / static_cast<double>(tries);
    s.median_time = lower_median(std::move(times));
    s.median_steps = lower_median(std::move(steps));
    s.solved = 2 * successes >= tries;
    return s;
}

NoiseChoice choose_noise(const std::string& instance_id, const std::string& heuristic,
                         std::span<const double> candidates, std::vector<TryRecord> records, std::size_t tries,
                         double timeout, std::uint64_t master_seed) {
    if (candidates.empty()) throw HarnessError("no noise candidates");
    if (records.size() != candidates.size() * tries) throw HarnessError("record count does not match candidates x tries");
    std::vector<InstanceSummary> per;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        per.push_back(summarize(std::span(records).subspan(i * tries, tries), tries, timeout));

    std::vector<std::size_t> best{0};
    for (std::size_t i = 1; i < per.size(); ++i) {
        const auto& a = per[i];
        const auto& b = per[best.front()];
        if (a.success_rate > b.success_rate || (a.success_rate == b.success_rate && a.median_time < b.median_time))
            best = {i};
        else if (a.success_rate == b.success_rate && a.median_time == b.median_time)
            best.push_back(i);
    }
    Rng pick(derive_seed(master_seed, {stable_hash(instance_id), stable_hash(heuristic), stable_hash("noise")}));
    std::size_t chosen = best[pick.below(best.size())];
    return NoiseChoice{candidates[chosen], per[chosen], std::move(records)};
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next.store(count);
                    }
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
}

NoiseChoice optimize_noise(const Instance& inst, Heuristic h, std::size_t tries, const RunBudget& budget,
                           std::span<const double> candidates, std::uint64_t master_seed, unsigned jobs) {
    if (tries == 0) throw HarnessError("tries must be at least 1");
    if (candidates.empty()) throw HarnessError("no noise candidates");
    std::vector<TryRecord> records(candidates.size() * tries);
    parallel_for(records.size(), jobs, [&](std::size_t i) {
        records[i] = run_try(inst, h, candidates[i / tries], static_cast<std::uint32_t>(i % tries), master_seed, budget);
    });
    return choose_noise(inst.id, h.name(), candidates, std::move(records), tries, budget.timeout, master_seed);
}

std::string emit_cactus_csv(const HeuristicSummaries& summaries) {
    std::string out = "heuristic,rank,median_time\n";
    for (const auto& [name, list] : summaries) {
        std::vector<double> times;
        for (const auto& s : list)
            if (s.solved) times.push_back(s.median_time);
        std::sort(times.begin(), times.end());
        for (std::size_t k = 0; k < times.size(); ++k)
            out += name + ',' + std::to_string(k + 1) + ',' + format_number(times[k]) + '\n';
    }
    return out;
}

std::string emit_scatter_csv(const std::string& name_a, std::span<const InstanceSummary> a, const std::string& name_b,
                             std::span<const InstanceSummary> b, bool header) {
    std::map<std::string, const InstanceSummary*> by_id;
    for (const auto& s : b) by_id[s.instance] = &s;
    if (by_id.size() != a.size() || b.size() != a.size())
        throw HarnessError("scatter: instance sets of " + name_a + " and " + name_b + " differ");
    std::string out = header ? "heuristic_a,heuristic_b,instance,median_steps_a,median_steps_b\n" : "";
    for (const auto& s : a) {
        auto it = by_id.find(s.instance);
        if (it == by_id.end()) throw HarnessError("scatter: instance " + s.instance + " missing for " + name_b);
        out += name_a + ',' + name_b + ',' + s.instance + ',' + format_number(censored_steps(s)) + ',' +
               format_number(censored_steps(*it->second)) + '\n';
    }
    return out;
}

TrivialPartition filter_trivial(std::span<const InstanceSummary> summaries, double threshold) {
    TrivialPartition p;
    for (const auto& s : summaries) (s.median_steps < threshold ? p.trivial : p.retained).push_back(s);
    return p;
}

std::string tries_csv(std::span<const TryRecord> records) {
    std::string out = "instance,heuristic,wp,try,seed,outcome,steps,time\n";
    for (const auto& r : records)
        out += r.instance + ',' + r.heuristic + ',' + format_number(r.wp) + ',' + std::to_string(r.try_index) + ',' +
               std::to_string(r.seed) + ',' + (r.outcome == Outcome::Sat ? "SAT" : "UNKNOWN") + ',' +
               std::to_string(r.steps) + ',' + format_number(r.wall_time) + '\n';
    return out;
}

std::string summaries_csv(std::span<const InstanceSummary> summaries) {
    std::string out = "instance,heuristic,best_wp,success_rate,median_time,median_steps,solved\n";
    for (const auto& s : summaries)
        out += s.instance + ',' + s.heuristic + ',' + format_number(s.best_wp) + ',' + format_number(s.success_rate) +
               ',' + format_number(s.median_time) + ',' + format_number(s.median_steps) + ',' +
               (s.solved ? "1" : "0") + '\n';
    return out;
}

}  // namespace crsat
