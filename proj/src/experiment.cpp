#include "crsat/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "crsat/aiger.hpp"
#include "crsat/generate.hpp"

namespace crsat {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (!s.empty()) {
        auto comma = s.find(',');
        auto item = trim(s.substr(0, comma));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view v) {
    T x{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("config: bad value '" + std::string(v) + "' for " + std::string(key));
    return x;
}

Heuristic heuristic_or_throw(std::string_view name) {
    auto h = parse_heuristic(name);
    if (!h) throw ConfigError("config: unknown heuristic '" + std::string(name) + "'");
    return *h;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    bool output_set = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));

        if (key == "instances") {
            for (auto f : split_list(value)) cfg.instance_files.push_back(base_dir / std::filesystem::path(f));
        } else if (key == "suite") {
            cfg.suite.count = parse_number<std::size_t>(key, value);
        } else if (key == "suite_inputs") {
            cfg.suite.inputs = parse_number<std::size_t>(key, value);
        } else if (key == "suite_ands") {
            auto dash = value.find('-');
            cfg.suite.ands_min = parse_number<std::size_t>(key, trim(value.substr(0, dash)));
            cfg.suite.ands_max = dash == std::string_view::npos ? cfg.suite.ands_min
                                                                : parse_number<std::size_t>(key, trim(value.substr(dash + 1)));
            if (cfg.suite.ands_min < 1 || cfg.suite.ands_max < cfg.suite.ands_min)
                throw ConfigError("config: suite_ands must be a range min-max with 1 <= min <= max");
        } else if (key == "suite_seed") {
            cfg.suite.seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "heuristics") {
            cfg.heuristics.clear();
            for (auto h : split_list(value)) cfg.heuristics.push_back(heuristic_or_throw(h));
        } else if (key == "noises") {
            cfg.noises.clear();
            for (auto n : split_list(value)) {
                double wp = parse_number<double>(key, n);
                if (!(wp >= 0.0 && wp <= 1.0)) throw ConfigError("config: noise values must lie in [0, 1]");
                cfg.noises.push_back(wp);
            }
        } else if (key == "tries") {
            cfg.tries = parse_number<std::size_t>(key, value);
        } else if (key == "timeout") {
            cfg.budget.timeout = parse_number<double>(key, value);
        } else if (key == "cutoff") {
            auto c = parse_number<std::uint64_t>(key, value);
            cfg.budget.cutoff = c == 0 ? kNoCutoff : c;
        } else if (key == "seed") {
            cfg.master_seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "output") {
            cfg.output_dir = base_dir / std::filesystem::path(value);
            output_set = true;
        } else if (key == "jobs") {
            cfg.jobs = parse_number<unsigned>(key, value);
        } else if (key == "clock") {
            if (value == "cpu")
                cfg.budget.clock = ClockMode::Cpu;
            else if (value == "work")
                cfg.budget.clock = ClockMode::Work;
            else
                throw ConfigError("config: clock must be cpu or work");
        } else if (key == "work_unit") {
            cfg.budget.work_unit_seconds = parse_number<double>(key, value);
        } else if (key == "scatter") {
            cfg.scatter_pairs.clear();
            for (auto pair : split_list(value)) {
                auto colon = pair.find(':');
                if (colon == std::string_view::npos) throw ConfigError("config: scatter pairs look like a:b");
                cfg.scatter_pairs.emplace_back(heuristic_or_throw(trim(pair.substr(0, colon))),
                                               heuristic_or_throw(trim(pair.substr(colon + 1))));
            }
        } else if (key == "trivial_reference") {
            cfg.trivial_reference = heuristic_or_throw(value);
        } else if (key == "trivial_threshold") {
            cfg.trivial_threshold = parse_number<double>(key, value);
        } else if (key == "alevel") {
            if (value == "self")
                cfg.metrics.alevel = AverageLevelMode::SelfConsistent;
            else if (value == "level")
                cfg.metrics.alevel = AverageLevelMode::ChildLevel;
            else
                throw ConfigError("config: alevel must be self or level");
        } else if (key == "flow") {
            if (value == "fanin")
                cfg.metrics.flow = FlowMode::FaninShare;
            else if (value == "fanout")
                cfg.metrics.flow = FlowMode::FanoutShare;
            else
                throw ConfigError("config: flow must be fanin or fanout");
        } else {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
    }
    if (cfg.heuristics.empty()) throw ConfigError("config: no heuristics given");
    if (cfg.noises.empty()) throw ConfigError("config: no noise values given");
    if (cfg.tries == 0) throw ConfigError("config: tries must be at least 1");
    if (!(cfg.budget.timeout > 0.0)) throw ConfigError("config: timeout must be positive");
    if (cfg.instance_files.empty() && cfg.suite.count == 0) throw ConfigError("config: no instances and no suite");
    if (!output_set) cfg.output_dir = base_dir / cfg.output_dir;
    for (const auto& [a, b] : cfg.scatter_pairs)
        for (const Heuristic& h : {a, b})
            if (std::find(cfg.heuristics.begin(), cfg.heuristics.end(), h) == cfg.heuristics.end())
                throw ConfigError("config: scatter heuristic " + h.name() + " is not in heuristics");
    if (cfg.trivial_reference &&
        std::find(cfg.heuristics.begin(), cfg.heuristics.end(), *cfg.trivial_reference) == cfg.heuristics.end())
        throw ConfigError("config: trivial_reference is not in heuristics");
    return cfg;
}

ExperimentConfig read_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_config(ss.str(), path.parent_path().empty() ? "." : path.parent_path());
}

std::vector<Instance> load_instances(const ExperimentConfig& config) {
    std::vector<Instance> out;
    std::set<std::string> ids;
    for (const auto& file : config.instance_files) {
        std::string id = file.stem().string();
        while (!ids.insert(id).second) id += "_";
        out.push_back(Instance::make(id, read_aiger_file(file), config.metrics));
    }
    Rng rng(derive_seed(config.suite.seed, {stable_hash("suite")}));
    for (std::size_t i = 0; i < config.suite.count; ++i) {
        std::size_t span = config.suite.ands_max - config.suite.ands_min + 1;
        std::size_t ands = config.suite.ands_min + rng.below(span);
        char name[32];
        std::snprintf(name, sizeof name, "suite-%03zu", i);
        auto gen = generate_random_sat_aig(config.suite.inputs, ands, rng);
        if (!ids.insert(name).second) throw ConfigError(std::string("duplicate instance id ") + name);
        out.push_back(Instance::make(name, std::move(gen.instance), config.metrics));
    }
    return out;
}

std::string emit_report_csv(const HeuristicSummaries& summaries) {
    if (summaries.empty()) return "heuristic,instances,solved,median_steps,step_ratio\n";
    const auto& [ref_name, ref] = summaries.front();
    std::map<std::string, double> ref_steps;
    for (const auto& s : ref) ref_steps[s.instance] = censored_steps(s);
    std::string out = "heuristic,instances,solved,median_steps,step_ratio_vs_" + ref_name + '\n';
    for (const auto& [name, list] : summaries) {
        std::size_t solved = 0;
        double log_sum = 0.0;
        std::vector<double> steps;
        for (const auto& s : list) {
            solved += s.solved ? 1 : 0;
            steps.push_back(censored_steps(s));
            auto it = ref_steps.find(s.instance);
            double base = it == ref_steps.end() ? censored_steps(s) : it->second;
            log_sum += std::log(std::max(1.0, censored_steps(s)) / std::max(1.0, base));
        }
        double ratio = list.empty() ? 1.0 : std::exp(log_sum / static_cast<double>(list.size()));
        out += name + ',' + std::to_string(list.size()) + ',' + std::to_string(solved) + ',' +
               format_number(lower_median(steps)) + ',' + format_number(ratio) + '\n';
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream* log) {
    std::vector<Instance> instances = load_instances(config);
    std::filesystem::create_directories(config.output_dir);
    if (config.suite.count > 0) {
        auto dir = config.output_dir / "instances";
        std::filesystem::create_directories(dir);
        for (const auto& inst : instances)
            if (inst.id.starts_with("suite-")) write_file(dir / (inst.id + ".aag"), write_aiger_ascii(*inst.circuit));
    }

    const std::size_t H = config.heuristics.size(), N = config.noises.size(), T = config.tries;
    const std::size_t per_pair = N * T;
    std::vector<TryRecord> records(instances.size() * H * per_pair);
    if (log)
        *log << "bench: " << instances.size() << " instances, " << H << " heuristics, " << N << " noise values, " << T
             << " tries (" << records.size() << " runs)\n";
    parallel_for(records.size(), config.jobs, [&](std::size_t job) {
        std::size_t pair = job / per_pair, within = job % per_pair;
        const Instance& inst = instances[pair / H];
        const Heuristic& h = config.heuristics[pair % H];
        records[job] = run_try(inst, h, config.noises[within / T], static_cast<std::uint32_t>(within % T),
                               config.master_seed, config.budget);
    });

    ExperimentResult result;
    std::vector<std::vector<InstanceSummary>> per_heuristic(H);
    for (std::size_t pair = 0; pair < instances.size() * H; ++pair) {
        std::vector<TryRecord> slice(records.begin() + static_cast<std::ptrdiff_t>(pair * per_pair),
                                     records.begin() + static_cast<std::ptrdiff_t>((pair + 1) * per_pair));
        auto choice = choose_noise(instances[pair / H].id, config.heuristics[pair % H].name(), config.noises,
                                   std::move(slice), T, config.budget.timeout, config.master_seed);
        result.summaries.push_back(choice.summary);
        per_heuristic[pair % H].push_back(choice.summary);
    }
    result.records = std::move(records);

    std::set<std::string> trivial;
    if (config.trivial_reference) {
        auto ref = std::find(config.heuristics.begin(), config.heuristics.end(), *config.trivial_reference) -
                   config.heuristics.begin();
        auto part = filter_trivial(per_heuristic[static_cast<std::size_t>(ref)], config.trivial_threshold);
        std::string text = "instance,median_steps,trivial\n";
        for (const auto& s : per_heuristic[static_cast<std::size_t>(ref)]) {
            bool t = s.median_steps < config.trivial_threshold;
            if (t) trivial.insert(s.instance);
            text += s.instance + ',' + format_number(s.median_steps) + ',' + (t ? "1" : "0") + '\n';
        }
        write_file(config.output_dir / "trivial.csv", text);
        result.trivial_instances.assign(trivial.begin(), trivial.end());
    }
    for (std::size_t h = 0; h < H; ++h) {
        std::vector<InstanceSummary> kept;
        for (const auto& s : per_heuristic[h])
            if (!trivial.contains(s.instance)) kept.push_back(s);
        result.by_heuristic.emplace_back(config.heuristics[h].name(), std::move(kept));
    }

    write_file(config.output_dir / "tries.csv", tries_csv(result.records));
    write_file(config.output_dir / "summaries.csv", summaries_csv(result.summaries));
    write_file(config.output_dir / "cactus.csv", emit_cactus_csv(result.by_heuristic));
    std::string scatter = "heuristic_a,heuristic_b,instance,median_steps_a,median_steps_b\n";
    auto find = [&](const Heuristic& h) -> const std::vector<InstanceSummary>& {
        for (const auto& [name, list] : result.by_heuristic)
            if (name == h.name()) return list;
        throw HarnessError("no summaries for " + h.name());
    };
    for (const auto& [a, b] : config.scatter_pairs)
        scatter += emit_scatter_csv(a.name(), find(a), b.name(), find(b), false);
    write_file(config.output_dir / "scatter.csv", scatter);
    write_file(config.output_dir / "report.csv", emit_report_csv(result.by_heuristic));
    if (log) *log << "bench: results written to " << config.output_dir.string() << '\n';
    return result;
}

}  // namespace crsat
