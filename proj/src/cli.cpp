#include "crsat/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "crsat/aiger.hpp"
#include "crsat/cnf.hpp"
#include "crsat/engine.hpp"
#include "crsat/experiment.hpp"
#include "crsat/generate.hpp"
#include "crsat/harness.hpp"
#include "crsat/metrics.hpp"

namespace crsat {

std::string witness_csv(const Assignment& a) {
    std::string out = "gate,value\n";
    for (GateIndex g = 0; g < a.size(); ++g) out += std::to_string(g) + ',' + (a.value(g) ? "1\n" : "0\n");
    return out;
}

Assignment parse_witness(std::string_view text, const Circuit& c) {
    Assignment a(c.size());
    std::vector<std::uint8_t> seen(c.size(), 0);
    std::size_t line_no = 0, rows = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line_no++ == 0 && line == "gate,value") continue;
        if (line.empty()) continue;
        auto comma = line.find(',');
        GateIndex g = 0;
        unsigned v = 2;
        if (comma == std::string_view::npos ||
            std::from_chars(line.data(), line.data() + comma, g).ptr != line.data() + comma ||
            std::from_chars(line.data() + comma + 1, line.data() + line.size(), v).ptr != line.data() + line.size() ||
            v > 1 || g >= c.size() || seen[g])
            throw std::runtime_error("witness line " + std::to_string(line_no) + " is malformed");
        seen[g] = 1;
        a.set_raw(g, v == 1);
        ++rows;
    }
    if (rows != c.size()) throw std::runtime_error("witness does not assign every gate");
    a.recompute_unjust(c);
    return a;
}

namespace {

std::string read_input(const std::string& file, std::istream& in) {
    if (file == "-") {
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + file);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Heuristic heuristic_arg(const std::string& name) {
    auto h = parse_heuristic(name);
    if (!h) throw std::runtime_error("unknown heuristic '" + name + "'");
    return *h;
}

MetricOptions metric_options(const std::string& alevel, const std::string& flow) {
    MetricOptions m;
    m.alevel = alevel == "level" ? AverageLevelMode::ChildLevel : AverageLevelMode::SelfConsistent;
    m.flow = flow == "fanout" ? FlowMode::FanoutShare : FlowMode::FaninShare;
    return m;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app{"Circuit-level stochastic local search for constrained And-Inverter graphs", "crsat"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::string file, heuristic = "rand", witness_path, config_path, alevel = "self", flow = "fanin", clock = "cpu";
    double wp = 0.2, timeout = 200.0;
    std::uint64_t cutoff = 1'000'000, seed = 0;
    std::size_t tries = 25, inputs = 8, ands = 40;
    unsigned jobs = 1;
    std::vector<double> noises = default_noise_candidates();
    bool binary = false;

    const std::vector<std::string> heuristic_names(heuristic_catalog().begin(), heuristic_catalog().end());
    auto metric_flags = [&](CLI::App* sub) {
        sub->add_option("--alevel", alevel, "Averaged level recursion")->check(CLI::IsMember({"self", "level"}));
        sub->add_option("--flow", flow, "Flow split rule")->check(CLI::IsMember({"fanin", "fanout"}));
    };

    auto* solve = app.add_subcommand("solve", "Run CRSat on an AIGER file");
    solve->add_option("file", file, "AIGER file ('-' for stdin)")->required();
    solve->add_option("--heuristic", heuristic, "Gate selection heuristic")->check(CLI::IsMember(heuristic_names));
    solve->add_option("--wp", wp, "Noise: probability of a random-walk step")->check(CLI::Range(0.0, 1.0));
    solve->add_option("--cutoff", cutoff, "Maximum number of steps");
    solve->add_option("--seed", seed, "Random seed");
    solve->add_option("--witness", witness_path, "Witness output file (default: FILE.witness)");
    metric_flags(solve);

    auto* metrics = app.add_subcommand("metrics", "Dump per-gate structural measures as CSV");
    metrics->add_option("file", file, "AIGER file ('-' for stdin)")->required();
    metric_flags(metrics);

    auto* tune = app.add_subcommand("tune", "Optimize the noise value for one instance and heuristic");
    tune->add_option("file", file, "AIGER file ('-' for stdin)")->required();
    tune->add_option("--heuristic", heuristic, "Gate selection heuristic")->check(CLI::IsMember(heuristic_names));
    tune->add_option("--tries", tries, "Tries per noise value")->check(CLI::PositiveNumber);
    tune->add_option("--timeout", timeout, "Seconds per try")->check(CLI::PositiveNumber);
    tune->add_option("--noises", noises, "Candidate noise values")->delimiter(',')->check(CLI::Range(0.0, 1.0));
    tune->add_option("--seed", seed, "Master seed");
    tune->add_option("--jobs", jobs, "Worker threads (0: all cores)");
    tune->add_option("--clock", clock, "cpu or work (deterministic)")->check(CLI::IsMember({"cpu", "work"}));
    metric_flags(tune);

    auto* bench = app.add_subcommand("bench", "Run an experiment described by a config file");
    bench->add_option("config", config_path, "Experiment config")->required()->check(CLI::ExistingFile);
    auto* bench_jobs = bench->add_option("--jobs", jobs, "Worker threads (0: all cores), overrides the config");

    auto* gen = app.add_subcommand("gen", "Generate a random satisfiable AIG");
    gen->add_option("--inputs", inputs, "Number of inputs")->check(CLI::PositiveNumber);
    gen->add_option("--ands", ands, "Number of and gates")->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "Random seed");
    gen->add_flag("--binary", binary, "Write binary AIGER");

    auto* cnf = app.add_subcommand("export-cnf", "Write the Tseitin encoding as DIMACS");
    cnf->add_option("file", file, "AIGER file ('-' for stdin)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "crsat: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (solve->parsed()) {
            ConstrainedCircuit cc = parse_aiger(read_input(file, in));
            StructuralProfile profile = build_profile(cc.circuit(), metric_options(alevel, flow));
            SolverConfig config;
            config.wp = wp;
            config.cutoff = cutoff;
            config.seed = seed;
            config.heuristic = heuristic_arg(heuristic);
            SolveResult r = crsat_solve(cc, profile, config);
            out << (r.status == SolveStatus::Sat ? "SAT" : "UNKNOWN") << '\n' << "steps " << r.steps_used << '\n';
            err << "time " << format_number(r.wall_time) << '\n';
            if (r.status == SolveStatus::Sat) {
                std::string path = !witness_path.empty() ? witness_path : file == "-" ? "witness.csv" : file + ".witness";
                std::ofstream w(path, std::ios::binary);
                if (!w) throw std::runtime_error("cannot write witness file " + path);
                w << witness_csv(*r.witness);
                return kExitSat;
            }
            return kExitUnknown;
        }
        if (metrics->parsed()) {
            ConstrainedCircuit cc = parse_aiger(read_input(file, in));
            out << build_profile(cc.circuit(), metric_options(alevel, flow)).to_csv();
            return 0;
        }
        if (tune->parsed()) {
            Instance inst = Instance::make(file, parse_aiger(read_input(file, in)), metric_options(alevel, flow));
            RunBudget budget;
            budget.timeout = timeout;
            budget.clock = clock == "work" ? ClockMode::Work : ClockMode::Cpu;
            auto choice = optimize_noise(inst, heuristic_arg(heuristic), tries, budget, noises, seed, jobs);
            out << "best_wp " << format_number(choice.best_wp) << '\n' << tries_csv(choice.records);
            return 0;
        }
        if (bench->parsed()) {
            ExperimentConfig config = read_experiment_config(config_path);
            if (bench_jobs->count() > 0) config.jobs = jobs;
            run_experiment(config, &err);
            return 0;
        }
        if (gen->parsed()) {
            Rng rng(seed);
            auto g = generate_random_sat_aig(inputs, ands, rng);
            out << (binary ? write_aiger_binary(g.instance) : write_aiger_ascii(g.instance));
            return 0;
        }
        if (cnf->parsed()) {
            out << export_dimacs(parse_aiger(read_input(file, in)));
            return 0;
        }
    } catch (const std::exception& e) {
        err << "crsat: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace crsat
