#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "crsat/aiger.hpp"
#include "crsat/cli.hpp"
#include "crsat/cnf.hpp"
#include "crsat/generate.hpp"

using namespace crsat;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args, const std::string& stdin_text = "") {
    args.insert(args.begin(), "crsat");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    std::istringstream in(stdin_text);
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err, in);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "crsat-cli-test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("witness csv round trip") {
    ConstrainedCircuit cc = parse_aiger("aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n");
    const std::vector<std::uint8_t> ones{1, 1};
    Assignment a = evaluate(cc.circuit(), ones);
    std::string csv = witness_csv(a);
    CHECK(csv == "gate,value\n0,1\n1,1\n2,1\n3,1\n");
    Assignment b = parse_witness(csv, cc.circuit());
    for (GateIndex g = 0; g < cc.size(); ++g) CHECK(a.value(g) == b.value(g));
    CHECK(verify_satisfying(cc, b));
    CHECK_THROWS(parse_witness("gate,value\n0,1\n1,1\n2,1\n", cc.circuit()));
    CHECK_THROWS(parse_witness("gate,value\n0,1\n0,1\n2,1\n3,1\n", cc.circuit()));
    CHECK_THROWS(parse_witness("gate,value\n0,1\n1,2\n2,1\n3,1\n", cc.circuit()));
    CHECK_THROWS(parse_witness("gate,value\n0,1\n1,1\n2,1\n9,1\n", cc.circuit()));
    CHECK_NOTHROW(parse_witness("gate,value\r\n0,1\r\n1,1\r\n2,1\r\n3,1\r\n", cc.circuit()));
}

TEST_CASE("solve from a file writes a checkable witness") {
    Rng rng(5);
    auto g = generate_random_sat_aig(8, 40, rng);
    fs::path file = scratch("solve.aag");
    std::ofstream(file) << write_aiger_ascii(g.instance);
    fs::remove(file.string() + ".witness");

    Run r = cli({"solve", file.string(), "--seed", "3"});
    CHECK(r.code == kExitSat);
    CHECK(r.out.rfind("SAT\nsteps ", 0) == 0);
    CHECK(r.err.rfind("time ", 0) == 0);
    std::string witness = slurp(file.string() + ".witness");
    REQUIRE_FALSE(witness.empty());
    CHECK(verify_satisfying(g.instance, parse_witness(witness, g.instance.circuit())));

    // Same seed, same step count.
    CHECK(cli({"solve", file.string(), "--seed", "3"}).out == r.out);

    fs::path custom = scratch("custom.witness");
    fs::remove(custom);
    Run named = cli({"solve", file.string(), "--heuristic", "tfi-min", "--wp", "0.5", "--witness", custom.string()});
    CHECK(named.code == kExitSat);
    CHECK(fs::exists(custom));
}

TEST_CASE("solve edge cases") {
    // No constraints: satisfied before any step.
    fs::path w = scratch("free.witness");
    Run free = cli({"solve", "-", "--witness", w.string()}, "aag 3 2 0 0 1\n2\n4\n6 2 4\n");
    CHECK(free.code == kExitSat);
    CHECK(free.out == "SAT\nsteps 0\n");

    // One input required at both polarities: never satisfiable, so the
    // solver spends exactly its cutoff.
    const std::string unsat = "aag 1 1 0 2 0\n2\n2\n3\n";
    Run r = cli({"solve", "-", "--cutoff", "0"}, unsat);
    CHECK(r.code == kExitUnknown);
    CHECK(r.out == "UNKNOWN\nsteps 0\n");
    Run r2 = cli({"solve", "-", "--cutoff", "500"}, unsat);
    CHECK(r2.code == kExitUnknown);
    CHECK(r2.out == "UNKNOWN\nsteps 500\n");
}

TEST_CASE("errors exit with one line on stderr") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"fly"},
             {"solve"},
             {"solve", "-", "--heuristic", "fastest"},
             {"solve", "-", "--wp", "1.5"},
             {"solve", "/nonexistent/file.aag"},
             {"gen", "--inputs", "0"},
             {"bench", "/nonexistent/bench.cfg"},
             {"metrics", "-", "--flow", "sideways"},
         }) {
        Run r = cli(args, "aag 1 1 0 1 0\n2\n2\n");
        CAPTURE(r.err);
        CHECK(r.code == kExitError);
        CHECK(lines(r.err) == 1);
        CHECK(r.err.rfind("crsat: ", 0) == 0);
    }
    Run bad = cli({"solve", "-"}, "aag 1 1 0 1 0\n2\n");
    CHECK(bad.code == kExitError);
    CHECK(bad.err.rfind("crsat: ", 0) == 0);
}

TEST_CASE("help") {
    Run r = cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("solve") != std::string::npos);
    CHECK(r.out.find("export-cnf") != std::string::npos);
}

TEST_CASE("metrics, gen and export-cnf") {
    const std::string aag = "aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n";
    Run m = cli({"metrics", "-"}, aag);
    CHECK(m.code == 0);
    CHECK(m.out.rfind("gate,depth,level,llevel,alevel,fo,tfo,tfi,cc0,cc1,co,flow\n", 0) == 0);
    CHECK(lines(m.out) == 5);
    Run mf = cli({"metrics", "-", "--flow", "fanout", "--alevel", "level"}, aag);
    CHECK(mf.code == 0);

    Run g1 = cli({"gen", "--inputs", "5", "--ands", "30", "--seed", "9"});
    Run g2 = cli({"gen", "--inputs", "5", "--ands", "30", "--seed", "9"});
    Run g3 = cli({"gen", "--inputs", "5", "--ands", "30", "--seed", "10"});
    CHECK(g1.code == 0);
    CHECK(g1.out == g2.out);
    CHECK(g1.out != g3.out);
    ConstrainedCircuit parsed = parse_aiger(g1.out);
    CHECK(parsed.circuit().inputs().size() == 5);
    Run gb = cli({"gen", "--inputs", "5", "--ands", "30", "--seed", "9", "--binary"});
    CHECK(gb.out.rfind("aig ", 0) == 0);
    CHECK(write_aiger_ascii(parse_aiger(gb.out)) == write_aiger_ascii(parsed));

    Run c = cli({"export-cnf", "-"}, aag);
    CHECK(c.code == 0);
    CHECK(c.out == export_dimacs(parse_aiger(aag)));
}

TEST_CASE("tune reports a noise value and every try") {
    Rng rng(2);
    auto g = generate_random_sat_aig(6, 25, rng);
    std::string aag = write_aiger_ascii(g.instance);
    std::vector<std::string> args{"tune", "-", "--tries", "3", "--noises", "0.1,0.4", "--clock", "work", "--seed", "4"};
    Run r = cli(args, aag);
    CHECK(r.code == 0);
    CHECK(r.out.rfind("best_wp 0.", 0) == 0);
    CHECK(r.out.find("instance,heuristic,wp,try,seed,outcome,steps,time\n") != std::string::npos);
    CHECK(lines(r.out) == 1 + 1 + 2 * 3);
    CHECK(cli(args, aag).out == r.out);
}

TEST_CASE("bench runs a config") {
    fs::path dir = scratch("bench");
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "b.cfg") << "suite = 2\nsuite_inputs = 5\nsuite_ands = 15-20\nheuristics = rand, level-min\n"
                                    "noises = 0.2\ntries = 3\ntimeout = 1\nclock = work\noutput = out\n";
    Run r = cli({"bench", (dir / "b.cfg").string(), "--jobs", "2"});
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "out" / "report.csv"));
    CHECK(lines(slurp(dir / "out" / "tries.csv")) == 1 + 2 * 2 * 3);
}
