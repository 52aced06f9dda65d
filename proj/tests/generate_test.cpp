#include <doctest.h>

#include "crsat/aiger.hpp"
#include "crsat/engine.hpp"
#include "crsat/generate.hpp"
#include "crsat/metrics.hpp"

using namespace crsat;

TEST_CASE("smallest instance") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        auto g = generate_random_sat_aig(2, 1, rng);
        const Circuit& c = g.instance.circuit();
        CHECK(c.size() == 4);
        CHECK(c.num_ands() == 1);
        CHECK(c.inputs().size() == 2);
        CHECK(g.instance.constrained_gates().size() == 1);
        CHECK(verify_satisfying(g.instance, g.witness));
        CHECK(g.witness == evaluate(c, g.hidden_inputs));
    }
}

TEST_CASE("structure") {
    Rng rng(3);
    auto g = generate_random_sat_aig(16, 500, rng);
    const Circuit& c = g.instance.circuit();
    CHECK(c.size() == 517);
    CHECK(c.is_constant(0));
    for (GateIndex x = 17; x < c.size(); ++x) {
        REQUIRE(c.is_and(x));
        auto ch = c.children(x);
        REQUIRE(ch.size() == 2);
        CHECK(ch[0].gate() != ch[1].gate());
        CHECK(ch[0].code() > ch[1].code());
        CHECK(ch[0].gate() < x);
        CHECK(ch[1].gate() != 0);
    }
    for (GateIndex o : c.outputs())
        CHECK(g.instance.is_constrained(o) == c.is_and(o));
    CHECK(verify_satisfying(g.instance, g.witness));
}

TEST_CASE("deterministic") {
    Rng a(99), b(99);
    auto x = generate_random_sat_aig(8, 40, a);
    auto y = generate_random_sat_aig(8, 40, b);
    CHECK(write_aiger_ascii(x.instance) == write_aiger_ascii(y.instance));
    CHECK(x.witness == y.witness);
    Rng c(100);
    CHECK(write_aiger_ascii(generate_random_sat_aig(8, 40, c).instance) != write_aiger_ascii(x.instance));
}

TEST_CASE("rejects empty shapes") {
    Rng rng(0);
    CHECK_THROWS_AS(generate_random_sat_aig(0, 5, rng), std::invalid_argument);
    CHECK_THROWS_AS(generate_random_sat_aig(5, 0, rng), std::invalid_argument);
}

TEST_CASE("solver finds a witness for 8-input instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        auto g = generate_random_sat_aig(8, 40, rng);
        StructuralProfile p = build_profile(g.instance.circuit());
        SolverConfig config;
        config.seed = seed;
        SolveResult r = crsat_solve(g.instance, p, config);
        REQUIRE(r.status == SolveStatus::Sat);
        CHECK(verify_satisfying(g.instance, *r.witness));
    }
}
