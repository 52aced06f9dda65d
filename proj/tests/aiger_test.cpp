#include <doctest.h>

#include <string>

#include "crsat/aiger.hpp"
#include "crsat/generate.hpp"
#include "support/oracles.hpp"

using namespace crsat;

namespace {

AigerError::Kind aiger_error(std::string_view text) {
    try {
        parse_aiger(text);
    } catch (const AigerError& e) {
        return e.kind();
    }
    FAIL("expected AigerError for: " << text);
    return AigerError::Kind::MalformedBody;
}

std::string binary(std::initializer_list<int> bytes) {
    std::string s;
    for (int b : bytes) s.push_back(static_cast<char>(b));
    return s;
}

}  // namespace

TEST_CASE("smallest and instance") {
    ConstrainedCircuit cc = parse_aiger("aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n");
    const Circuit& c = cc.circuit();
    REQUIRE(c.size() == 4);
    CHECK(c.is_constant(0));
    CHECK(c.inputs().size() == 2);
    CHECK(c.is_and(3));
    CHECK(c.children(3).size() == 2);
    CHECK(c.children(3)[0] == positive(2));  // normalized to descending codes
    CHECK(c.children(3)[1] == positive(1));
    REQUIRE(cc.constrained_gates().size() == 1);
    CHECK(cc.constrained_gates()[0] == 3);
    CHECK(cc.required_value(3));

    ConstrainedCircuit neg = parse_aiger("aag 3 2 0 1 1\n2\n4\n7\n6 2 4\n");
    CHECK_FALSE(neg.required_value(3));
}

TEST_CASE("binary encoding of the smallest instance") {
    // lhs 6, rhs0 4 (delta 2), rhs1 2 (delta 2)
    std::string bytes = "aig 3 2 0 1 1\n6\n" + binary({2, 2});
    CHECK(parse_aiger(bytes) == parse_aiger("aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n"));
    CHECK(write_aiger_binary(parse_aiger(bytes)) == bytes);
}

TEST_CASE("multi-byte deltas") {
    // 200 inputs; lhs = 402, rhs0 = 2 (delta 400 = 0x190), rhs1 = 0 (delta 2)
    std::string ascii = "aag 201 200 0 1 1\n";
    for (int i = 1; i <= 200; ++i) ascii += std::to_string(2 * i) + "\n";
    ascii += "402\n402 2 0\n";
    std::string bin = "aig 201 200 0 1 1\n402\n" + binary({0x90, 0x03, 0x02});
    CHECK(parse_aiger(bin) == parse_aiger(ascii));
    CHECK(write_aiger_binary(parse_aiger(ascii)) == bin);
}

TEST_CASE("constants and comments") {
    ConstrainedCircuit cc = parse_aiger("aag 2 1 0 1 1\n2\n4\n4 3 1\nc\nanything goes here\n");
    const Circuit& c = cc.circuit();
    CHECK(c.fanout(0).size() == 1);
    CHECK(cc.is_pinned(0));
    CHECK(cc.pinned_value(0));
    CHECK(c.children(2)[0] == negative(1));
    CHECK(c.children(2)[1] == positive(0));  // literal 1: constant true
    CHECK(write_aiger_ascii(cc) == "aag 2 1 0 1 1\n2\n4\n4 3 1\n");
}

TEST_CASE("symbol table is ignored") {
    CHECK(parse_aiger("aag 3 2 0 1 1\n2\n4\n6\n6 2 4\ni0 x\ni1 y\no0 out\n") ==
          parse_aiger("aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n"));
}

TEST_CASE("outputs that need a buffer gate") {
    // Output on an internal gate, the same gate required at both polarities,
    // and an output on the constant.
    ConstrainedCircuit cc = parse_aiger("aag 4 2 0 4 2\n2\n4\n6\n8\n1\n9\n6 2 4\n8 6 2\n");
    const Circuit& c = cc.circuit();
    REQUIRE(c.size() == 9);
    REQUIRE(cc.constrained_gates().size() == 4);
    for (GateIndex g : cc.constrained_gates()) {
        CHECK(c.is_output(g));
        CHECK(cc.required_value(g));
        CHECK(c.children(g).size() == 1);
    }
    CHECK(c.children(5)[0] == positive(3));
    CHECK(c.children(6)[0] == positive(4));
    CHECK(c.children(7)[0] == positive(0));  // literal 1: true
    CHECK(c.children(8)[0] == negative(4));
    CHECK_FALSE(oracle::enumerate_satisfying(cc).has_value());
}

TEST_CASE("output on an input gate") {
    ConstrainedCircuit cc = parse_aiger("aag 1 1 0 1 0\n2\n3\n");
    CHECK(cc.is_constrained(1));
    CHECK_FALSE(cc.required_value(1));
}

TEST_CASE("unused variables become inputs") {
    ConstrainedCircuit cc = parse_aiger("aag 5 2 0 1 1\n2\n4\n6\n6 2 4\n");
    CHECK(cc.size() == 6);
    CHECK(cc.circuit().inputs().size() == 4);
}

TEST_CASE("parse errors") {
    CHECK(aiger_error("") == AigerError::Kind::MalformedHeader);
    CHECK(aiger_error("aig\n") == AigerError::Kind::MalformedHeader);
    CHECK(aiger_error("aag 3 2 x 1 1\n") == AigerError::Kind::MalformedHeader);
    CHECK(aiger_error("xyz 3 2 0 1 1\n") == AigerError::Kind::MalformedHeader);
    CHECK(aiger_error("aag 1 2 0 0 0\n2\n4\n") == AigerError::Kind::MalformedHeader);
    CHECK(aiger_error("aag 3 0 1 0 0\n2 3\n") == AigerError::Kind::LatchesUnsupported);
    CHECK(aiger_error("aig 3 2 0 1 1\n6\n") == AigerError::Kind::TruncatedDeltaEncoding);
    CHECK(aiger_error("aig 3 2 0 1 1\n6\n" + binary({0x82})) == AigerError::Kind::TruncatedDeltaEncoding);
    CHECK(aiger_error("aig 3 2 0 1 1\n6\n" + binary({7, 0})) == AigerError::Kind::LiteralOutOfRange);
    CHECK(aiger_error("aag 3 2 0 1 1\n2\n4\n6\n6 2 99\n") == AigerError::Kind::LiteralOutOfRange);
    CHECK(aiger_error("aag 3 2 0 1 1\n2\n4\n9\n6 2 4\n") == AigerError::Kind::LiteralOutOfRange);
    CHECK(aiger_error("aag 3 2 0 1 1\n2\n4\n6\n") == AigerError::Kind::MalformedBody);
    CHECK(aiger_error("aag 3 2 0 1 1\n2\n4\n6\n6 2\n") == AigerError::Kind::MalformedBody);
    CHECK(aiger_error("aag 3 2 0 1 1\n3\n4\n6\n6 2 4\n") == AigerError::Kind::MalformedBody);
    CHECK_THROWS_AS(parse_aiger("aag 3 2 0 1 1\n2\n2\n6\n6 2 4\n"), CircuitError);  // input defined twice
    CHECK_THROWS_AS(parse_aiger("aag 3 1 0 1 1\n2\n6\n6 2 4\n"), CircuitError);      // 4 never defined
    CHECK_THROWS_AS(parse_aiger("aag 2 0 0 1 2\n4\n2 4 0\n4 2 0\n"), CircuitError);   // cycle
}

TEST_CASE("header") {
    AigerHeader h = parse_aiger_header("aag 7 2 0 3 5\n");
    CHECK_FALSE(h.binary);
    CHECK(h.max_var == 7);
    CHECK(h.inputs == 2);
    CHECK(h.latches == 0);
    CHECK(h.outputs == 3);
    CHECK(h.ands == 5);
    CHECK(parse_aiger_header("aig 0 0 0 0 0\n").binary);
}

TEST_CASE("round trips on generated instances") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        auto g = generate_random_sat_aig(1 + rng.below(16), 1 + rng.below(200), rng);
        std::string ascii = write_aiger_ascii(g.instance);
        std::string bin = write_aiger_binary(g.instance);
        ConstrainedCircuit from_ascii = parse_aiger(ascii);
        REQUIRE(from_ascii == g.instance);
        REQUIRE(parse_aiger(bin) == g.instance);
        CHECK(write_aiger_ascii(from_ascii) == ascii);
        CHECK(write_aiger_binary(parse_aiger(bin)) == bin);
    }
}

TEST_CASE("writers re-number shuffled circuits") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        oracle::DagShape shape{3 + rng.below(5), 5 + rng.below(40), 2, true};
        ConstrainedCircuit cc(oracle::random_dag(shape, rng));
        for (GateIndex g : cc.circuit().outputs())
            if (cc.circuit().is_and(g)) cc.constrain(g, rng.coin());
        ConstrainedCircuit back = parse_aiger(write_aiger_ascii(cc));
        CHECK(parse_aiger(write_aiger_binary(cc)) == back);
        // Same number of satisfying input patterns (inputs keep their order).
        CHECK(oracle::count_satisfying(back) == oracle::count_satisfying(cc));
    }
}

TEST_CASE("writer rejects wide gates") {
    CircuitBuilder b;
    GateIndex x = b.add_input(), y = b.add_input(), z = b.add_input();
    b.add_and({positive(x), positive(y), positive(z)});
    CHECK_THROWS_AS(write_aiger_ascii(ConstrainedCircuit(b.build())), std::invalid_argument);
}
