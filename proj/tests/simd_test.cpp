#include <doctest.h>

#include <bit>
#include <vector>

#include "crsat/generate.hpp"
#include "crsat/simd/kernels.hpp"
#include "crsat/simulate.hpp"
#include "support/oracles.hpp"

using namespace crsat;

namespace {

std::vector<std::uint64_t> random_words(Rng& rng, std::size_t n) {
    std::vector<std::uint64_t> v(n);
    for (auto& w : v) w = rng.next();
    return v;
}

}  // namespace

TEST_CASE("isa discovery") {
    auto isas = simd::available_isas();
    REQUIRE_FALSE(isas.empty());
    CHECK(isas.front() == simd::Isa::Scalar);
    CHECK(simd::kernels(simd::Isa::Scalar).isa == simd::Isa::Scalar);
    CHECK(std::string(simd::isa_name(simd::Isa::Avx2)) == "avx2");
    for (simd::Isa isa : isas) CHECK(simd::cpu_supports(isa));
    if (!simd::cpu_supports(simd::Isa::Avx2) || simd::avx2_kernels() == nullptr) {
        CHECK_THROWS(simd::kernels(simd::Isa::Avx2));
        MESSAGE("AVX2 kernels unavailable on this machine; only scalar is exercised");
    }
}

TEST_CASE("kernels agree with the scalar reference for every length") {
    const simd::Kernels& ref = simd::scalar_kernels();
    Rng rng(6);
    for (simd::Isa isa : simd::available_isas()) {
        const simd::Kernels& k = simd::kernels(isa);
        CAPTURE(k.name);
        for (std::size_t n = 0; n <= 67; ++n) {
            auto src = random_words(rng, n);
            auto base = random_words(rng, n);
            for (std::uint64_t mask : {std::uint64_t{0}, ~std::uint64_t{0}}) {
                std::vector<std::uint64_t> a(n), b(n);
                ref.copy_xor(a.data(), src.data(), mask, n);
                k.copy_xor(b.data(), src.data(), mask, n);
                REQUIRE(a == b);
                for (std::size_t i = 0; i < n; ++i) REQUIRE(a[i] == (src[i] ^ mask));

                a = base;
                b = base;
                ref.and_xor(a.data(), src.data(), mask, n);
                k.and_xor(b.data(), src.data(), mask, n);
                REQUIRE(a == b);
                for (std::size_t i = 0; i < n; ++i) REQUIRE(a[i] == (base[i] & (src[i] ^ mask)));
            }
            std::uint64_t pop = 0;
            for (auto w : src) pop += static_cast<std::uint64_t>(std::popcount(w));
            CHECK(ref.popcount(src.data(), n) == pop);
            CHECK(k.popcount(src.data(), n) == pop);

            // any(): zero vectors with a single bit placed at every position,
            // so the vector body and the scalar tail are both exercised.
            std::vector<std::uint64_t> zero(n, 0);
            CHECK_FALSE(k.any(zero.data(), n));
            for (std::size_t i = 0; i < n; ++i) {
                zero[i] = std::uint64_t{1} << (i % 64);
                REQUIRE(k.any(zero.data(), n));
                REQUIRE(ref.any(zero.data(), n));
                zero[i] = 0;
            }
        }
    }
}

TEST_CASE("unaligned pointers") {
    Rng rng(2);
    auto src = random_words(rng, 41);
    for (simd::Isa isa : simd::available_isas()) {
        const simd::Kernels& k = simd::kernels(isa);
        for (std::size_t off = 0; off < 4; ++off) {
            std::size_t n = src.size() - off;
            CHECK(k.popcount(src.data() + off, n) == simd::scalar_kernels().popcount(src.data() + off, n));
        }
    }
}

TEST_CASE("simulator matches per-pattern evaluation") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        oracle::DagShape shape{2 + rng.below(6), 5 + rng.below(80), 1 + rng.below(4), true};
        Circuit c = oracle::random_dag(shape, rng);
        const std::size_t words = 1 + rng.below(9);
        for (simd::Isa isa : simd::available_isas()) {
            PatternSimulator sim(c, words, simd::kernels(isa));
            Rng fill(trial);
            for (std::size_t i = 0; i < c.inputs().size(); ++i)
                for (auto& w : sim.input_words(i)) w = fill.next();
            sim.run();
            for (std::size_t bit = 0; bit < words * 64; bit += 13) {
                std::vector<std::uint8_t> inputs;
                for (std::size_t i = 0; i < c.inputs().size(); ++i)
                    inputs.push_back((sim.input_words(i)[bit / 64] >> (bit % 64)) & 1);
                auto expected = oracle::recursive_values(c, inputs);
                for (GateIndex g = 0; g < c.size(); ++g)
                    REQUIRE(((sim.gate_words(g)[bit / 64] >> (bit % 64)) & 1) == expected[g]);
            }
        }
    }
}

TEST_CASE("brute force agrees across isas and with enumeration") {
    Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        oracle::DagShape shape{1 + rng.below(14), 1 + rng.below(50), 1 + rng.below(3), rng.coin()};
        ConstrainedCircuit cc(oracle::random_dag(shape, rng));
        for (GateIndex g : cc.circuit().outputs())
            if (cc.circuit().is_and(g)) cc.constrain(g, rng.coin());
        std::uint64_t expected = oracle::count_satisfying(cc);
        auto first = oracle::enumerate_satisfying(cc);
        for (simd::Isa isa : simd::available_isas()) {
            BruteForceResult r = brute_force_satisfiability(cc, simd::kernels(isa));
            REQUIRE(r.satisfying_patterns == expected);
            REQUIRE(r.first_model == first);
        }
    }
}

TEST_CASE("brute force on larger generated instances") {
    Rng rng(8);
    auto g = generate_random_sat_aig(18, 120, rng);
    BruteForceResult scalar = brute_force_satisfiability(g.instance, simd::scalar_kernels());
    BruteForceResult best = brute_force_satisfiability(g.instance);
    CHECK(scalar.satisfying_patterns >= 1);
    CHECK(scalar.satisfying_patterns == best.satisfying_patterns);
    CHECK(scalar.first_model == best.first_model);
    REQUIRE(scalar.first_model);
    CHECK(verify_satisfying(g.instance, evaluate(g.instance.circuit(), *scalar.first_model)));
}
