#include "crsat/simulate.hpp"

#include <bit>
#include <stdexcept>

namespace crsat {

PatternSimulator::PatternSimulator(const Circuit& c, std::size_t words, const simd::Kernels& k)
    : c_(c), words_(words), k_(k), values_(c.size() * words, 0) {
    if (auto g = c.constant_gate()) std::fill_n(values_.begin() + *g * words_, words_, ~std::uint64_t{0});
}

void PatternSimulator::run() {
    for (GateIndex g : c_.topo_order()) {
        if (!c_.is_and(g)) continue;
        std::uint64_t* dst = values_.data() + g * words_;
        auto ch = c_.children(g);
        auto mask = [](Literal l) { return l.complemented() ? ~std::uint64_t{0} : std::uint64_t{0}; };
        k_.copy_xor(dst, values_.data() + ch[0].gate() * words_, mask(ch[0]), words_);
        for (std::size_t i = 1; i < ch.size(); ++i)
            k_.and_xor(dst, values_.data() + ch[i].gate() * words_, mask(ch[i]), words_);
    }
}

void PatternSimulator::satisfied_mask(const ConstrainedCircuit& cc, std::span<std::uint64_t> out) const {
    std::fill(out.begin(), out.end(), ~std::uint64_t{0});
    for (GateIndex g : cc.constrained_gates())
        k_.and_xor(out.data(), values_.data() + g * words_, cc.required_value(g) ? 0 : ~std::uint64_t{0}, words_);
}

namespace {

// Bit patterns of input i within one 64-bit word (pattern index = bit).
constexpr std::uint64_t kLanePattern[6] = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull,
};

}  // namespace

BruteForceResult brute_force_satisfiability(const ConstrainedCircuit& cc, const simd::Kernels& k) {
    const Circuit& c = cc.circuit();
    const std::size_t n = c.inputs().size();
    if (n > 32) throw std::invalid_argument("brute force supports at most 32 inputs");

    // A batch covers 2^12 patterns: bits 0-5 inside a word, 6-11 select the
    // word, the remaining input bits select the batch.
    constexpr std::size_t kBatchBits = 12;
    const std::size_t pattern_bits = std::min(n, kBatchBits);
    const std::size_t words = pattern_bits <= 6 ? 1 : std::size_t{1} << (pattern_bits - 6);
    const std::uint64_t tail_mask = pattern_bits >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1u << pattern_bits)) - 1;
    const std::uint64_t batches = std::uint64_t{1} << (n - pattern_bits);

    PatternSimulator sim(c, words, k);
    std::vector<std::uint64_t> ok(words);
    BruteForceResult result;
    for (std::uint64_t batch = 0; batch < batches; ++batch) {
        for (std::size_t i = 0; i < n; ++i) {
            auto w = sim.input_words(i);
            for (std::size_t j = 0; j < words; ++j) {
                if (i < 6)
                    w[j] = kLanePattern[i];
                else if (i < kBatchBits)
                    w[j] = ((j >> (i - 6)) & 1) ? ~std::uint64_t{0} : 0;
                else
                    w[j] = ((batch >> (i - kBatchBits)) & 1) ? ~std::uint64_t{0} : 0;
            }
        }
        sim.run();
        sim.satisfied_mask(cc, ok);
        ok[words - 1] &= tail_mask;
        if (!k.any(ok.data(), words)) continue;
        result.satisfying_patterns += k.popcount(ok.data(), words);
        if (!result.first_model) {
            std::size_t j = 0;
            while (ok[j] == 0) ++j;
            std::uint64_t pattern = (batch << kBatchBits) | (j << 6) | static_cast<std::uint64_t>(std::countr_zero(ok[j]));
            std::vector<std::uint8_t> model(n);
            for (std::size_t i = 0; i < n; ++i) model[i] = (pattern >> i) & 1;
            result.first_model = std::move(model);
        }
    }
    return result;
}

}  // namespace crsat
