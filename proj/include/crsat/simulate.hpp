#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crsat/circuit.hpp"
#include "crsat/simd/kernels.hpp"

namespace crsat {

// Evaluates a circuit on many input patterns at once, one bit per pattern.
class PatternSimulator {
public:
    PatternSimulator(const Circuit& c, std::size_t words, const simd::Kernels& k = simd::best_kernels());

    std::size_t words() const { return words_; }
    std::span<std::uint64_t> input_words(std::size_t input_index) {
        return {values_.data() + c_.inputs()[input_index] * words_, words_};
    }
    // Runs every And gate in topological order; input words must be filled.
    void run();
    std::span<const std::uint64_t> gate_words(GateIndex g) const { return {values_.data() + g * words_, words_}; }

    // Patterns (as a bit mask per word) that satisfy every pin of `cc`.
    void satisfied_mask(const ConstrainedCircuit& cc, std::span<std::uint64_t> out) const;

private:
    const Circuit& c_;
    std::size_t words_;
    const simd::Kernels& k_;
    std::vector<std::uint64_t> values_;
};

struct BruteForceResult {
    std::uint64_t satisfying_patterns = 0;
    std::optional<std::vector<std::uint8_t>> first_model;  // input values, lowest pattern index
};

// Enumerates all 2^|inputs| input patterns. Requires at most 32 free inputs.
BruteForceResult brute_force_satisfiability(const ConstrainedCircuit& cc,
                                            const simd::Kernels& k = simd::best_kernels());

}  // namespace crsat
