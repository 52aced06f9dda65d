#pragma once

#include <cstdint>
#include <vector>

#include "crsat/assignment.hpp"
#include "crsat/circuit.hpp"
#include "crsat/rng.hpp"

namespace crsat {

struct GeneratedInstance {
    ConstrainedCircuit instance;
    std::vector<std::uint8_t> hidden_inputs;  // indexed like circuit().inputs()
    Assignment witness;
};

// Random AIG: gate 0 is the constant, gates 1..num_inputs are inputs, then
// num_ands two-input And gates over distinct earlier gates (half the picks
// come from a window of recent gates, which makes the graph deep). A hidden
// input pattern is evaluated and every And gate without parents is
// constrained to its value, so the instance is satisfiable by construction.
GeneratedInstance generate_random_sat_aig(std::size_t num_inputs, std::size_t num_ands, Rng& rng);

}  // namespace crsat
