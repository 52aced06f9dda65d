#include "crsat/generate.hpp"

#include <algorithm>
#include <stdexcept>

namespace crsat {

GeneratedInstance generate_random_sat_aig(std::size_t num_inputs, std::size_t num_ands, Rng& rng) {
    if (num_inputs < 1 || num_ands < 1) throw std::invalid_argument("generator needs at least one input and one and gate");
    CircuitBuilder b;
    b.add_constant();
    for (std::size_t i = 0; i < num_inputs; ++i) b.add_input();
    const std::size_t window = std::max<std::size_t>(4, num_inputs);

    auto pick = [&](std::size_t current) -> GateIndex {
        // Candidates are gates 1..current-1.
        std::size_t pool = current - 1;
        if (pool > window && rng.coin()) return static_cast<GateIndex>(current - 1 - rng.below(window));
        return static_cast<GateIndex>(1 + rng.below(pool));
    };

    for (std::size_t i = 0; i < num_ands; ++i) {
        std::size_t current = b.size();
        GateIndex x = pick(current);
        GateIndex y = x;
        if (current > 2)
            while (y == x) y = pick(current);
        Literal lx(x, rng.coin()), ly(y, rng.coin());
        if (lx.code() < ly.code()) std::swap(lx, ly);
        b.add_and(lx, ly);
    }

    Circuit c = b.build();
    std::vector<std::uint8_t> hidden(c.inputs().size());
    for (auto& bit : hidden) bit = rng.coin() ? 1 : 0;
    Assignment witness = evaluate(c, hidden);

    ConstrainedCircuit cc(std::move(c));
    for (GateIndex g : cc.circuit().outputs())
        if (cc.circuit().is_and(g)) cc.constrain(g, witness.value(g));
    return {std::move(cc), std::move(hidden), std::move(witness)};
}

}  // namespace crsat
