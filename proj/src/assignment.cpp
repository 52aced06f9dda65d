#include "crsat/assignment.hpp"

#include <algorithm>

namespace crsat {

void Assignment::recompute_unjust(const Circuit& c) {
    unjust_.clear();
    for (GateIndex g = 0; g < c.size(); ++g) refresh(c, g);
}

Assignment evaluate(const Circuit& c, std::span<const std::uint8_t> input_values) {
    if (input_values.size() != c.inputs().size())
        throw std::invalid_argument("evaluate: expected " + std::to_string(c.inputs().size()) + " input values, got " +
                                    std::to_string(input_values.size()));
    Assignment a(c.size());
    auto inputs = c.inputs();
    for (std::size_t i = 0; i < inputs.size(); ++i) a.set_raw(inputs[i], input_values[i] != 0);
    if (auto k = c.constant_gate()) a.set_raw(*k, true);
    for (GateIndex g : c.topo_order())
        if (c.is_and(g)) a.set_raw(g, conjunction_value(c, g, a.values()));
    a.recompute_unjust(c);
    return a;
}

bool is_justified(const Circuit& c, const Assignment& a, GateIndex g) {
    return c.is_input(g) || a.value(g) == conjunction_value(c, g, a.values());
}

std::vector<Justification> enumerate_minimal_justifications(const Circuit& c, GateIndex g, bool v,
                                                            [[maybe_unused]] const Assignment& a) {
    if (!c.is_and(g)) throw JustificationError("input gate g" + std::to_string(g) + " has no justification");
    auto children = c.children(g);
    std::vector<Justification> out;
    if (v) {
        Justification j;
        for (Literal l : children) {
            Binding b{l, !l.complemented()};
            auto clash = std::find_if(j.bindings.begin(), j.bindings.end(),
                                      [&](const Binding& x) { return x.literal.gate() == l.gate(); });
            if (clash == j.bindings.end())
                j.bindings.push_back(b);
            else if (clash->gate_value != b.gate_value)
                return out;  // needs a gate at both values: the gate cannot be 1
        }
        out.push_back(std::move(j));
        return out;
    }
    // A gate reading both polarities of one child is 0 whatever its children
    // hold: the empty justification is then the only minimal one.
    for (Literal l : children)
        if (std::find(children.begin(), children.end(), ~l) != children.end()) {
            out.push_back(Justification{});
            return out;
        }
    for (Literal l : children) {
        Binding b{l, l.complemented()};
        bool seen = std::any_of(out.begin(), out.end(), [&](const Justification& x) {
            return x.bindings.front().literal.gate() == l.gate() && x.bindings.front().gate_value == b.gate_value;
        });
        if (!seen) out.push_back(Justification{{b}});
    }
    return out;
}

bool verify_satisfying(const ConstrainedCircuit& cc, const Assignment& a) {
    const Circuit& c = cc.circuit();
    if (a.size() != c.size()) return false;
    for (GateIndex g = 0; g < c.size(); ++g) {
        if (c.is_and(g) && a.value(g) != conjunction_value(c, g, a.values())) return false;
        if (cc.is_pinned(g) && a.value(g) != cc.pinned_value(g)) return false;
    }
    return true;
}

Assignment random_complete_extension(const ConstrainedCircuit& cc, Rng& rng) {
    const Circuit& c = cc.circuit();
    std::vector<std::uint8_t> inputs(c.inputs().size());
    for (auto& bit : inputs) bit = rng.coin() ? 1 : 0;
    Assignment a = evaluate(c, inputs);
    // Pinned gates are outputs (or the constant), so overwriting them never
    // changes the consistency of another gate.
    for (GateIndex g : cc.constrained_gates()) a.set_raw(g, cc.required_value(g));
    a.recompute_unjust(c);
    return a;
}

}  // namespace crsat
