#include "crsat/circuit.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace crsat {

namespace {

std::string gate_name(GateIndex g) { return "g" + std::to_string(g); }

}  // namespace

Circuit build_circuit(std::span<const GateDefinition> definitions, std::optional<GateIndex> constant_gate) {
    std::size_t n = 0;
    for (const auto& d : definitions) n = std::max<std::size_t>(n, std::size_t{d.gate} + 1);

    std::vector<const GateDefinition*> by_gate(n, nullptr);
    for (const auto& d : definitions) {
        if (by_gate[d.gate] != nullptr)
            throw CircuitError(CircuitError::Kind::DuplicateDefinition,
                               "gate " + gate_name(d.gate) + " is defined more than once");
        by_gate[d.gate] = &d;
    }
    for (GateIndex g = 0; g < n; ++g) {
        if (by_gate[g] == nullptr)
            throw CircuitError(CircuitError::Kind::DanglingReference, "gate " + gate_name(g) + " is not defined");
        const auto& d = *by_gate[g];
        if (d.kind == GateKind::And && d.children.empty())
            throw CircuitError(CircuitError::Kind::EmptyConjunction, "and gate " + gate_name(g) + " has no children");
        if (d.kind == GateKind::Input && !d.children.empty())
            throw CircuitError(CircuitError::Kind::DanglingReference, "input " + gate_name(g) + " has children");
        for (Literal l : d.children)
            if (l.gate() >= n)
                throw CircuitError(CircuitError::Kind::DanglingReference,
                                   gate_name(g) + " references undefined gate " + gate_name(l.gate()));
    }
    if (constant_gate && (*constant_gate >= n || by_gate[*constant_gate]->kind != GateKind::Input))
        throw CircuitError(CircuitError::Kind::DanglingReference, "constant gate must be a defined input");

    Circuit c;
    c.kinds_.resize(n);
    c.child_begin_.assign(n + 1, 0);
    for (GateIndex g = 0; g < n; ++g) {
        c.kinds_[g] = by_gate[g]->kind;
        c.child_begin_[g + 1] = c.child_begin_[g] + static_cast<std::uint32_t>(by_gate[g]->children.size());
    }
    c.child_lits_.reserve(c.child_begin_[n]);
    for (GateIndex g = 0; g < n; ++g)
        c.child_lits_.insert(c.child_lits_.end(), by_gate[g]->children.begin(), by_gate[g]->children.end());

    // Fanout: distinct parents, ascending.
    std::vector<std::vector<GateIndex>> parents(n);
    for (GateIndex g = 0; g < n; ++g)
        for (Literal l : c.children(g))
            if (parents[l.gate()].empty() || parents[l.gate()].back() != g) parents[l.gate()].push_back(g);
    c.fanout_begin_.assign(n + 1, 0);
    for (GateIndex g = 0; g < n; ++g)
        c.fanout_begin_[g + 1] = c.fanout_begin_[g] + static_cast<std::uint32_t>(parents[g].size());
    c.fanout_.reserve(c.fanout_begin_[n]);
    for (auto& p : parents) c.fanout_.insert(c.fanout_.end(), p.begin(), p.end());

    // Kahn's algorithm over distinct child edges.
    std::vector<std::uint32_t> pending(n, 0);
    for (GateIndex g = 0; g < n; ++g) {
        auto ch = c.children(g);
        std::vector<GateIndex> distinct;
        for (Literal l : ch) distinct.push_back(l.gate());
        std::sort(distinct.begin(), distinct.end());
        pending[g] = static_cast<std::uint32_t>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
    }
    std::deque<GateIndex> ready;
    for (GateIndex g = 0; g < n; ++g)
        if (pending[g] == 0) ready.push_back(g);
    c.topo_order_.reserve(n);
    while (!ready.empty()) {
        GateIndex g = ready.front();
        ready.pop_front();
        c.topo_order_.push_back(g);
        for (GateIndex p : c.fanout(g))
            if (--pending[p] == 0) ready.push_back(p);
    }
    if (c.topo_order_.size() != n) {
        GateIndex culprit = 0;
        while (pending[culprit] == 0) ++culprit;
        throw CircuitError(CircuitError::Kind::CycleDetected, "cycle through gate " + gate_name(culprit));
    }
    c.topo_position_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) c.topo_position_[c.topo_order_[i]] = i;

    c.constant_ = constant_gate;
    for (GateIndex g = 0; g < n; ++g) {
        if (c.is_input(g) && !c.is_constant(g)) c.inputs_.push_back(g);
        if (c.is_and(g)) ++c.num_ands_;
        if (c.is_output(g)) c.outputs_.push_back(g);
    }
    return c;
}

GateIndex CircuitBuilder::add_input() {
    auto g = static_cast<GateIndex>(definitions_.size());
    definitions_.push_back(GateDefinition::input(g));
    return g;
}

GateIndex CircuitBuilder::add_constant() {
    if (constant_) return *constant_;
    constant_ = add_input();
    return *constant_;
}

GateIndex CircuitBuilder::add_and(std::vector<Literal> children) {
    auto g = static_cast<GateIndex>(definitions_.size());
    definitions_.push_back(GateDefinition::conjunction(g, std::move(children)));
    return g;
}

ConstrainedCircuit::ConstrainedCircuit(Circuit circuit)
    : circuit_(std::move(circuit)), required_(circuit_.size(), -1) {}

void ConstrainedCircuit::constrain(GateIndex g, bool value) {
    if (g >= circuit_.size())
        throw CircuitError(CircuitError::Kind::DanglingReference, "constraint on undefined gate " + gate_name(g));
    if (!circuit_.is_output(g))
        throw CircuitError(CircuitError::Kind::ConstraintOnInternalGate,
                           "constraint on " + gate_name(g) + ", which has parents");
    if (circuit_.is_constant(g) && !value)
        throw CircuitError(CircuitError::Kind::InvalidConstraint, "constant gate constrained to false");
    if (required_[g] >= 0) {
        if ((required_[g] == 1) != value)
            throw CircuitError(CircuitError::Kind::InvalidConstraint,
                               "conflicting constraints on " + gate_name(g));
        return;
    }
    required_[g] = value ? 1 : 0;
    constrained_.push_back(g);
}

}  // namespace crsat
