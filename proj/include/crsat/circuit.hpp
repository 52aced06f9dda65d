#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace crsat {

using GateIndex = std::uint32_t;

// A reference to a gate, possibly through an inverter. NOT gates are never
// materialized: an edge either passes the child's value or its complement.
class Literal {
public:
    constexpr Literal() = default;
    constexpr Literal(GateIndex gate, bool complemented)
        : code_((gate << 1) | static_cast<std::uint32_t>(complemented)) {}

    static constexpr Literal from_code(std::uint32_t code) {
        Literal l;
        l.code_ = code;
        return l;
    }

    constexpr GateIndex gate() const { return code_ >> 1; }
    constexpr bool complemented() const { return (code_ & 1u) != 0; }
    constexpr std::uint32_t code() const { return code_; }

    // Value of the literal when its gate holds `gate_value`.
    constexpr bool apply(bool gate_value) const { return gate_value != complemented(); }

    constexpr Literal operator~() const { return from_code(code_ ^ 1u); }
    friend constexpr bool operator==(Literal, Literal) = default;
    friend constexpr auto operator<=>(Literal, Literal) = default;

private:
    std::uint32_t code_ = 0;
};

constexpr Literal positive(GateIndex g) { return Literal(g, false); }
constexpr Literal negative(GateIndex g) { return Literal(g, true); }

enum class GateKind : std::uint8_t { Input, And };

struct GateDefinition {
    GateIndex gate = 0;
    GateKind kind = GateKind::Input;
    std::vector<Literal> children;

    static GateDefinition input(GateIndex g) { return {g, GateKind::Input, {}}; }
    static GateDefinition conjunction(GateIndex g, std::vector<Literal> children) {
        return {g, GateKind::And, std::move(children)};
    }
};

class CircuitError : public std::runtime_error {
public:
    enum class Kind {
        CycleDetected,
        DuplicateDefinition,
        DanglingReference,
        EmptyConjunction,
        ConstraintOnInternalGate,
        InvalidConstraint,
    };

    CircuitError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Immutable And-Inverter graph with dense gate indexing. Child and fanout
// adjacency are stored in CSR form; the fanout of a gate lists each parent
// once even when the parent references the gate through several literals.
class Circuit {
public:
    Circuit() = default;

    std::size_t size() const { return kinds_.size(); }
    GateKind kind(GateIndex g) const { return kinds_[g]; }
    bool is_input(GateIndex g) const { return kinds_[g] == GateKind::Input; }
    bool is_and(GateIndex g) const { return kinds_[g] == GateKind::And; }

    std::span<const Literal> children(GateIndex g) const {
        return {child_lits_.data() + child_begin_[g], child_lits_.data() + child_begin_[g + 1]};
    }
    std::span<const GateIndex> fanout(GateIndex g) const {
        return {fanout_.data() + fanout_begin_[g], fanout_.data() + fanout_begin_[g + 1]};
    }
    bool is_output(GateIndex g) const { return fanout_begin_[g] == fanout_begin_[g + 1]; }

    std::span<const GateIndex> topo_order() const { return topo_order_; }
    std::uint32_t topo_position(GateIndex g) const { return topo_position_[g]; }

    // Free inputs in ascending index order. The constant gate, when present,
    // is an input gate but is not listed here.
    std::span<const GateIndex> inputs() const { return inputs_; }
    std::span<const GateIndex> outputs() const { return outputs_; }

    // Gate pinned to true that models AIGER constants (false = its complement).
    std::optional<GateIndex> constant_gate() const { return constant_; }
    bool is_constant(GateIndex g) const { return constant_ && *constant_ == g; }

    std::size_t num_ands() const { return num_ands_; }

    friend bool operator==(const Circuit& a, const Circuit& b) {
        return a.kinds_ == b.kinds_ && a.child_begin_ == b.child_begin_ &&
               a.child_lits_ == b.child_lits_ && a.constant_ == b.constant_;
    }

private:
    friend Circuit build_circuit(std::span<const GateDefinition>, std::optional<GateIndex>);

    std::vector<GateKind> kinds_;
    std::vector<std::uint32_t> child_begin_;
    std::vector<Literal> child_lits_;
    std::vector<std::uint32_t> fanout_begin_;
    std::vector<GateIndex> fanout_;
    std::vector<GateIndex> topo_order_;
    std::vector<std::uint32_t> topo_position_;
    std::vector<GateIndex> inputs_;
    std::vector<GateIndex> outputs_;
    std::optional<GateIndex> constant_;
    std::size_t num_ands_ = 0;
};

// Validates the definitions and computes fanout and a topological order.
// Gate indices must be dense: every index below the largest defined one has
// to be defined exactly once. `constant_gate`, if given, must name an input.
Circuit build_circuit(std::span<const GateDefinition> definitions,
                      std::optional<GateIndex> constant_gate = std::nullopt);

// Incremental helper for code that creates gates in topological order.
class CircuitBuilder {
public:
    GateIndex add_input();
    GateIndex add_constant();
    GateIndex add_and(std::vector<Literal> children);
    GateIndex add_and(Literal a, Literal b) { return add_and(std::vector<Literal>{a, b}); }
    std::size_t size() const { return definitions_.size(); }
    Circuit build() const { return build_circuit(definitions_, constant_); }

private:
    std::vector<GateDefinition> definitions_;
    std::optional<GateIndex> constant_;
};

// Circuit plus required values on output gates.
class ConstrainedCircuit {
public:
    ConstrainedCircuit() = default;
    explicit ConstrainedCircuit(Circuit circuit);

    const Circuit& circuit() const { return circuit_; }
    std::size_t size() const { return circuit_.size(); }

    // Throws CircuitError if `g` has parents or is already constrained to the
    // opposite value.
    void constrain(GateIndex g, bool value);

    bool is_constrained(GateIndex g) const { return required_[g] >= 0; }
    bool required_value(GateIndex g) const { return required_[g] == 1; }
    std::span<const GateIndex> constrained_gates() const { return constrained_; }

    // Gates whose value may never change during search: constrained gates and
    // the constant gate.
    bool is_pinned(GateIndex g) const { return required_[g] >= 0 || circuit_.is_constant(g); }
    bool pinned_value(GateIndex g) const {
        return circuit_.is_constant(g) ? true : required_[g] == 1;
    }

    friend bool operator==(const ConstrainedCircuit& a, const ConstrainedCircuit& b) {
        return a.circuit_ == b.circuit_ && a.required_ == b.required_;
    }

private:
    Circuit circuit_;
    std::vector<std::int8_t> required_;
    std::vector<GateIndex> constrained_;
};

}  // namespace crsat
