#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "crsat/circuit.hpp"
#include "crsat/rng.hpp"

namespace crsat {

// Set of gate indices with O(1) insert, erase, membership and indexed access.
// Iteration order depends on the history of operations but is deterministic.
class GateSet {
public:
    GateSet() = default;
    explicit GateSet(std::size_t universe) : position_(universe, npos) {}

    bool contains(GateIndex g) const { return position_[g] != npos; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    GateIndex operator[](std::size_t i) const { return members_[i]; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    void insert(GateIndex g) {
        if (position_[g] != npos) return;
        position_[g] = static_cast<std::uint32_t>(members_.size());
        members_.push_back(g);
    }
    void erase(GateIndex g) {
        std::uint32_t p = position_[g];
        if (p == npos) return;
        GateIndex last = members_.back();
        members_[p] = last;
        position_[last] = p;
        members_.pop_back();
        position_[g] = npos;
    }
    void assign(GateIndex g, bool member) {
        if (member)
            insert(g);
        else
            erase(g);
    }
    void clear() {
        for (GateIndex g : members_) position_[g] = npos;
        members_.clear();
    }

private:
    static constexpr std::uint32_t npos = ~std::uint32_t{0};
    std::vector<GateIndex> members_;
    std::vector<std::uint32_t> position_;
};

// Complete truth assignment with an incrementally maintained set of
// unjustified gates: And gates whose value differs from the conjunction of
// their child literals. Input gates are always justified.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::size_t num_gates) : values_(num_gates, 0), unjust_(num_gates) {}

    std::size_t size() const { return values_.size(); }
    bool value(GateIndex g) const { return values_[g] != 0; }
    bool value(Literal l) const { return l.apply(values_[l.gate()] != 0); }
    std::span<const std::uint8_t> values() const { return values_; }

    const GateSet& unjust() const { return unjust_; }

    // Flips `g` and updates the justification status of `g` and its parents.
    void flip(const Circuit& c, GateIndex g) {
        values_[g] ^= 1;
        refresh(c, g);
        for (GateIndex p : c.fanout(g)) refresh(c, p);
    }
    void set(const Circuit& c, GateIndex g, bool v) {
        if (value(g) != v) flip(c, g);
    }

    // Writes a value without touching the unjust set; call recompute_unjust
    // afterwards.
    void set_raw(GateIndex g, bool v) { values_[g] = v ? 1 : 0; }
    void recompute_unjust(const Circuit& c);

    friend bool operator==(const Assignment& a, const Assignment& b) { return a.values_ == b.values_; }

private:
    void refresh(const Circuit& c, GateIndex g);

    std::vector<std::uint8_t> values_;
    GateSet unjust_;
};

// Value of the conjunction of the children of And gate `g` under `values`.
inline bool conjunction_value(const Circuit& c, GateIndex g, std::span<const std::uint8_t> values) {
    for (Literal l : c.children(g))
        if (!l.apply(values[l.gate()] != 0)) return false;
    return true;
}

inline void Assignment::refresh(const Circuit& c, GateIndex g) {
    unjust_.assign(g, c.is_and(g) && value(g) != conjunction_value(c, g, values_));
}

// A partial assignment to children of a gate that forces the gate's value.
// Each binding names the child literal and the value required at the
// literal's gate (not at the literal).
struct Binding {
    Literal literal;
    bool gate_value = false;

    bool literal_value() const { return literal.apply(gate_value); }
    friend bool operator==(const Binding&, const Binding&) = default;
};

struct Justification {
    std::vector<Binding> bindings;
    friend bool operator==(const Justification&, const Justification&) = default;
};

class JustificationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Extends an input pattern consistently to all gates. `input_values` is
// indexed like circuit.inputs(); the constant gate evaluates to true.
Assignment evaluate(const Circuit& c, std::span<const std::uint8_t> input_values);

bool is_justified(const Circuit& c, const Assignment& a, GateIndex g);

// The subset-minimal justifications for <g, v>: for v = true a single one
// binding every child literal to true, for v = false one per child binding
// that literal to false. Duplicate bindings are merged; a candidate that
// needs one gate at both values is dropped.
// Throws JustificationError if g is an input gate.
std::vector<Justification> enumerate_minimal_justifications(const Circuit& c, GateIndex g, bool v,
                                                            const Assignment& a);

// Consistent at every gate, constraints respected, constant gate true.
bool verify_satisfying(const ConstrainedCircuit& cc, const Assignment& a);

// Random input pattern, consistent evaluation, then pinned gates are forced
// to their required value. Constraint violations show up as unjustified gates.
Assignment random_complete_extension(const ConstrainedCircuit& cc, Rng& rng);

}  // namespace crsat
