#pragma once

// Independent reference implementations used as test oracles. Each one takes
// a different route from the library code it checks: plain recursion instead
// of topological sweeps, full scans instead of incremental updates, and
// per-pattern enumeration instead of bit-parallel simulation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crsat/assignment.hpp"
#include "crsat/circuit.hpp"
#include "crsat/rng.hpp"

namespace crsat::oracle {

struct DagShape {
    std::size_t inputs = 4;
    std::size_t ands = 20;
    std::size_t max_fanin = 3;   // children per And gate, drawn from [1, max_fanin]
    bool shuffle_indices = true;  // definition order no longer topological
};

// Random DAG with n-ary And gates and random complemented edges.
Circuit random_dag(const DagShape& shape, Rng& rng);

// Recursive DFS post-order.
std::vector<GateIndex> dfs_topological_order(const Circuit& c);
bool is_topological(const Circuit& c, const std::vector<GateIndex>& order);

// Gate values for an input pattern, by memoized recursion from every gate.
std::vector<std::uint8_t> recursive_values(const Circuit& c, const std::vector<std::uint8_t>& inputs);

// Full-scan unjust set, ascending.
std::vector<GateIndex> unjust_from_scratch(const Circuit& c, const std::vector<std::uint8_t>& values);

// One satisfying input pattern by plain enumeration, if any.
std::optional<std::vector<std::uint8_t>> enumerate_satisfying(const ConstrainedCircuit& cc);
std::uint64_t count_satisfying(const ConstrainedCircuit& cc);

// DPLL with unit propagation over a DIMACS text.
bool dimacs_satisfiable(const std::string& dimacs);

// Every subset-minimal set of (child gate, value) pairs that forces `g` to
// `v`, by enumerating all partial assignments of g's distinct child gates.
std::vector<std::vector<std::pair<GateIndex, bool>>> brute_force_minimal_justifications(const Circuit& c,
                                                                                       GateIndex g, bool v);

// Alg.-style propagation by a single ascending sweep over the topological
// order (no queue): a gate is visited when one of its children is in G or
// was flipped by the sweep. Returns the propagated values.
std::vector<std::uint8_t> reference_propagate(const ConstrainedCircuit& cc, std::vector<std::uint8_t> values,
                                              const std::vector<GateIndex>& flipped);

struct ReferenceProfile {
    std::vector<std::uint32_t> depth, level, llevel, fanout, tfo, tfi;
    std::vector<double> alevel_self, alevel_child_level, flow_fanin, flow_fanout;
    std::vector<std::uint64_t> cc0, cc1, co;
};

// Memoized recursive evaluation of every structural measure.
ReferenceProfile reference_profile(const Circuit& c);

}  // namespace crsat::oracle
