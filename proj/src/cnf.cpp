#include "crsat/cnf.hpp"

#include <vector>

namespace crsat {

namespace {

long dimacs_literal(Literal l) {
    long v = static_cast<long>(l.gate()) + 1;
    return l.complemented() ? -v : v;
}

}  // namespace

std::string export_dimacs(const ConstrainedCircuit& cc) {
    const Circuit& c = cc.circuit();
    std::vector<std::vector<long>> clauses;
    for (GateIndex g = 0; g < c.size(); ++g) {
        if (!c.is_and(g)) continue;
        long out = static_cast<long>(g) + 1;
        std::vector<long> big{out};
        for (Literal l : c.children(g)) {
            clauses.push_back({-out, dimacs_literal(l)});
            big.push_back(-dimacs_literal(l));
        }
        clauses.push_back(std::move(big));
    }
    for (GateIndex g : cc.constrained_gates()) {
        long v = static_cast<long>(g) + 1;
        clauses.push_back({cc.required_value(g) ? v : -v});
    }
    if (auto k = c.constant_gate(); k && !c.is_output(*k)) clauses.push_back({static_cast<long>(*k) + 1});

    std::string text = "p cnf " + std::to_string(c.size()) + ' ' + std::to_string(clauses.size()) + '\n';
    for (const auto& cl : clauses) {
        for (long x : cl) text += std::to_string(x) + ' ';
        text += "0\n";
    }
    return text;
}

}  // namespace crsat
