#pragma once

#include <string>

#include "crsat/circuit.hpp"

namespace crsat {

// Tseitin encoding in DIMACS. Variable of gate g is g + 1. Per And gate
// g = and(l1..ln): clauses (-g | li) for each i, then (g | -l1 | ... | -ln);
// one unit clause per constraint, plus one for the constant gate when
// some gate references it.
std::string export_dimacs(const ConstrainedCircuit& cc);

}  // namespace crsat
