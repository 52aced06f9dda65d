#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "crsat/assignment.hpp"

namespace crsat {

// Exit codes of the command-line tool.
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnknown = 20;
inline constexpr int kExitError = 1;

// "gate,value" header, then one row per gate.
std::string witness_csv(const Assignment& a);
// Inverse of witness_csv; every gate of the circuit must appear exactly once.
Assignment parse_witness(std::string_view text, const Circuit& c);

// Subcommands: solve, metrics, tune, bench, gen, export-cnf. A FILE argument
// of "-" reads from `in`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace crsat
