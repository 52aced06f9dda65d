#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "crsat/circuit.hpp"

namespace crsat {

struct AigerHeader {
    bool binary = false;
    std::uint64_t max_var = 0;
    std::uint64_t inputs = 0;
    std::uint64_t latches = 0;
    std::uint64_t outputs = 0;
    std::uint64_t ands = 0;
};

class AigerError : public std::runtime_error {
public:
    enum class Kind { MalformedHeader, LatchesUnsupported, TruncatedDeltaEncoding, LiteralOutOfRange, MalformedBody };

    AigerError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

AigerHeader parse_aiger_header(std::string_view bytes);

// Parses ASCII ("aag") or binary ("aig") AIGER. Gate i is AIGER variable i;
// variable 0 is the constant gate. Every output literal is required to be
// true. When an output literal's gate already has parents (or is bound twice
// with opposite polarity) a single-child And buffer gate is appended past
// max_var and constrained instead, so constraints stay on output gates.
ConstrainedCircuit parse_aiger(std::string_view bytes);
ConstrainedCircuit read_aiger_file(const std::filesystem::path& path);

// Serializers for circuits laid out as produced by parse_aiger on a
// buffer-free file: gate 0 the constant, inputs next, then And gates in
// topological order. Single-child And gates are written as AND(l, l).
std::string write_aiger_ascii(const ConstrainedCircuit& cc);
std::string write_aiger_binary(const ConstrainedCircuit& cc);

}  // namespace crsat
