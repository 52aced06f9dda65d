#include "crsat/aiger.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

namespace crsat {

namespace {

using Kind = AigerError::Kind;

class Reader {
public:
    explicit Reader(std::string_view bytes) : bytes_(bytes) {}

    bool at_end() const { return pos_ >= bytes_.size(); }
    std::size_t position() const { return pos_; }

    std::string_view line() {
        std::size_t end = bytes_.find('\n', pos_);
        if (end == std::string_view::npos) end = bytes_.size();
        std::string_view l = bytes_.substr(pos_, end - pos_);
        pos_ = std::min(bytes_.size(), end + 1);
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
        return l;
    }

    int byte() { return at_end() ? -1 : static_cast<unsigned char>(bytes_[pos_++]); }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

std::vector<std::uint64_t> numbers(std::string_view line, Kind kind, const char* what) {
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        if (i >= line.size()) break;
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
        if (ec != std::errc{} || (ptr != line.data() + line.size() && *ptr != ' '))
            throw AigerError(kind, std::string("malformed ") + what + ": '" + std::string(line) + "'");
        out.push_back(v);
        i = static_cast<std::size_t>(ptr - line.data());
    }
    return out;
}

AigerHeader header_from_line(std::string_view line) {
    AigerHeader h;
    if (line.starts_with("aag "))
        h.binary = false;
    else if (line.starts_with("aig "))
        h.binary = true;
    else
        throw AigerError(Kind::MalformedHeader, "expected 'aag' or 'aig' header");
    auto v = numbers(line.substr(4), Kind::MalformedHeader, "header");
    if (v.size() < 5) throw AigerError(Kind::MalformedHeader, "header needs M I L O A");
    for (std::size_t i = 5; i < v.size(); ++i)
        if (v[i] != 0) throw AigerError(Kind::MalformedHeader, "bad/constraint/justice/fairness sections are unsupported");
    h.max_var = v[0];
    h.inputs = v[1];
    h.latches = v[2];
    h.outputs = v[3];
    h.ands = v[4];
    if (h.latches != 0) throw AigerError(Kind::LatchesUnsupported, "latches are unsupported (combinational circuits only)");
    if (h.max_var < h.inputs + h.latches + h.ands)
        throw AigerError(Kind::MalformedHeader, "M is smaller than I + L + A");
    if (h.binary && h.max_var != h.inputs + h.latches + h.ands)
        throw AigerError(Kind::MalformedHeader, "binary AIGER requires M = I + L + A");
    if (h.max_var >= (std::uint64_t{1} << 30)) throw AigerError(Kind::MalformedHeader, "M too large");
    return h;
}

std::uint64_t single_literal(std::string_view line, const AigerHeader& h, const char* what) {
    auto v = numbers(line, Kind::MalformedBody, what);
    if (v.size() != 1) throw AigerError(Kind::MalformedBody, std::string("expected one literal on ") + what + " line");
    if (v[0] > 2 * h.max_var + 1) throw AigerError(Kind::LiteralOutOfRange, "literal " + std::to_string(v[0]) + " out of range");
    return v[0];
}

std::uint64_t decode_delta(Reader& r) {
    std::uint64_t x = 0;
    for (int shift = 0;; shift += 7) {
        int b = r.byte();
        if (b < 0) throw AigerError(Kind::TruncatedDeltaEncoding, "binary and-gate section ends inside a delta");
        if (shift > 56) throw AigerError(Kind::MalformedBody, "delta too large");
        x |= static_cast<std::uint64_t>(b & 0x7f) << shift;
        if ((b & 0x80) == 0) return x;
    }
}

void encode_delta(std::string& out, std::uint64_t x) {
    while (x & ~std::uint64_t{0x7f}) {
        out.push_back(static_cast<char>((x & 0x7f) | 0x80));
        x >>= 7;
    }
    out.push_back(static_cast<char>(x));
}

struct AndRecord {
    std::uint64_t lhs, rhs0, rhs1;
};

// AIGER literal 0 is false; the constant gate holds true, so the polarity
// of variable 0 is inverted.
Literal to_literal(std::uint64_t code) {
    auto l = Literal::from_code(static_cast<std::uint32_t>(code));
    return (code >> 1) == 0 ? ~l : l;
}

ConstrainedCircuit assemble(const AigerHeader& h, const std::vector<std::uint64_t>& input_lits,
                            const std::vector<std::uint64_t>& output_lits, const std::vector<AndRecord>& ands) {
    const std::size_t vars = h.max_var + 1;
    std::vector<GateDefinition> defs;
    defs.reserve(vars + output_lits.size());
    std::vector<std::uint8_t> defined(vars, 0);
    defs.push_back(GateDefinition::input(0));
    defined[0] = 1;
    auto define = [&](GateDefinition d) {
        if (d.gate == 0) throw AigerError(Kind::MalformedBody, "constant variable redefined");
        defined[d.gate] = 1;
        defs.push_back(std::move(d));
    };
    for (auto lit : input_lits) {
        if (lit < 2 || (lit & 1)) throw AigerError(Kind::MalformedBody, "input literal must be positive and non-constant");
        define(GateDefinition::input(static_cast<GateIndex>(lit >> 1)));
    }
    for (const auto& a : ands) {
        if (a.lhs < 2 || (a.lhs & 1)) throw AigerError(Kind::MalformedBody, "and-gate lhs must be positive and non-constant");
        auto hi = to_literal(std::max(a.rhs0, a.rhs1));
        auto lo = to_literal(std::min(a.rhs0, a.rhs1));
        define(GateDefinition::conjunction(static_cast<GateIndex>(a.lhs >> 1), {hi, lo}));
    }
    // Unused variables become free inputs so indices stay dense; a referenced
    // undefined variable is a dangling reference.
    std::vector<std::uint8_t> referenced(vars, 0);
    for (const auto& a : ands) referenced[a.rhs0 >> 1] = referenced[a.rhs1 >> 1] = 1;
    for (auto lit : output_lits) referenced[lit >> 1] = 1;
    for (std::size_t v = 1; v < vars; ++v) {
        if (defined[v]) continue;
        if (referenced[v])
            throw CircuitError(CircuitError::Kind::DanglingReference, "variable " + std::to_string(v) + " is used but never defined");
        defs.push_back(GateDefinition::input(static_cast<GateIndex>(v)));
    }

    // An output is constrained directly unless its gate has parents, is the
    // constant, or is required at both polarities; those go through buffers.
    std::vector<std::uint8_t> buffered(vars, 0);
    for (const auto& a : ands) buffered[a.rhs0 >> 1] = buffered[a.rhs1 >> 1] = 1;
    buffered[0] = 1;
    std::vector<std::uint8_t> polarity(vars, 0);  // bit 0: required true, bit 1: required false
    for (auto lit : output_lits) polarity[lit >> 1] |= (lit & 1) ? 2 : 1;
    for (std::size_t v = 0; v < vars; ++v)
        if (polarity[v] == 3) buffered[v] = 1;
    std::vector<std::pair<GateIndex, bool>> constraints;
    GateIndex next = static_cast<GateIndex>(vars);
    for (auto lit : output_lits) {
        auto g = static_cast<GateIndex>(lit >> 1);
        if (!buffered[g]) {
            constraints.emplace_back(g, (lit & 1) == 0);
        } else {
            defs.push_back(GateDefinition::conjunction(next, {to_literal(lit)}));
            constraints.emplace_back(next, true);
            ++next;
        }
    }
    ConstrainedCircuit cc(build_circuit(defs, GateIndex{0}));
    for (auto [g, v] : constraints) cc.constrain(g, v);
    return cc;
}

}  // namespace

AigerHeader parse_aiger_header(std::string_view bytes) {
    Reader r(bytes);
    return header_from_line(r.line());
}

ConstrainedCircuit parse_aiger(std::string_view bytes) {
    Reader r(bytes);
    AigerHeader h = header_from_line(r.line());
    std::vector<std::uint64_t> inputs, outputs;
    std::vector<AndRecord> ands;
    auto next_line = [&](const char* what) {
        if (r.at_end()) throw AigerError(Kind::MalformedBody, std::string("file ends before ") + what + " section is complete");
        return r.line();
    };

    if (!h.binary)
        for (std::uint64_t i = 0; i < h.inputs; ++i) inputs.push_back(single_literal(next_line("input"), h, "input"));
    else
        for (std::uint64_t i = 0; i < h.inputs; ++i) inputs.push_back(2 * (i + 1));
    for (std::uint64_t i = 0; i < h.outputs; ++i) outputs.push_back(single_literal(next_line("output"), h, "output"));

    if (!h.binary) {
        for (std::uint64_t i = 0; i < h.ands; ++i) {
            auto v = numbers(next_line("and-gate"), Kind::MalformedBody, "and-gate line");
            if (v.size() != 3) throw AigerError(Kind::MalformedBody, "and-gate line needs three literals");
            for (auto x : v)
                if (x > 2 * h.max_var + 1) throw AigerError(Kind::LiteralOutOfRange, "literal " + std::to_string(x) + " out of range");
            ands.push_back({v[0], v[1], v[2]});
        }
    } else {
        for (std::uint64_t i = 0; i < h.ands; ++i) {
            std::uint64_t lhs = 2 * (h.inputs + h.latches + i + 1);
            std::uint64_t d0 = decode_delta(r);
            std::uint64_t d1 = decode_delta(r);
            if (d0 == 0 || d0 > lhs) throw AigerError(Kind::LiteralOutOfRange, "first delta out of range");
            std::uint64_t rhs0 = lhs - d0;
            if (d1 > rhs0) throw AigerError(Kind::LiteralOutOfRange, "second delta out of range");
            ands.push_back({lhs, rhs0, rhs0 - d1});
        }
    }
    return assemble(h, inputs, outputs, ands);
}

ConstrainedCircuit read_aiger_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_aiger(bytes);
}

namespace {

struct Layout {
    std::vector<std::uint32_t> var;  // gate -> AIGER variable
    std::vector<GateIndex> inputs;
    std::vector<GateIndex> ands;
};

Layout layout_of(const Circuit& c) {
    Layout l;
    l.var.assign(c.size(), 0);
    std::uint32_t next = 1;
    for (GateIndex g : c.inputs()) {
        l.var[g] = next++;
        l.inputs.push_back(g);
    }
    // Index order when it is already topological (parse_aiger output always
    // is), so that writing and re-parsing reproduces the gate numbering.
    bool index_order = true;
    for (GateIndex g = 0; g < c.size() && index_order; ++g)
        for (Literal ch : c.children(g)) index_order = index_order && ch.gate() < g;
    std::vector<GateIndex> order(c.topo_order().begin(), c.topo_order().end());
    if (index_order) std::sort(order.begin(), order.end());
    for (GateIndex g : order)
        if (c.is_and(g)) {
            if (c.children(g).size() > 2)
                throw std::invalid_argument("AIGER output supports and gates with at most two children");
            l.var[g] = next++;
            l.ands.push_back(g);
        }
    return l;
}

std::uint32_t code(const Circuit& c, const Layout& l, Literal lit) {
    if (c.is_constant(lit.gate())) return lit.complemented() ? 0 : 1;
    return 2 * l.var[lit.gate()] + (lit.complemented() ? 1 : 0);
}

std::pair<std::uint32_t, std::uint32_t> and_rhs(const Circuit& c, const Layout& l, GateIndex g) {
    auto ch = c.children(g);
    std::uint32_t a = code(c, l, ch[0]);
    std::uint32_t b = ch.size() > 1 ? code(c, l, ch[1]) : a;
    return {std::max(a, b), std::min(a, b)};
}

std::string header_line(const char* tag, const ConstrainedCircuit& cc, const Layout& l) {
    std::ostringstream os;
    os << tag << ' ' << l.inputs.size() + l.ands.size() << ' ' << l.inputs.size() << " 0 "
       << cc.constrained_gates().size() << ' ' << l.ands.size() << '\n';
    return os.str();
}

std::string output_lines(const ConstrainedCircuit& cc, const Layout& l) {
    std::string out;
    for (GateIndex g : cc.constrained_gates())
        out += std::to_string(2 * l.var[g] + (cc.required_value(g) ? 0 : 1)) + '\n';
    return out;
}

}  // namespace

std::string write_aiger_ascii(const ConstrainedCircuit& cc) {
    const Circuit& c = cc.circuit();
    Layout l = layout_of(c);
    std::string out = header_line("aag", cc, l);
    for (GateIndex g : l.inputs) out += std::to_string(2 * l.var[g]) + '\n';
    out += output_lines(cc, l);
    for (GateIndex g : l.ands) {
        auto [hi, lo] = and_rhs(c, l, g);
        out += std::to_string(2 * l.var[g]) + ' ' + std::to_string(hi) + ' ' + std::to_string(lo) + '\n';
    }
    return out;
}

std::string write_aiger_binary(const ConstrainedCircuit& cc) {
    const Circuit& c = cc.circuit();
    Layout l = layout_of(c);
    std::string out = header_line("aig", cc, l);
    out += output_lines(cc, l);
    for (GateIndex g : l.ands) {
        auto [hi, lo] = and_rhs(c, l, g);
        std::uint32_t lhs = 2 * l.var[g];
        encode_delta(out, lhs - hi);
        encode_delta(out, hi - lo);
    }
    return out;
}

}  // namespace crsat
