#include "crsat/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ranges>

namespace crsat {

namespace {

// Visit marks reused across closure queries on the same thread.
struct Marks {
    std::vector<std::uint32_t> stamp;
    std::vector<GateIndex> stack;
    std::uint32_t epoch = 0;

    void begin(std::size_t n) {
        if (stamp.size() < n) stamp.resize(n, 0);
        if (++epoch == 0) {
            std::fill(stamp.begin(), stamp.end(), 0);
            epoch = 1;
        }
        stack.clear();
    }
    bool visit(GateIndex g) {
        if (stamp[g] == epoch) return false;
        stamp[g] = epoch;
        return true;
    }
};

Marks& thread_marks() {
    thread_local Marks marks;
    return marks;
}

template <typename Neighbours>
std::uint32_t closure_size(const Circuit& c, GateIndex root, Neighbours next) {
    Marks& m = thread_marks();
    m.begin(c.size());
    m.visit(root);
    m.stack.push_back(root);
    std::uint32_t count = 0;
    while (!m.stack.empty()) {
        GateIndex g = m.stack.back();
        m.stack.pop_back();
        next(g, [&](GateIndex h) {
            if (m.visit(h)) {
                ++count;
                m.stack.push_back(h);
            }
        });
    }
    return count;
}

}  // namespace

std::vector<std::uint32_t> compute_depths(const Circuit& c) {
    std::vector<std::uint32_t> depth(c.size(), 0);
    for (GateIndex g : std::views::reverse(c.topo_order())) {
        std::uint32_t d = 0;
        for (GateIndex p : c.fanout(g)) d = std::max(d, depth[p] + 1);
        depth[g] = d;
    }
    return depth;
}

LevelMeasures compute_levels(const Circuit& c, AverageLevelMode mode) {
    LevelMeasures m;
    m.level.assign(c.size(), 0);
    m.llevel.assign(c.size(), 0);
    m.alevel.assign(c.size(), 0.0);
    for (GateIndex g : c.topo_order()) {
        if (c.is_input(g)) continue;
        auto ch = c.children(g);
        std::uint32_t hi = 0, lo = std::numeric_limits<std::uint32_t>::max();
        double sum = 0.0;
        for (Literal l : ch) {
            hi = std::max(hi, m.level[l.gate()]);
            lo = std::min(lo, m.llevel[l.gate()]);
            sum += mode == AverageLevelMode::SelfConsistent ? m.alevel[l.gate()] : m.level[l.gate()];
        }
        m.level[g] = hi + 1;
        m.llevel[g] = lo + 1;
        m.alevel[g] = 1.0 + sum / static_cast<double>(ch.size());
    }
    return m;
}

std::uint32_t transitive_fanin_size(const Circuit& c, GateIndex g) {
    return closure_size(c, g, [&](GateIndex x, auto&& emit) {
        for (Literal l : c.children(x)) emit(l.gate());
    });
}

std::uint32_t transitive_fanout_size(const Circuit& c, GateIndex g) {
    return closure_size(c, g, [&](GateIndex x, auto&& emit) {
        for (GateIndex p : c.fanout(x)) emit(p);
    });
}

FanoutMeasures compute_fanout_tfo_tfi(const Circuit& c) {
    FanoutMeasures m;
    m.fanout_size.resize(c.size());
    m.tfo_size.resize(c.size());
    m.tfi_size.resize(c.size());
    for (GateIndex g = 0; g < c.size(); ++g) {
        m.fanout_size[g] = static_cast<std::uint32_t>(c.fanout(g).size());
        m.tfo_size[g] = transitive_fanout_size(c, g);
        m.tfi_size[g] = transitive_fanin_size(c, g);
    }
    return m;
}

Controllability compute_scoap_cc(const Circuit& c) {
    Controllability cc;
    cc.cc0.assign(c.size(), 1);
    cc.cc1.assign(c.size(), 1);
    for (GateIndex g : c.topo_order()) {
        if (c.is_input(g)) continue;
        Cost zero = kCostSaturated, one = 1;
        for (Literal l : c.children(g)) {
            zero = std::min(zero, cc.of(l, false));
            one = saturating_add(one, cc.of(l, true));
        }
        cc.cc0[g] = saturating_add(zero, 1);
        cc.cc1[g] = one;
    }
    return cc;
}

std::vector<Cost> compute_scoap_co(const Circuit& c, const Controllability& cc) {
    std::vector<Cost> co(c.size(), 0);
    for (GateIndex g : std::views::reverse(c.topo_order())) {
        if (c.is_output(g)) continue;
        Cost best = kCostSaturated;
        for (GateIndex p : c.fanout(g)) {
            Cost through = co[p];
            for (Literal sibling : c.children(p))
                if (sibling.gate() != g) through = saturating_add(through, cc.of(sibling, true));
            best = std::min(best, through);
        }
        co[g] = saturating_add(best, 1);
    }
    return co;
}

std::vector<double> compute_flow(const Circuit& c, FlowMode mode) {
    std::vector<double> flow(c.size(), 0.0);
    if (mode == FlowMode::FaninShare) {
        for (GateIndex g : std::views::reverse(c.topo_order())) {
            if (c.is_output(g)) flow[g] = 1.0;
            auto ch = c.children(g);
            if (ch.empty()) continue;
            double share = flow[g] / static_cast<double>(ch.size());
            for (Literal l : ch) flow[l.gate()] += share;
        }
        return flow;
    }
    // Parents without fanout of their own (outputs) pass on their whole flow.
    for (GateIndex g : std::views::reverse(c.topo_order())) {
        if (c.is_output(g)) {
            flow[g] = 1.0;
            continue;
        }
        double sum = 0.0;
        for (GateIndex p : c.fanout(g))
            sum += flow[p] / static_cast<double>(std::max<std::size_t>(1, c.fanout(p).size()));
        flow[g] = sum;
    }
    return flow;
}

StructuralProfile build_profile(const Circuit& c, MetricOptions options) {
    StructuralProfile p;
    p.circuit_ = &c;
    p.options_ = options;
    p.depth_ = compute_depths(c);
    p.levels_ = compute_levels(c, options.alevel);
    p.fanout_size_.resize(c.size());
    for (GateIndex g = 0; g < c.size(); ++g) p.fanout_size_[g] = static_cast<std::uint32_t>(c.fanout(g).size());
    p.cc_ = compute_scoap_cc(c);
    p.co_ = compute_scoap_co(c, p.cc_);
    p.flow_ = compute_flow(c, options.flow);
    p.tfo_cache_ = std::make_unique<std::atomic<std::uint32_t>[]>(c.size());
    p.tfi_cache_ = std::make_unique<std::atomic<std::uint32_t>[]>(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        p.tfo_cache_[i].store(StructuralProfile::kUnknown, std::memory_order_relaxed);
        p.tfi_cache_[i].store(StructuralProfile::kUnknown, std::memory_order_relaxed);
    }
    return p;
}

std::uint32_t StructuralProfile::tfo_size(GateIndex g) const {
    std::uint32_t v = tfo_cache_[g].load(std::memory_order_relaxed);
    if (v == kUnknown) {
        v = transitive_fanout_size(*circuit_, g);
        tfo_cache_[g].store(v, std::memory_order_relaxed);
    }
    return v;
}

std::uint32_t StructuralProfile::tfi_size(GateIndex g) const {
    std::uint32_t v = tfi_cache_[g].load(std::memory_order_relaxed);
    if (v == kUnknown) {
        v = transitive_fanin_size(*circuit_, g);
        tfi_cache_[g].store(v, std::memory_order_relaxed);
    }
    return v;
}

std::string format_number(double x) {
    char buf[64];
    // Integral values print without an exponent (1e7 -> 10000000).
    auto [ptr, ec] = std::abs(x) < 1e15 && x == std::trunc(x)
                         ? std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed)
                         : std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string StructuralProfile::to_csv() const {
    std::string out = "gate,depth,level,llevel,alevel,fo,tfo,tfi,cc0,cc1,co,flow\n";
    for (GateIndex g = 0; g < size(); ++g) {
        out += std::to_string(g) + ',' + std::to_string(depth(g)) + ',' + std::to_string(level(g)) + ',' +
               std::to_string(llevel(g)) + ',' + format_number(alevel(g)) + ',' + std::to_string(fanout_size(g)) + ',' +
               std::to_string(tfo_size(g)) + ',' + std::to_string(tfi_size(g)) + ',' + std::to_string(cc0(g)) + ',' +
               std::to_string(cc1(g)) + ',' + std::to_string(co(g)) + ',' + format_number(flow(g)) + '\n';
    }
    return out;
}

}  // namespace crsat
