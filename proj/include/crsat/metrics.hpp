#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "crsat/circuit.hpp"

namespace crsat {

// How the averaged level recurses: over the children's averaged level
// (default), or over the children's plain level.
enum class AverageLevelMode { SelfConsistent, ChildLevel };

// How a gate splits its flow among its children: equally among its child
// slots (flow is conserved), or by the parent's own fanout size.
enum class FlowMode { FaninShare, FanoutShare };

struct MetricOptions {
    AverageLevelMode alevel = AverageLevelMode::SelfConsistent;
    FlowMode flow = FlowMode::FaninShare;
};

// SCOAP costs grow exponentially along reconvergent paths; they saturate.
using Cost = std::uint64_t;
inline constexpr Cost kCostSaturated = std::numeric_limits<Cost>::max();

inline Cost saturating_add(Cost a, Cost b) { return a > kCostSaturated - b ? kCostSaturated : a + b; }

struct LevelMeasures {
    std::vector<std::uint32_t> level;
    std::vector<std::uint32_t> llevel;
    std::vector<double> alevel;
};

struct FanoutMeasures {
    std::vector<std::uint32_t> fanout_size;
    std::vector<std::uint32_t> tfo_size;
    std::vector<std::uint32_t> tfi_size;
};

struct Controllability {
    std::vector<Cost> cc0;
    std::vector<Cost> cc1;

    // Cost of making literal `l` take value `v`: a complemented edge swaps
    // the referenced gate's costs.
    Cost of(Literal l, bool v) const {
        return (v != l.complemented()) ? cc1[l.gate()] : cc0[l.gate()];
    }
};

std::vector<std::uint32_t> compute_depths(const Circuit& c);
LevelMeasures compute_levels(const Circuit& c, AverageLevelMode mode = AverageLevelMode::SelfConsistent);

// Sizes of the transitive closures, excluding the gate itself.
std::uint32_t transitive_fanin_size(const Circuit& c, GateIndex g);
std::uint32_t transitive_fanout_size(const Circuit& c, GateIndex g);
// Every gate's closures; quadratic in the worst case.
FanoutMeasures compute_fanout_tfo_tfi(const Circuit& c);

Controllability compute_scoap_cc(const Circuit& c);
std::vector<Cost> compute_scoap_co(const Circuit& c, const Controllability& cc);
std::vector<double> compute_flow(const Circuit& c, FlowMode mode = FlowMode::FaninShare);

// Per-gate structural measures used by the gate-selection heuristics.
//
// Everything except the transitive closure sizes is computed up front in
// linear time. TFO/TFI sizes are computed on first request for a gate and
// cached; the cache is lock-free and idempotent, so a profile can be shared
// between threads. The profile refers to the circuit it was built from,
// which must outlive it.
class StructuralProfile {
public:
    std::size_t size() const { return depth_.size(); }

    std::uint32_t depth(GateIndex g) const { return depth_[g]; }
    std::uint32_t level(GateIndex g) const { return levels_.level[g]; }
    std::uint32_t llevel(GateIndex g) const { return levels_.llevel[g]; }
    double alevel(GateIndex g) const { return levels_.alevel[g]; }
    std::uint32_t fanout_size(GateIndex g) const { return fanout_size_[g]; }
    std::uint32_t tfo_size(GateIndex g) const;
    std::uint32_t tfi_size(GateIndex g) const;
    Cost cc0(GateIndex g) const { return cc_.cc0[g]; }
    Cost cc1(GateIndex g) const { return cc_.cc1[g]; }
    Cost cc(GateIndex g, bool value) const { return value ? cc_.cc1[g] : cc_.cc0[g]; }
    Cost co(GateIndex g) const { return co_[g]; }
    double flow(GateIndex g) const { return flow_[g]; }

    const MetricOptions& options() const { return options_; }

    // One row per gate: gate,depth,level,llevel,alevel,fo,tfo,tfi,cc0,cc1,co,flow
    std::string to_csv() const;

private:
    friend StructuralProfile build_profile(const Circuit&, MetricOptions);

    static constexpr std::uint32_t kUnknown = std::numeric_limits<std::uint32_t>::max();

    const Circuit* circuit_ = nullptr;
    MetricOptions options_;
    std::vector<std::uint32_t> depth_;
    LevelMeasures levels_;
    std::vector<std::uint32_t> fanout_size_;
    Controllability cc_;
    std::vector<Cost> co_;
    std::vector<double> flow_;
    std::unique_ptr<std::atomic<std::uint32_t>[]> tfo_cache_;
    std::unique_ptr<std::atomic<std::uint32_t>[]> tfi_cache_;
};

StructuralProfile build_profile(const Circuit& c, MetricOptions options = {});

// Shortest round-trip decimal form, used by every CSV writer.
std::string format_number(double x);

}  // namespace crsat
