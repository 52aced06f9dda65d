#include "crsat/engine.hpp"

#include <time.h>

#include <algorithm>
#include <array>
#include <functional>

namespace crsat {

namespace {

constexpr std::array<std::string_view, 19> kCatalog = {
    "rand",     "depth-max", "depth-min", "fo-max",    "fo-min",    "tfo-max",   "tfo-min",
    "tfi-max",  "tfi-min",   "cc-max",    "cc-min",    "co-max",    "co-min",    "flow-max",
    "flow-min", "level-max", "level-min", "llevel-min", "alevel-min",
};

constexpr std::string_view measure_prefix(Measure m) {
    switch (m) {
        case Measure::Random: return "rand";
        case Measure::Depth: return "depth";
        case Measure::Fanout: return "fo";
        case Measure::Tfo: return "tfo";
        case Measure::Tfi: return "tfi";
        case Measure::Controllability: return "cc";
        case Measure::Observability: return "co";
        case Measure::Flow: return "flow";
        case Measure::Level: return "level";
        case Measure::LowLevel: return "llevel";
        case Measure::AverageLevel: return "alevel";
    }
    return "?";
}

constexpr std::uint32_t kPollInterval = 256;

}  // namespace

std::string Heuristic::name() const {
    if (measure == Measure::Random) return "rand";
    return std::string(measure_prefix(measure)) + (maximize ? "-max" : "-min");
}

std::span<const std::string_view> heuristic_catalog() { return kCatalog; }

std::optional<Heuristic> parse_heuristic(std::string_view name) {
    if (std::find(kCatalog.begin(), kCatalog.end(), name) == kCatalog.end()) return std::nullopt;
    if (name == "rand") return Heuristic{};
    auto dash = name.rfind('-');
    std::string_view prefix = name.substr(0, dash);
    bool maximize = name.substr(dash + 1) == "max";
    for (Measure m : {Measure::Depth, Measure::Fanout, Measure::Tfo, Measure::Tfi, Measure::Controllability,
                      Measure::Observability, Measure::Flow, Measure::Level, Measure::LowLevel, Measure::AverageLevel})
        if (measure_prefix(m) == prefix) return Heuristic{m, maximize};
    return std::nullopt;
}

double thread_cpu_seconds() {
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

Searcher::Searcher(const ConstrainedCircuit& cc, const StructuralProfile& profile, const SolverConfig& config)
    : cc_(cc),
      c_(cc.circuit()),
      profile_(profile),
      config_(config),
      rng_(config.seed),
      queued_(cc.size(), 0),
      original_(cc.size(), 0) {
    if (!(config.wp >= 0.0 && config.wp <= 1.0)) throw std::invalid_argument("wp must lie in [0, 1]");
    if (profile.size() != cc.size()) throw std::invalid_argument("profile does not belong to this circuit");
    reset();
}

void Searcher::reset() {
    rng_ = Rng(config_.seed);
    assignment_ = random_complete_extension(cc_, rng_);
    steps_ = 0;
    work_ = 0;
}

void Searcher::load(Assignment a) {
    if (a.size() != c_.size()) throw std::invalid_argument("assignment size does not match circuit");
    assignment_ = std::move(a);
    assignment_.recompute_unjust(c_);
}

void Searcher::flip_logged(GateIndex g, std::vector<GateIndex>* log) {
    assignment_.flip(c_, g);
    if (log) log->push_back(g);
}

std::size_t Searcher::propagate(std::span<const GateIndex> originals, std::vector<GateIndex>* log) {
    // Min-heap of topological positions; queued_ keeps out duplicates.
    auto push = [&](GateIndex g) {
        if (queued_[g]) return;
        queued_[g] = 1;
        touched_.push_back(g);
        heap_.push_back(c_.topo_position(g));
        std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
    };
    for (GateIndex g : originals) {
        original_[g] = 1;
        push(g);
    }
    std::size_t flips = 0;
    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
        GateIndex g = c_.topo_order()[heap_.back()];
        heap_.pop_back();
        ++work_;
        if (original_[g]) {
            for (GateIndex p : c_.fanout(g)) push(p);
        } else if (assignment_.unjust().contains(g) && !cc_.is_pinned(g)) {
            flip_logged(g, log);
            ++flips;
            for (GateIndex p : c_.fanout(g)) push(p);
        }
    }
    for (GateIndex g : touched_) queued_[g] = 0;
    touched_.clear();
    for (GateIndex g : originals) original_[g] = 0;
    return flips;
}

std::size_t Searcher::lbcp_forward(std::span<const GateIndex> flipped) { return propagate(flipped, nullptr); }

void Searcher::apply(const Justification& j, std::vector<GateIndex>* log) {
    flip_set_.clear();
    for (const Binding& b : j.bindings)
        if (assignment_.value(b.literal.gate()) != b.gate_value) flip_set_.push_back(b.literal.gate());
    for (GateIndex g : flip_set_) flip_logged(g, log);
    propagate(flip_set_, log);
}

std::size_t Searcher::count_unjust_after(const Justification& j) {
    undo_.clear();
    apply(j, &undo_);
    std::size_t count = assignment_.unjust().size();
    for (auto it = undo_.rbegin(); it != undo_.rend(); ++it) assignment_.flip(c_, *it);
    return count;
}

std::vector<Justification> Searcher::candidate_justifications(GateIndex g) const {
    auto all = enumerate_minimal_justifications(c_, g, assignment_.value(g), assignment_);
    std::erase_if(all, [&](const Justification& j) {
        return std::any_of(j.bindings.begin(), j.bindings.end(), [&](const Binding& b) {
            return cc_.is_pinned(b.literal.gate()) && cc_.pinned_value(b.literal.gate()) != b.gate_value;
        });
    });
    return all;
}

template <typename Score>
GateIndex Searcher::select_extreme(Score score) {
    const GateSet& unjust = assignment_.unjust();
    ties_.clear();
    auto best = score(unjust[0]);
    ties_.push_back(unjust[0]);
    for (std::size_t i = 1; i < unjust.size(); ++i) {
        GateIndex g = unjust[i];
        auto s = score(g);
        bool better = config_.heuristic.maximize ? s > best : s < best;
        if (better) {
            best = s;
            ties_.clear();
            ties_.push_back(g);
        } else if (s == best) {
            ties_.push_back(g);
        }
    }
    return ties_[rng_.below(ties_.size())];
}

GateIndex Searcher::select_gate() {
    const GateSet& unjust = assignment_.unjust();
    if (unjust.empty()) throw std::logic_error("select_gate: no unjustified gate");
    const StructuralProfile& p = profile_;
    switch (config_.heuristic.measure) {
        case Measure::Random: return unjust[rng_.below(unjust.size())];
        case Measure::Depth: return select_extreme([&](GateIndex g) { return p.depth(g); });
        case Measure::Fanout: return select_extreme([&](GateIndex g) { return p.fanout_size(g); });
        case Measure::Tfo: return select_extreme([&](GateIndex g) { return p.tfo_size(g); });
        case Measure::Tfi: return select_extreme([&](GateIndex g) { return p.tfi_size(g); });
        case Measure::Controllability:
            return select_extreme([&](GateIndex g) { return p.cc(g, assignment_.value(g)); });
        case Measure::Observability: return select_extreme([&](GateIndex g) { return p.co(g); });
        case Measure::Flow: return select_extreme([&](GateIndex g) { return p.flow(g); });
        case Measure::Level: return select_extreme([&](GateIndex g) { return p.level(g); });
        case Measure::LowLevel: return select_extreme([&](GateIndex g) { return p.llevel(g); });
        case Measure::AverageLevel: return select_extreme([&](GateIndex g) { return p.alevel(g); });
    }
    return unjust[0];
}

void Searcher::step() {
    GateIndex g = select_gate();
    auto sigma = candidate_justifications(g);
    ++steps_;
    ++work_;  // the step itself, so that work grows even when nothing propagates
    if (sigma.empty()) {
        // Only reachable through the constant gate or And(x, ~x): no child
        // values can support g's current value. Flip g back to consistency.
        if (!cc_.is_pinned(g)) {
            assignment_.flip(c_, g);
            GateIndex origin[] = {g};
            propagate(origin, nullptr);
        }
        return;
    }
    std::size_t chosen = 0;
    if (sigma.size() > 1) {
        if (rng_.chance(config_.wp)) {
            chosen = rng_.below(sigma.size());
        } else {
            std::vector<std::size_t> counts(sigma.size());
            for (std::size_t i = 0; i < sigma.size(); ++i) counts[i] = count_unjust_after(sigma[i]);
            std::size_t best = *std::min_element(counts.begin(), counts.end());
            ties_.clear();
            for (std::size_t i = 0; i < sigma.size(); ++i)
                if (counts[i] == best) ties_.push_back(static_cast<GateIndex>(i));
            chosen = ties_[rng_.below(ties_.size())];
        }
    }
    apply(sigma[chosen], nullptr);
}

void Searcher::check_invariants() const {
    Assignment fresh = assignment_;
    fresh.recompute_unjust(c_);
    const GateSet& live = assignment_.unjust();
    if (fresh.unjust().size() != live.size())
        throw InvariantViolation("incremental unjust set has the wrong size");
    for (GateIndex g : fresh.unjust())
        if (!live.contains(g)) throw InvariantViolation("gate g" + std::to_string(g) + " missing from unjust set");
    for (GateIndex g : cc_.constrained_gates())
        if (assignment_.value(g) != cc_.required_value(g))
            throw InvariantViolation("constrained gate g" + std::to_string(g) + " lost its value");
    if (auto k = c_.constant_gate(); k && !assignment_.value(*k)) throw InvariantViolation("constant gate flipped");
}

SolveResult Searcher::solve(const StopPredicate& stop) {
    const double start = thread_cpu_seconds();
    SolveResult result;
    while (steps_ < config_.cutoff) {
        if (assignment_.unjust().empty()) {
            if (!verify_satisfying(cc_, assignment_))
                throw InvariantViolation("empty unjust set but assignment does not satisfy the circuit");
            result.status = SolveStatus::Sat;
            result.witness = assignment_;
            break;
        }
        if (stop && steps_ % kPollInterval == 0 && stop(SearchProgress{steps_, work_})) {
            result.interrupted = true;
            break;
        }
        step();
        if (config_.check_invariants) check_invariants();
#ifndef NDEBUG
        else if ((steps_ & ((1u << 14) - 1)) == 0)
            check_invariants();
#endif
    }
    result.steps_used = steps_;
    result.work = work_;
    result.wall_time = thread_cpu_seconds() - start;
    return result;
}

SolveResult crsat_solve(const ConstrainedCircuit& cc, const StructuralProfile& profile, const SolverConfig& config,
                        const StopPredicate& stop) {
    Searcher s(cc, profile, config);
    return s.solve(stop);
}

}  // namespace crsat
