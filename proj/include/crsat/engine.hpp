#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crsat/assignment.hpp"
#include "crsat/circuit.hpp"
#include "crsat/metrics.hpp"
#include "crsat/rng.hpp"

namespace crsat {

enum class Measure { Random, Depth, Fanout, Tfo, Tfi, Controllability, Observability, Flow, Level, LowLevel, AverageLevel };

// A gate-selection heuristic: pick uniformly among the unjustified gates
// that maximize (or minimize) a structural measure.
struct Heuristic {
    Measure measure = Measure::Random;
    bool maximize = false;

    std::string name() const;
    friend bool operator==(const Heuristic&, const Heuristic&) = default;
};

// Accepts the catalog names: rand, depth-max, depth-min, fo-max, fo-min,
// tfo-max, tfo-min, tfi-max, tfi-min, cc-max, cc-min, co-max, co-min,
// flow-max, flow-min, level-max, level-min, llevel-min, alevel-min.
std::optional<Heuristic> parse_heuristic(std::string_view name);
std::span<const std::string_view> heuristic_catalog();

struct SolverConfig {
    double wp = 0.2;
    std::uint64_t cutoff = 1'000'000;
    std::uint64_t seed = 0;
    Heuristic heuristic{};
    // Re-check the unjust set and constraint pinning after every step.
    bool check_invariants = false;
};

enum class SolveStatus { Sat, Unknown };

struct SolveResult {
    SolveStatus status = SolveStatus::Unknown;
    std::optional<Assignment> witness;
    std::uint64_t steps_used = 0;
    double wall_time = 0.0;    // CPU seconds of the calling thread
    std::uint64_t work = 0;    // steps plus gates popped by forward propagation, trials included
    bool interrupted = false;  // stopped by the caller's stop predicate
};

struct SearchProgress {
    std::uint64_t steps;
    std::uint64_t work;
};

// Polled every few hundred steps; returning true ends the run as UNKNOWN.
using StopPredicate = std::function<bool(const SearchProgress&)>;

class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// One CRSat run over a constrained circuit. Holds the mutable search state;
// the circuit and profile are shared read-only.
class Searcher {
public:
    Searcher(const ConstrainedCircuit& cc, const StructuralProfile& profile, const SolverConfig& config);

    // Random initial extension from the configured seed (done by the
    // constructor; call again to restart).
    void reset();
    // Replaces the state, e.g. to set up a propagation test.
    void load(Assignment a);

    const Assignment& assignment() const { return assignment_; }
    std::uint64_t steps() const { return steps_; }
    std::uint64_t work() const { return work_; }
    Rng& rng() { return rng_; }

    // Limited forward propagation after the gates in `flipped` changed value.
    // Returns the number of additional gates flipped.
    std::size_t lbcp_forward(std::span<const GateIndex> flipped);

    // |unjust| after applying `j` (flip + propagation), state left unchanged.
    std::size_t count_unjust_after(const Justification& j);

    GateIndex select_gate();

    // One search step on the current state. Requires a nonempty unjust set.
    void step();

    SolveResult solve(const StopPredicate& stop = {});

    // Justifications the engine chooses from for <g, value(g)>: the
    // subset-minimal ones that leave pinned gates alone.
    std::vector<Justification> candidate_justifications(GateIndex g) const;

    void check_invariants() const;

private:
    void apply(const Justification& j, std::vector<GateIndex>* log);
    void flip_logged(GateIndex g, std::vector<GateIndex>* log);
    std::size_t propagate(std::span<const GateIndex> originals, std::vector<GateIndex>* log);
    template <typename Score>
    GateIndex select_extreme(Score score);

    const ConstrainedCircuit& cc_;
    const Circuit& c_;
    const StructuralProfile& profile_;
    SolverConfig config_;
    Rng rng_;
    Assignment assignment_;
    std::uint64_t steps_ = 0;
    std::uint64_t work_ = 0;

    // Propagation scratch.
    std::vector<std::uint32_t> heap_;  // topological positions
    std::vector<std::uint8_t> queued_;
    std::vector<std::uint8_t> original_;
    std::vector<GateIndex> touched_;
    std::vector<GateIndex> flip_set_;
    std::vector<GateIndex> undo_;
    std::vector<GateIndex> ties_;
};

// Runs CRSat from a random initial extension until the unjust set is empty
// (SAT) or `config.cutoff` steps were taken (UNKNOWN).
SolveResult crsat_solve(const ConstrainedCircuit& cc, const StructuralProfile& profile, const SolverConfig& config,
                        const StopPredicate& stop = {});

double thread_cpu_seconds();

}  // namespace crsat
