#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "entsearch/detect.hpp"
#include "entsearch/formula.hpp"
#include "entsearch/qsim.hpp"

namespace entsearch {

// Branch-and-bound search over assignment ranges. Each range is tested for
// entanglement of its post-oracle state; separable ranges are pruned, the
// split policy is lower-half-first. With infer_complement on, an entangled
// parent whose lower half is separable has its upper half declared
// entangled without a detector call (sound for sub-ranges, where separable
// means zero solutions).
struct SearchConfig {
    Route route = Route::analytic;
    RegisterMode mode = RegisterMode::minimal;
    bool infer_complement = true;
    bool multi_solution = false;
    std::size_t max_solutions = 0;  // 0: no limit
    std::optional<CopyEstimatorConfig> estimator;  // required iff spa_estimated
};

struct SearchEvent {
    int depth = 0;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    Verdict verdict = Verdict::separable;
    Route route = Route::analytic;
    std::int64_t copies = 0;
    bool inferred = false;  // complement inference; no detector call made
};

// oracle_queries counts one oracle pass per detector invocation: the
// analytic stand-in is charged the query the quantum pipeline would make.
// Inferred events are charged neither a query nor a detector call.
// pruned_mass accumulates the widths of all ranges removed from
// consideration, both separable halves and unexplored complements.
struct SearchTrace {
    std::vector<SearchEvent> events;
    std::uint64_t oracle_queries = 0;
    std::uint64_t detector_calls = 0;
    std::uint64_t pruned_mass = 0;
    int depth_reached = 0;
};

enum class SearchStatus { found, none_exist, all_solutions, budget_exhausted };

const char* to_string(SearchStatus s);

struct SearchOutcome {
    std::vector<Assignment> solutions;  // each classically re-verified
    SearchStatus status = SearchStatus::none_exist;
    SearchTrace trace;
};

// Caps: analytic n <= 20; ppt n <= 10 minimal, n <= 6 dxd; spa routes
// require dxd mode and n <= 6. The estimated route re-tests a range once
// when its verdicts contradict (entangled parent, separable halves, or a
// width-1 entangled range that fails verification); a persistent
// contradiction yields budget_exhausted.
SearchOutcome search(const Formula& f, const SearchConfig& cfg);

// Ascending exhaustive scan, stopping at the first solution;
// oracle_queries counts evaluations performed.
SearchOutcome classical_baseline(const Formula& f,
                                 int enumeration_cap = kDefaultEnumerationCap);

// Side-by-side of counted work and the modeled asymptotic formulas
// evaluated at the instance parameters. Detector calls are charged the
// modeled per-call network cost N²n²; each oracle query also pays the n+m
// classical verification cost.
struct CostReport {
    std::uint64_t detector_calls = 0;
    std::uint64_t oracle_queries = 0;
    double network_units = 0.0;        // detector_calls * N² * n²
    double verification_units = 0.0;   // oracle_queries * (n + m)
    double asymptotic_search = 0.0;    // N² * n³
    double asymptotic_sat = 0.0;       // N² * n⁴ + N² * n³ * m
};

CostReport cost_model(const SearchTrace& trace, int n, int m, std::int64_t copies);

} // namespace entsearch
