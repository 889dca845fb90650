#include "entsearch/search.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entsearch/oracle.hpp"

namespace entsearch {

namespace {

constexpr int kAnalyticSearchCap = 20;
constexpr int kPptMinimalCap = 10;
constexpr int kDxdRouteCap = 6;

struct Range {
    std::uint64_t lo;
    std::uint64_t hi;
    int depth;
};

// One search run: verdict plumbing, trace accounting and the contradiction
// protocol for the estimated route.
class Runner {
public:
    Runner(const Formula& f, const SearchConfig& cfg) : f_(f), cfg_(cfg) {
        if (cfg.route == Route::spa_estimated && !cfg.estimator) {
            throw std::invalid_argument("estimated route requires an estimator config");
        }
        if (cfg.route != Route::spa_estimated && cfg.estimator) {
            throw std::invalid_argument("estimator config is only valid for the estimated route");
        }
        const int n = f.variable_count();
        switch (cfg.route) {
        case Route::analytic:
            if (n > kAnalyticSearchCap) {
                throw CapExceeded("analytic search capped at n=" +
                                  std::to_string(kAnalyticSearchCap));
            }
            break;
        case Route::ppt:
            if (cfg.mode == RegisterMode::minimal && n > kPptMinimalCap) {
                throw CapExceeded("ppt search capped at n=" + std::to_string(kPptMinimalCap) +
                                  " in minimal mode");
            }
            if (cfg.mode == RegisterMode::dxd && n > kDxdRouteCap) {
                throw CapExceeded("dxd-mode search capped at n=" +
                                  std::to_string(kDxdRouteCap));
            }
            break;
        case Route::spa_exact:
        case Route::spa_estimated:
            if (cfg.mode != RegisterMode::dxd) {
                throw std::invalid_argument("spa routes need the dxd register mode");
            }
            if (n > kDxdRouteCap) {
                throw CapExceeded("dxd-mode search capped at n=" +
                                  std::to_string(kDxdRouteCap));
            }
            spa_.emplace(SpaMap::make(PositiveMapSpec::transpose_map(1 << n)));
            break;
        }
    }

    SearchOutcome run() {
        SearchOutcome outcome;
        const std::uint64_t top = f_.space_size() - 1;

        const Verdict root = test(0, top, 0);
        if (root == Verdict::separable) {
            // A separable full range means no solution or all solutions;
            // one classical evaluation tells the cases apart.
            const Assignment representative(f_.variable_count(), 0);
            if (evaluate(f_, representative)) {
                outcome.solutions.push_back(representative);
                outcome.status = SearchStatus::all_solutions;
            } else {
                outcome.status = SearchStatus::none_exist;
            }
            outcome.trace = std::move(trace_);
            return outcome;
        }

        std::vector<Range> stack;
        stack.push_back({0, top, 0});
        bool exhausted = false;

        while (!stack.empty() && !exhausted) {
            if (cfg_.multi_solution && cfg_.max_solutions > 0 &&
                outcome.solutions.size() >= cfg_.max_solutions) {
                break;
            }
            const Range range = stack.back();
            stack.pop_back();

            if (range.lo == range.hi) {
                const Assignment candidate(f_.variable_count(), range.lo);
                if (evaluate(f_, candidate)) {
                    outcome.solutions.push_back(candidate);
                    if (!cfg_.multi_solution) {
                        break;
                    }
                } else if (resolve_contradiction(range, exhausted)) {
                    trace_.pruned_mass += 1;
                }
                continue;
            }

            const std::uint64_t mid = range.lo + (range.hi - range.lo) / 2;
            const int child_depth = range.depth + 1;
            const Verdict lower = test(range.lo, mid, child_depth);

            if (lower == Verdict::entangled) {
                if (cfg_.multi_solution) {
                    // An entangled lower half says nothing about the upper
                    // half, so it must be tested.
                    const Verdict upper = test(mid + 1, range.hi, child_depth);
                    if (upper == Verdict::entangled) {
                        stack.push_back({mid + 1, range.hi, child_depth});
                    } else {
                        trace_.pruned_mass += range.hi - mid;
                    }
                } else {
                    trace_.pruned_mass += range.hi - mid;
                }
                stack.push_back({range.lo, mid, child_depth});
                continue;
            }

            trace_.pruned_mass += mid - range.lo + 1;
            if (cfg_.infer_complement) {
                record_inferred(mid + 1, range.hi, child_depth);
                stack.push_back({mid + 1, range.hi, child_depth});
                continue;
            }
            const Verdict upper = test(mid + 1, range.hi, child_depth);
            if (upper == Verdict::entangled) {
                stack.push_back({mid + 1, range.hi, child_depth});
                continue;
            }
            // Entangled parent with two separable halves: contradiction.
            if (resolve_contradiction(range, exhausted)) {
                trace_.pruned_mass += range.hi - mid;
            }
        }

        if (exhausted) {
            outcome.status = SearchStatus::budget_exhausted;
        } else if (!outcome.solutions.empty()) {
            outcome.status = SearchStatus::found;
        } else if (cfg_.multi_solution) {
            outcome.status = SearchStatus::none_exist;
        } else {
            // The single-solution descent dropped complements it never
            // explored; with nothing found it cannot certify absence.
            outcome.status = SearchStatus::budget_exhausted;
        }
        outcome.trace = std::move(trace_);
        return outcome;
    }

private:
    Verdict test(std::uint64_t lo, std::uint64_t hi, int depth) {
        DetectionVerdict v;
        switch (cfg_.route) {
        case Route::analytic:
            v = analytic_test(f_, lo, hi, kAnalyticSearchCap);
            break;
        case Route::ppt: {
            const PureState psi = post_oracle_state(
                f_, lo, hi, RegisterLayout::make(f_.variable_count(), cfg_.mode));
            v = ppt_test(density_from_state(psi));
            break;
        }
        case Route::spa_exact: {
            const PureState psi =
                post_oracle_state(f_, lo, hi, RegisterLayout::dxd(f_.variable_count()));
            v = spa_test_exact(density_from_state(psi), *spa_);
            break;
        }
        case Route::spa_estimated: {
            const PureState psi =
                post_oracle_state(f_, lo, hi, RegisterLayout::dxd(f_.variable_count()));
            CopyEstimatorConfig call_cfg = *cfg_.estimator;
            // Successive detector calls advance the seed by the repetition
            // count, so repeats of an identical range draw fresh samples
            // while the run as a whole stays reproducible.
            call_cfg.seed = cfg_.estimator->seed +
                            trace_.detector_calls *
                                static_cast<std::uint64_t>(cfg_.estimator->repetitions);
            v = spa_test_estimated(density_from_state(psi), *spa_, call_cfg);
            break;
        }
        }
        trace_.detector_calls += 1;
        trace_.oracle_queries += 1;
        trace_.depth_reached = std::max(trace_.depth_reached, depth);
        trace_.events.push_back({depth, lo, hi, v.verdict, cfg_.route, v.copies, false});
        return v.verdict;
    }

    void record_inferred(std::uint64_t lo, std::uint64_t hi, int depth) {
        trace_.depth_reached = std::max(trace_.depth_reached, depth);
        trace_.events.push_back({depth, lo, hi, Verdict::entangled, cfg_.route, 0, true});
    }

    // Re-tests a range whose verdicts contradict each other, once. Returns
    // true when the re-test cleared the range as separable (the caller may
    // prune its mass). Sets `exhausted` on a persistent contradiction, and
    // in single-solution mode on any contradiction, because the dropped
    // complements make every later claim unverifiable.
    bool resolve_contradiction(const Range& range, bool& exhausted) {
        const auto key = std::make_pair(range.lo, range.hi);
        if (retested_.count(key) > 0) {
            exhausted = true;
            return false;
        }
        retested_.insert(key);
        const Verdict again = test(range.lo, range.hi, range.depth);
        if (again == Verdict::entangled) {
            exhausted = true;
            return false;
        }
        if (!cfg_.multi_solution) {
            exhausted = true;
        }
        return true;
    }

    const Formula& f_;
    const SearchConfig& cfg_;
    SearchTrace trace_;
    std::optional<SpaMap> spa_;
    std::set<std::pair<std::uint64_t, std::uint64_t>> retested_;
};

} // namespace

const char* to_string(SearchStatus s) {
    switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none_exist: return "none-exist";
    case SearchStatus::all_solutions: return "all-solutions";
    case SearchStatus::budget_exhausted: return "budget-exhausted";
    }
    return "unknown";
}

SearchOutcome search(const Formula& f, const SearchConfig& cfg) {
    Runner runner(f, cfg);
    return runner.run();
}

SearchOutcome classical_baseline(const Formula& f, int enumeration_cap) {
    if (f.variable_count() > enumeration_cap) {
        throw CapExceeded("classical_baseline: n=" + std::to_string(f.variable_count()) +
                          " exceeds cap " + std::to_string(enumeration_cap));
    }
    SearchOutcome outcome;
    const std::uint64_t total = f.space_size();
    for (std::uint64_t x = 0; x < total; ++x) {
        outcome.trace.oracle_queries += 1;
        if (evaluate(f, x)) {
            outcome.solutions.emplace_back(f.variable_count(), x);
            outcome.status = SearchStatus::found;
            return outcome;
        }
    }
    outcome.status = SearchStatus::none_exist;
    return outcome;
}

CostReport cost_model(const SearchTrace& trace, int n, int m, std::int64_t copies) {
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    const double copies_sq = static_cast<double>(copies) * static_cast<double>(copies);
    CostReport report;
    report.detector_calls = trace.detector_calls;
    report.oracle_queries = trace.oracle_queries;
    report.network_units = static_cast<double>(trace.detector_calls) * copies_sq * nn * nn;
    report.verification_units = static_cast<double>(trace.oracle_queries) * (nn + mm);
    report.asymptotic_search = copies_sq * nn * nn * nn;
    report.asymptotic_sat = copies_sq * nn * nn * nn * nn + copies_sq * nn * nn * nn * mm;
    return report;
}

} // namespace entsearch
