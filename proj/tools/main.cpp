#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "entsearch/copies.hpp"
#include "entsearch/detect.hpp"
#include "entsearch/formula.hpp"
#include "entsearch/oracle.hpp"
#include "entsearch/qsim.hpp"
#include "entsearch/search.hpp"
#include "entsearch/serialize.hpp"
#include "entsearch/version.hpp"

namespace {

using entsearch::Route;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitBudget = 4;
constexpr int kExitIo = 5;

struct Options {
    std::string expr;
    std::string cnf;
    std::string state_file;
    std::string route = "analytic";
    std::string mode = "minimal";
    std::int64_t copies = 16384;
    int reps = 5;
    std::uint64_t seed = 0;
    bool all = false;
    std::uint64_t max_solutions = 0;
    bool no_infer = false;
    std::string out;
    std::string csv;
    std::string trace_csv;
    bool canonical = false;

    // detect
    std::optional<std::uint64_t> lo;
    std::optional<std::uint64_t> hi;

    // copies
    std::vector<std::uint64_t> l_values;
    double target = 0.5;
    bool check_ratio = false;

    // grid
    std::uint64_t l_min = 2;
    std::uint64_t l_max = std::uint64_t{1} << 30;
    std::uint64_t n_min = 2;
    std::uint64_t n_max = std::uint64_t{1} << 30;
    int points = 64;
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}

    std::int64_t elapsed_ms() const {
        const auto now = std::chrono::steady_clock::now();
        return std::chrono::duration_cast<std::chrono::milliseconds>(now - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

Route parse_route(const std::string& name) {
    if (name == "analytic") return Route::analytic;
    if (name == "ppt") return Route::ppt;
    if (name == "spa") return Route::spa_exact;
    if (name == "spa-est") return Route::spa_estimated;
    throw CLI::ValidationError("--route", "unknown route " + name);
}

entsearch::RegisterMode parse_mode(const std::string& name) {
    if (name == "minimal") return entsearch::RegisterMode::minimal;
    if (name == "dxd") return entsearch::RegisterMode::dxd;
    throw CLI::ValidationError("--mode", "unknown mode " + name);
}

entsearch::Formula load_formula(const Options& opt) {
    if (!opt.expr.empty() && !opt.cnf.empty()) {
        throw CLI::ValidationError("--expr/--cnf", "give exactly one formula source");
    }
    if (!opt.expr.empty()) {
        return entsearch::parse_expr(opt.expr);
    }
    if (!opt.cnf.empty()) {
        return entsearch::parse_dimacs(entsearch::read_file(opt.cnf));
    }
    throw CLI::ValidationError("--expr/--cnf", "a formula source is required");
}

json config_echo(const std::string& command, const Options& opt) {
    json config = {{"command", command},
                   {"route", opt.route},
                   {"mode", opt.mode},
                   {"seed", opt.seed}};
    if (!opt.expr.empty()) config["expr"] = opt.expr;
    if (!opt.cnf.empty()) config["cnf"] = opt.cnf;
    if (!opt.state_file.empty()) config["state"] = opt.state_file;
    if (opt.route == "spa-est") {
        config["copies"] = opt.copies;
        config["reps"] = opt.reps;
    }
    return config;
}

void emit(const Options& opt, json envelope, const Timer& timer) {
    envelope["version"] = entsearch::kVersion;
    envelope["seed"] = opt.seed;
    if (!opt.canonical) {
        envelope["wall_ms"] = timer.elapsed_ms();
    }
    const std::string text = envelope.dump(2) + "\n";
    if (!opt.out.empty()) {
        entsearch::write_file_atomic(opt.out, text);
    } else {
        std::cout << text;
    }
}

entsearch::SearchConfig search_config(const Options& opt) {
    entsearch::SearchConfig cfg;
    cfg.route = parse_route(opt.route);
    cfg.mode = parse_mode(opt.mode);
    cfg.infer_complement = !opt.no_infer;
    cfg.multi_solution = opt.all;
    cfg.max_solutions = static_cast<std::size_t>(opt.max_solutions);
    if (cfg.route == Route::spa_estimated) {
        entsearch::CopyEstimatorConfig est;
        est.copies = opt.copies;
        est.seed = opt.seed;
        est.repetitions = opt.reps;
        cfg.estimator = est;
    }
    return cfg;
}

int cmd_solve(const Options& opt) {
    const Timer timer;
    const entsearch::Formula f = load_formula(opt);
    const entsearch::SearchOutcome outcome = entsearch::search(f, search_config(opt));
    if (!opt.trace_csv.empty()) {
        entsearch::write_file_atomic(opt.trace_csv, entsearch::trace_to_csv(outcome.trace));
    }
    json envelope = {{"config", config_echo("solve", opt)},
                     {"result", json::parse(entsearch::outcome_to_json(
                                    outcome, f.variable_count()))}};
    emit(opt, std::move(envelope), timer);
    return outcome.status == entsearch::SearchStatus::budget_exhausted ? kExitBudget : 0;
}

int cmd_detect(const Options& opt) {
    const Timer timer;
    const Route route = parse_route(opt.route);
    entsearch::DetectionVerdict verdict;

    if (!opt.state_file.empty()) {
        if (route == Route::analytic) {
            throw CLI::ValidationError("--route", "analytic detection needs a formula");
        }
        const entsearch::DensityOp rho =
            entsearch::density_from_json(entsearch::read_file(opt.state_file));
        if (route == Route::ppt) {
            verdict = entsearch::ppt_test(rho);
        } else {
            if (rho.dim_a() != rho.dim_b()) {
                throw CLI::ValidationError("--state", "spa routes need a d ⊗ d state");
            }
            const entsearch::SpaMap spa = entsearch::SpaMap::make(
                entsearch::PositiveMapSpec::transpose_map(static_cast<int>(rho.dim_a())));
            if (route == Route::spa_exact) {
                verdict = entsearch::spa_test_exact(rho, spa);
            } else {
                entsearch::CopyEstimatorConfig est;
                est.copies = opt.copies;
                est.seed = opt.seed;
                est.repetitions = opt.reps;
                verdict = entsearch::spa_test_estimated(rho, spa, est);
            }
        }
    } else {
        const entsearch::Formula f = load_formula(opt);
        const std::uint64_t lo = opt.lo.value_or(0);
        const std::uint64_t hi = opt.hi.value_or(f.space_size() - 1);
        if (route == Route::analytic) {
            verdict = entsearch::analytic_test(f, lo, hi);
        } else {
            const entsearch::RegisterMode mode = parse_mode(opt.mode);
            if (route != Route::ppt && mode != entsearch::RegisterMode::dxd) {
                throw CLI::ValidationError("--mode", "spa routes need the dxd register mode");
            }
            const entsearch::PureState psi = entsearch::post_oracle_state(
                f, lo, hi, entsearch::RegisterLayout::make(f.variable_count(), mode));
            const entsearch::DensityOp rho = entsearch::density_from_state(psi);
            if (route == Route::ppt) {
                verdict = entsearch::ppt_test(rho);
            } else {
                const entsearch::SpaMap spa = entsearch::SpaMap::make(
                    entsearch::PositiveMapSpec::transpose_map(
                        static_cast<int>(rho.dim_a())));
                if (route == Route::spa_exact) {
                    verdict = entsearch::spa_test_exact(rho, spa);
                } else {
                    entsearch::CopyEstimatorConfig est;
                    est.copies = opt.copies;
                    est.seed = opt.seed;
                    est.repetitions = opt.reps;
                    verdict = entsearch::spa_test_estimated(rho, spa, est);
                }
            }
        }
    }

    json config = config_echo("detect", opt);
    if (opt.lo) config["lo"] = *opt.lo;
    if (opt.hi) config["hi"] = *opt.hi;
    json envelope = {{"config", std::move(config)},
                     {"result", json::parse(entsearch::verdict_to_json(verdict))}};
    emit(opt, std::move(envelope), timer);
    return 0;
}

int cmd_copies(const Options& opt) {
    const Timer timer;
    std::vector<std::uint64_t> ls = opt.l_values;
    if (ls.empty()) {
        for (int e = 10; e <= 18; e += 2) {
            ls.push_back(std::uint64_t{1} << e);
        }
    }
    json table = json::array();
    for (const std::uint64_t l : ls) {
        const std::int64_t required = entsearch::copies_required(l, opt.target);
        json row = {{"L", l},
                    {"delta", entsearch::delta_analytic(l)},
                    {"copies_required", required}};
        if (opt.check_ratio) {
            row["ratio"] = static_cast<double>(required) / static_cast<double>(l);
        }
        table.push_back(std::move(row));
    }
    if (!opt.csv.empty()) {
        entsearch::write_file_atomic(opt.csv, entsearch::grid_to_csv(entsearch::figure2_grid()));
    }
    json config = config_echo("copies", opt);
    config["c"] = opt.target;
    json envelope = {{"config", std::move(config)}, {"result", std::move(table)}};
    emit(opt, std::move(envelope), timer);
    return 0;
}

int cmd_grid(const Options& opt) {
    const Timer timer;
    const auto grid =
        entsearch::figure2_grid(opt.l_min, opt.l_max, opt.n_min, opt.n_max, opt.points);
    const std::string csv = entsearch::grid_to_csv(grid);
    if (!opt.csv.empty()) {
        entsearch::write_file_atomic(opt.csv, csv);
    } else {
        std::cout << csv;
    }
    if (!opt.out.empty() || !opt.csv.empty()) {
        json config = config_echo("grid", opt);
        config["points"] = opt.points;
        json envelope = {{"config", std::move(config)},
                         {"result", {{"rows", grid.size()}, {"csv", opt.csv}}}};
        if (!opt.out.empty()) {
            emit(opt, std::move(envelope), timer);
        }
    }
    return 0;
}

int cmd_bench(const Options& opt) {
    const Timer timer;
    const entsearch::Formula f = load_formula(opt);
    const entsearch::SearchOutcome outcome = entsearch::search(f, search_config(opt));
    const entsearch::SearchOutcome baseline = entsearch::classical_baseline(f);
    const entsearch::CostReport cost = entsearch::cost_model(
        outcome.trace, f.variable_count(), f.connective_count(), opt.copies);
    json envelope = {
        {"config", config_echo("bench", opt)},
        {"result",
         {{"search", json::parse(entsearch::outcome_to_json(outcome, f.variable_count()))},
          {"baseline_queries", baseline.trace.oracle_queries},
          {"baseline_status", entsearch::to_string(baseline.status)},
          {"cost", json::parse(entsearch::cost_report_to_json(cost))}}}};
    emit(opt, std::move(envelope), timer);
    return outcome.status == entsearch::SearchStatus::budget_exhausted ? kExitBudget : 0;
}

void add_formula_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--expr", opt.expr, "inline expression, e.g. \"(x1 & x2) | x3\"");
    cmd->add_option("--cnf", opt.cnf, "path to a DIMACS CNF file");
}

void add_detector_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--route", opt.route, "detector: analytic|ppt|spa|spa-est")
        ->capture_default_str();
    cmd->add_option("--mode", opt.mode, "register layout: minimal|dxd")
        ->capture_default_str();
    cmd->add_option("--copies", opt.copies, "estimator copies N per repetition")
        ->capture_default_str();
    cmd->add_option("--reps", opt.reps, "estimator majority-vote repetitions (odd)")
        ->capture_default_str();
    cmd->add_option("--seed", opt.seed, "RNG seed, recorded in outputs")
        ->capture_default_str();
}

void add_output_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--out", opt.out, "write the JSON result to this path (atomic)");
    cmd->add_flag("--canonical", opt.canonical,
                  "omit wall-clock timing so outputs are byte-comparable");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement-guided SAT search toolkit"};
    app.set_version_flag("--version", entsearch::kVersion);
    app.require_subcommand(1);

    Options opt;

    CLI::App* solve = app.add_subcommand("solve", "branch-and-bound search for solutions");
    add_formula_flags(solve, opt);
    add_detector_flags(solve, opt);
    add_output_flags(solve, opt);
    solve->add_flag("--all", opt.all, "enumerate all solutions");
    solve->add_option("--max-solutions", opt.max_solutions,
                      "stop after this many solutions (0: no limit)");
    solve->add_flag("--no-infer", opt.no_infer,
                    "test complements instead of inferring them entangled");
    solve->add_option("--trace-csv", opt.trace_csv, "write the trace event list as CSV");

    CLI::App* detect = app.add_subcommand("detect", "separability of one state or range");
    add_formula_flags(detect, opt);
    add_detector_flags(detect, opt);
    add_output_flags(detect, opt);
    detect->add_option("--state", opt.state_file, "path to a density-operator JSON file");
    detect->add_option("--lo", opt.lo, "range lower bound (default 0)");
    detect->add_option("--hi", opt.hi, "range upper bound (default 2^n - 1)");

    CLI::App* copies = app.add_subcommand("copies", "copies required for distinguishability");
    copies->add_option("--L", opt.l_values, "search-space dimensions (repeatable)");
    copies->add_option("--c", opt.target, "target overlap")->capture_default_str();
    copies->add_flag("--check-ratio", opt.check_ratio, "include the copies/L ratio column");
    copies->add_option("--csv", opt.csv, "also write the default overlap grid as CSV");
    copies->add_option("--seed", opt.seed, "RNG seed, recorded in outputs")
        ->capture_default_str();
    add_output_flags(copies, opt);

    CLI::App* grid = app.add_subcommand("grid", "overlap decay surface as CSV");
    grid->add_option("--l-min", opt.l_min, "smallest L")->capture_default_str();
    grid->add_option("--l-max", opt.l_max, "largest L")->capture_default_str();
    grid->add_option("--n-min", opt.n_min, "smallest N")->capture_default_str();
    grid->add_option("--n-max", opt.n_max, "largest N")->capture_default_str();
    grid->add_option("--points", opt.points, "points per axis")->capture_default_str();
    grid->add_option("--csv", opt.csv, "write the grid to this path (atomic)");
    grid->add_option("--seed", opt.seed, "RNG seed, recorded in outputs")
        ->capture_default_str();
    add_output_flags(grid, opt);

    CLI::App* bench = app.add_subcommand("bench", "search vs. exhaustive scan with cost model");
    add_formula_flags(bench, opt);
    add_detector_flags(bench, opt);
    add_output_flags(bench, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(opt);
        if (detect->parsed()) return cmd_detect(opt);
        if (copies->parsed()) return cmd_copies(opt);
        if (grid->parsed()) return cmd_grid(opt);
        if (bench->parsed()) return cmd_bench(opt);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const entsearch::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const entsearch::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
}
