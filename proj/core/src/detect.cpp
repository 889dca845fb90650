#include "entsearch/detect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "entsearch/rng.hpp"

namespace entsearch {

namespace {

Eigen::MatrixXcd unit_matrix(int d, int i, int j) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(d, d);
    e(i, j) = Complex{1.0, 0.0};
    return e;
}

// I_d ⊗ Λ applied blockwise to a d² x d² matrix.
Eigen::MatrixXcd apply_induced(const PositiveMapSpec& map, const Eigen::MatrixXcd& m) {
    const int d = map.d();
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            out.block(i * d, j * d, d, d) = map.apply(m.block(i * d, j * d, d, d));
        }
    }
    return out;
}

} // namespace

PositiveMapSpec PositiveMapSpec::transpose_map(int d) {
    if (d < 2) {
        throw std::invalid_argument("map dimension must be at least 2");
    }
    return PositiveMapSpec(MapKind::transpose, d, Eigen::MatrixXcd());
}

PositiveMapSpec PositiveMapSpec::custom(int d, Eigen::MatrixXcd superoperator) {
    if (d < 2) {
        throw std::invalid_argument("map dimension must be at least 2");
    }
    if (d > kChoiDimCap) {
        throw CapExceeded("custom maps are capped at local dimension " +
                          std::to_string(kChoiDimCap));
    }
    if (superoperator.rows() != d * d || superoperator.cols() != d * d) {
        throw std::invalid_argument("superoperator must be d² x d²");
    }
    PositiveMapSpec spec(MapKind::custom, d, std::move(superoperator));

    // Necessary-condition screen: positivity and trace preservation on a
    // sample of pure states. Not a proof of positivity.
    RandomStream rs(0x9e3779b97f4a7c15ull);
    for (int trial = 0; trial < 64; ++trial) {
        Eigen::VectorXcd v(d);
        for (int i = 0; i < d; ++i) {
            v(i) = Complex{2.0 * rs.next_double() - 1.0, 2.0 * rs.next_double() - 1.0};
        }
        v.normalize();
        const Eigen::MatrixXcd x = v * v.adjoint();
        const Eigen::MatrixXcd y = spec.apply(x);
        if ((y - y.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
            throw std::invalid_argument("map is not Hermiticity preserving");
        }
        if (std::abs(y.trace() - x.trace()) > 1e-9) {
            throw std::invalid_argument("map is not trace preserving");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(y, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -kEigenvalueTol) {
            throw std::invalid_argument("map is not positive on a sampled pure state");
        }
    }
    return spec;
}

Eigen::MatrixXcd PositiveMapSpec::apply(const Eigen::MatrixXcd& x) const {
    if (x.rows() != d_ || x.cols() != d_) {
        throw std::invalid_argument("map input must be d x d");
    }
    if (kind_ == MapKind::transpose) {
        return x.transpose();
    }
    const Eigen::Map<const Eigen::VectorXcd> vec_x(x.data(), d_ * d_);
    const Eigen::VectorXcd vec_y = superop_ * vec_x;
    return Eigen::Map<const Eigen::MatrixXcd>(vec_y.data(), d_, d_);
}

DensityOp choi_state(const PositiveMapSpec& map) {
    const int d = map.d();
    if (d > kChoiDimCap) {
        throw CapExceeded("choi_state is capped at local dimension " +
                          std::to_string(kChoiDimCap));
    }
    const int d2 = d * d;
    const std::int64_t dim = static_cast<std::int64_t>(d2) * d2;
    const double scale = 1.0 / static_cast<double>(d2);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i2 = 0; i2 < d; ++i2) {
        for (int j2 = 0; j2 < d; ++j2) {
            const Eigen::MatrixXcd mapped = map.apply(unit_matrix(d, i2, j2)) * scale;
            for (int i1 = 0; i1 < d; ++i1) {
                for (int j1 = 0; j1 < d; ++j1) {
                    const std::int64_t i = i1 * d + i2;
                    const std::int64_t j = j1 * d + j2;
                    c.block(i * d2 + i1 * d, j * d2 + j1 * d, d, d) = mapped;
                }
            }
        }
    }
    return DensityOp::make_indefinite(d2, d2, std::move(c));
}

SpaMap SpaMap::make(PositiveMapSpec base) {
    const int d = base.d();
    double lambda = 0.0;
    if (d <= kChoiDimCap) {
        lambda = choi_state(base).min_eigenvalue();
    } else {
        // Beyond the dense cap only the transpose map remains available;
        // its Choi state is the swap operator scaled by 1/d, with spectrum
        // ±1/d.
        lambda = -1.0 / static_cast<double>(d);
    }
    if (lambda >= -kEigenvalueTol) {
        throw std::invalid_argument(
            "map is completely positive; a physical approximation adds nothing");
    }
    const double d4 = static_cast<double>(d) * d * d * d;
    // Mixing with the depolarizing map shifts every Choi eigenvalue toward
    // 1/d⁴ without rotating eigenvectors, so the bisection can evaluate the
    // exact minimum eigenvalue of the mixture as a scalar.
    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < 50; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double min_eig = (1.0 - mid) * lambda + mid / d4;
        (min_eig >= 0.0 ? hi : lo) = mid;
    }
    const double p_star = hi;
    const double d2 = static_cast<double>(d) * d;
    const double threshold = d2 * lambda / (d4 * lambda + 1.0);
    const double cut = p_star / d2;
    return SpaMap(std::move(base), p_star, lambda, threshold, cut);
}

Eigen::MatrixXcd SpaMap::apply(const DensityOp& rho) const {
    const int d = base_.d();
    if (rho.dim_a() != d || rho.dim_b() != d) {
        throw std::invalid_argument("state dimensions do not match the map's d ⊗ d space");
    }
    const std::int64_t d2 = static_cast<std::int64_t>(d) * d;
    return (1.0 - p_star_) * apply_induced(base_, rho.matrix()) +
           (p_star_ / static_cast<double>(d2)) * Eigen::MatrixXcd::Identity(d2, d2);
}

const char* to_string(Verdict v) {
    return v == Verdict::separable ? "separable" : "entangled";
}

const char* to_string(Route r) {
    switch (r) {
    case Route::analytic: return "analytic";
    case Route::ppt: return "ppt";
    case Route::spa_exact: return "spa-exact";
    case Route::spa_estimated: return "spa-estimated";
    }
    return "unknown";
}

DensityOp partial_transpose_b(const DensityOp& rho) {
    const std::int64_t da = rho.dim_a();
    const std::int64_t db = rho.dim_b();
    Eigen::MatrixXcd out(rho.dim(), rho.dim());
    for (std::int64_t i = 0; i < da; ++i) {
        for (std::int64_t j = 0; j < da; ++j) {
            out.block(i * db, j * db, db, db) =
                rho.matrix().block(i * db, j * db, db, db).transpose();
        }
    }
    return DensityOp::make_indefinite(da, db, std::move(out));
}

DetectionVerdict ppt_test(const DensityOp& rho) {
    if (rho.dim_a() < 2 || rho.dim_b() < 2) {
        throw std::invalid_argument("ppt_test requires a bipartite state");
    }
    const double min_eig = partial_transpose_b(rho).min_eigenvalue();
    DetectionVerdict v;
    v.route = Route::ppt;
    v.statistic = min_eig;
    v.threshold = 0.0;
    v.verdict = min_eig < -kEigenvalueTol ? Verdict::entangled : Verdict::separable;
    return v;
}

DetectionVerdict spa_test_exact(const DensityOp& rho, const SpaMap& spa) {
    const Eigen::MatrixXcd out = spa.apply(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(out, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    DetectionVerdict v;
    v.route = Route::spa_exact;
    v.statistic = min_eig;
    v.threshold = spa.separability_cut();
    v.verdict = min_eig >= spa.separability_cut() - kEigenvalueTol ? Verdict::separable
                                                                   : Verdict::entangled;
    return v;
}

double estimate_min_eigenvalue(const DensityOp& rho_prime, const CopyEstimatorConfig& cfg) {
    if (cfg.copies < 1) {
        throw std::invalid_argument("estimator needs at least one copy");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_prime.matrix(),
                                                           Eigen::EigenvaluesOnly);
    const Eigen::VectorXd eigs = solver.eigenvalues();
    std::vector<double> weights(static_cast<std::size_t>(eigs.size()));
    double total = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        weights[static_cast<std::size_t>(i)] = std::max(eigs(i), 0.0);
        total += weights[static_cast<std::size_t>(i)];
    }
    for (double& w : weights) {
        w /= total;
    }
    RandomStream rs(cfg.seed);
    std::vector<std::int64_t> counts(weights.size(), 0);
    for (std::int64_t draw = 0; draw < cfg.copies; ++draw) {
        ++counts[rs.next_category(weights)];
    }
    std::int64_t min_count = counts[0];
    for (std::int64_t c : counts) {
        min_count = std::min(min_count, c);
    }
    return static_cast<double>(min_count) / static_cast<double>(cfg.copies);
}

DetectionVerdict spa_test_estimated(const DensityOp& rho, const SpaMap& spa,
                                    const CopyEstimatorConfig& cfg) {
    if (cfg.repetitions < 1 || cfg.repetitions % 2 == 0) {
        throw std::invalid_argument("repetition count must be odd and positive");
    }
    const Eigen::MatrixXcd out = spa.apply(rho);
    // Eigensolver noise can leave the exactly-applied output marginally
    // indefinite; the estimator clamps when sampling.
    const DensityOp out_op =
        DensityOp::make_indefinite(rho.dim_a(), rho.dim_b(), out);
    std::vector<double> estimates;
    estimates.reserve(static_cast<std::size_t>(cfg.repetitions));
    int separable_votes = 0;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
        CopyEstimatorConfig rep_cfg;
        rep_cfg.copies = cfg.copies;
        rep_cfg.seed = cfg.seed + static_cast<std::uint64_t>(rep);
        rep_cfg.repetitions = 1;
        const double est = estimate_min_eigenvalue(out_op, rep_cfg);
        estimates.push_back(est);
        if (est >= spa.separability_cut() - kEigenvalueTol) {
            ++separable_votes;
        }
    }
    std::sort(estimates.begin(), estimates.end());
    DetectionVerdict v;
    v.route = Route::spa_estimated;
    v.statistic = estimates[estimates.size() / 2];
    v.threshold = spa.separability_cut();
    v.copies = cfg.copies * cfg.repetitions;
    v.verdict = 2 * separable_votes > cfg.repetitions ? Verdict::separable
                                                      : Verdict::entangled;
    return v;
}

DetectionVerdict analytic_test(const Formula& f, std::uint64_t lo, std::uint64_t hi,
                               int enumeration_cap) {
    if (f.variable_count() > enumeration_cap) {
        throw CapExceeded("analytic_test: n=" + std::to_string(f.variable_count()) +
                          " exceeds cap " + std::to_string(enumeration_cap));
    }
    const RangeStats stats = count_solutions(f, lo, hi);
    const bool full_range = lo == 0 && hi == f.space_size() - 1;
    const bool separable =
        stats.solution_count == 0 ||
        (full_range && stats.solution_count == f.space_size());
    DetectionVerdict v;
    v.route = Route::analytic;
    v.statistic = static_cast<double>(stats.solution_count);
    v.threshold = 0.0;
    v.verdict = separable ? Verdict::separable : Verdict::entangled;
    return v;
}

} // namespace entsearch
