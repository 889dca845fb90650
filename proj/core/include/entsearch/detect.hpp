#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "entsearch/formula.hpp"
#include "entsearch/qsim.hpp"

namespace entsearch {

// Dense Choi-state construction is capped at this local dimension
// (d^4 = 4096 matrix side). The transpose map has a closed-form spectrum
// and stays available beyond the cap.
inline constexpr int kChoiDimCap = 8;

enum class MapKind { transpose, custom };

// A positive map Λ on d x d matrices. Custom maps are supplied as a
// d² x d² superoperator S acting on column-major vectorizations,
// vec(Λ(X)) = S vec(X). Positivity is checked on a sample of pure states
// (a necessary condition, not a proof).
class PositiveMapSpec {
public:
    static PositiveMapSpec transpose_map(int d);
    static PositiveMapSpec custom(int d, Eigen::MatrixXcd superoperator);

    MapKind kind() const { return kind_; }
    int d() const { return d_; }

    // Λ applied to a d x d matrix.
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& x) const;

private:
    PositiveMapSpec(MapKind kind, int d, Eigen::MatrixXcd superop)
        : kind_(kind), d_(d), superop_(std::move(superop)) {}

    MapKind kind_;
    int d_;
    Eigen::MatrixXcd superop_;
};

// Choi state of the induced map I_{d²} ⊗ (I_d ⊗ Λ_d) evaluated on the
// maximally entangled probe (1/d) Σ_i |i⟩|i⟩ over i in [0, d²). The result
// has dims (d², d²) and is indefinite when Λ is not completely positive.
DensityOp choi_state(const PositiveMapSpec& map);

// Structural physical approximation of I ⊗ Λ: the mixture
// (1 - p*) (I ⊗ Λ) + p* D with D the trace depolarization onto I/d².
// p* is the minimal weight making the mixed map's Choi matrix PSD, found
// by bisection (mixing with the identity preserves the Choi eigenvectors,
// so the bisection operates on the exact minimum eigenvalue).
//
// `threshold` reports the signed-eigenvalue expression d²λ/(d⁴λ + 1).
// Verdicts compare against `separability_cut` = p*/d², the smallest output
// eigenvalue attainable on separable inputs; on those the cut and the
// threshold expression evaluated at |λ| coincide.
class SpaMap {
public:
    static SpaMap make(PositiveMapSpec base);

    const PositiveMapSpec& base() const { return base_; }
    int d() const { return base_.d(); }
    double p_star() const { return p_star_; }
    double lambda() const { return lambda_; }
    double threshold() const { return threshold_; }
    double separability_cut() const { return cut_; }

    // (1 - p*) (I ⊗ Λ)(ρ) + p* I/d² for ρ with dims (d, d).
    Eigen::MatrixXcd apply(const DensityOp& rho) const;

private:
    SpaMap(PositiveMapSpec base, double p_star, double lambda, double threshold, double cut)
        : base_(std::move(base)), p_star_(p_star), lambda_(lambda), threshold_(threshold),
          cut_(cut) {}

    PositiveMapSpec base_;
    double p_star_;
    double lambda_;
    double threshold_;
    double cut_;
};

struct CopyEstimatorConfig {
    std::int64_t copies = 1;   // N, draws per estimate
    std::uint64_t seed = 0;
    int repetitions = 1;       // r, majority-vote count (odd)
};

enum class Verdict { separable, entangled };
enum class Route { analytic, ppt, spa_exact, spa_estimated };

struct DetectionVerdict {
    Verdict verdict = Verdict::separable;
    Route route = Route::analytic;
    double statistic = 0.0;       // decisive number: min eigenvalue or estimate
    double threshold = 0.0;       // value the statistic was compared against
    std::int64_t copies = 0;      // N * r for the estimated route, else 0
};

const char* to_string(Verdict v);
const char* to_string(Route r);

// Peres criterion: partial transpose on the second factor, entangled iff
// the minimum eigenvalue is below -1e-10. Conclusive for 2⊗2 and 2⊗3
// mixed states and for pure states of any dimensions.
DetectionVerdict ppt_test(const DensityOp& rho);

// Partial transpose on the second factor (exposed for diagnostics).
DensityOp partial_transpose_b(const DensityOp& rho);

// Min-eigenvalue threshold test with exact matrix arithmetic.
DetectionVerdict spa_test_exact(const DensityOp& rho, const SpaMap& spa);

// Simulated N-copy spectrum estimator: draws N outcomes from the spectral
// distribution of rho_prime and returns the smallest empirical frequency
// across eigenvector bins. Estimation error decays exponentially in N.
double estimate_min_eigenvalue(const DensityOp& rho_prime, const CopyEstimatorConfig& cfg);

// spa_test_exact with the statistic replaced by the sampled estimate;
// r-fold majority vote with per-repetition seeds (seed + repetition index).
// Records copies = N * r; the statistic is the median estimate.
DetectionVerdict spa_test_estimated(const DensityOp& rho, const SpaMap& spa,
                                    const CopyEstimatorConfig& cfg);

// Ground truth via exhaustive counting: separable iff the range holds no
// solution, or the range is full and every assignment is a solution.
DetectionVerdict analytic_test(const Formula& f, std::uint64_t lo, std::uint64_t hi,
                               int enumeration_cap = kDefaultEnumerationCap);

} // namespace entsearch
