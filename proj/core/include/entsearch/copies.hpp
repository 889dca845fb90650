#pragma once

#include <cstdint>
#include <vector>

namespace entsearch {

// One sample of the distinguishability surface: the overlap between the
// one-solution and no-solution post-oracle states at search-space dimension
// L, its N-copy power, and the induced guessing-probability bound.
struct DistinguishabilityPoint {
    std::uint64_t L = 0;
    std::uint64_t N = 0;
    double delta = 0.0;         // (L - 1) / L
    double log10_deltaN = 0.0;  // retained when deltaN underflows to 0
    double deltaN = 0.0;        // ((L - 1) / L)^N
    double bound = 0.0;         // 1/2 + 1/2 sqrt(1 - deltaN²)
};

// (L - 1) / L. Callers wanting a realizable register use powers of two;
// any L >= 2 is accepted.
double delta_analytic(std::uint64_t L);

// Builds the one-solution state (solution planted at index s) and the
// no-solution state through the oracle pipeline and returns their inner
// product; equals (L - 1)/L with L = 2^n.
double delta_simulated(int query_qubits, std::uint64_t solution_index);

// Smallest N with ((L - 1)/L)^N <= c, i.e. ceil(ln c / ln((L - 1)/L)).
std::int64_t copies_required(std::uint64_t L, double c);

// Guessing-probability bound 1/2 + 1/2 sqrt(1 - overlap²) for a single
// distinguishing measurement; pass the N-copy overlap delta^N for the
// N-copy bound.
double guess_bound(double overlap);

// Log-spaced grid over [l_min, l_max] x [n_min, n_max], rows sorted by L
// then N. delta^N is evaluated in log space, so underflow yields
// deltaN = 0.0 with log10_deltaN retained. Collisions after rounding the
// log-spaced samples to integers are deduplicated.
std::vector<DistinguishabilityPoint> figure2_grid(std::uint64_t l_min, std::uint64_t l_max,
                                                  std::uint64_t n_min, std::uint64_t n_max,
                                                  int points_per_axis);

// Default grid: 64 points per axis over [2, 2^30] on both axes.
std::vector<DistinguishabilityPoint> figure2_grid();

} // namespace entsearch
