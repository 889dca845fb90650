#include "entsearch/copies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "entsearch/oracle.hpp"
#include "entsearch/qsim.hpp"

namespace entsearch {

namespace {

constexpr std::uint64_t kGridAxisMin = 2;
constexpr std::uint64_t kGridAxisMax = std::uint64_t{1} << 30;

std::vector<std::uint64_t> log_spaced_axis(std::uint64_t lo, std::uint64_t hi, int points) {
    std::vector<std::uint64_t> axis;
    if (points == 1 || lo == hi) {
        axis.push_back(lo);
        return axis;
    }
    const double log_lo = std::log(static_cast<double>(lo));
    const double log_hi = std::log(static_cast<double>(hi));
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        const double value = std::exp(log_lo + t * (log_hi - log_lo));
        const auto rounded = static_cast<std::uint64_t>(std::llround(value));
        axis.push_back(std::clamp(rounded, lo, hi));
    }
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    return axis;
}

} // namespace

double delta_analytic(std::uint64_t L) {
    if (L < 2) {
        throw std::invalid_argument("search-space dimension must be at least 2");
    }
    return static_cast<double>(L - 1) / static_cast<double>(L);
}

double delta_simulated(int query_qubits, std::uint64_t solution_index) {
    if (query_qubits < 1) {
        throw std::invalid_argument("empty query register");
    }
    if (query_qubits > 12) {
        throw CapExceeded("delta_simulated capped at n=12");
    }
    const RegisterLayout layout = RegisterLayout::minimal(query_qubits);
    const Formula with_solution = planted_formula(query_qubits, solution_index);
    const Formula without = contradiction_formula(query_qubits);
    const std::uint64_t top = with_solution.space_size() - 1;
    const PureState psi_solution = post_oracle_state(with_solution, 0, top, layout);
    const PureState psi_none = post_oracle_state(without, 0, top, layout);
    return inner_product(psi_none, psi_solution).real();
}

std::int64_t copies_required(std::uint64_t L, double c) {
    if (L < 2) {
        throw std::invalid_argument("search-space dimension must be at least 2");
    }
    if (!(c > 0.0) || !(c < 1.0)) {
        throw std::invalid_argument("target overlap must lie strictly inside (0, 1)");
    }
    const double log_delta = std::log1p(-1.0 / static_cast<double>(L));  // < 0
    const double log_c = std::log(c);
    auto reaches = [&](std::int64_t copies) {
        return static_cast<double>(copies) * log_delta <= log_c;
    };
    std::int64_t n = static_cast<std::int64_t>(std::ceil(log_c / log_delta));
    n = std::max<std::int64_t>(n, 1);
    while (n > 1 && reaches(n - 1)) {
        --n;
    }
    while (!reaches(n)) {
        ++n;
    }
    return n;
}

double guess_bound(double overlap) {
    if (std::abs(overlap) > 1.0 + 1e-15) {
        throw std::invalid_argument("overlap magnitude cannot exceed 1");
    }
    const double complement = std::max(0.0, 1.0 - overlap * overlap);
    return 0.5 + 0.5 * std::sqrt(complement);
}

std::vector<DistinguishabilityPoint> figure2_grid(std::uint64_t l_min, std::uint64_t l_max,
                                                  std::uint64_t n_min, std::uint64_t n_max,
                                                  int points_per_axis) {
    if (l_min > l_max || n_min > n_max) {
        throw std::invalid_argument("empty grid range");
    }
    if (l_min < kGridAxisMin || l_max > kGridAxisMax || n_min < kGridAxisMin ||
        n_max > kGridAxisMax) {
        throw std::invalid_argument("grid axes must lie within [2, 2^30]");
    }
    if (points_per_axis < 1) {
        throw std::invalid_argument("points per axis must be positive");
    }
    const std::vector<std::uint64_t> ls = log_spaced_axis(l_min, l_max, points_per_axis);
    const std::vector<std::uint64_t> ns = log_spaced_axis(n_min, n_max, points_per_axis);
    std::vector<DistinguishabilityPoint> grid;
    grid.reserve(ls.size() * ns.size());
    for (const std::uint64_t l : ls) {
        const double log_delta = std::log1p(-1.0 / static_cast<double>(l));
        const double delta = delta_analytic(l);
        for (const std::uint64_t n : ns) {
            DistinguishabilityPoint point;
            point.L = l;
            point.N = n;
            point.delta = delta;
            const double log_deltan = static_cast<double>(n) * log_delta;
            point.log10_deltaN = log_deltan / std::log(10.0);
            point.deltaN = std::exp(log_deltan);
            // 1 - deltaN² evaluated as -expm1(2 ln deltaN), which stays
            // accurate when deltaN is close to 1 and when it underflows.
            point.bound = 0.5 + 0.5 * std::sqrt(-std::expm1(2.0 * log_deltan));
            grid.push_back(point);
        }
    }
    return grid;
}

std::vector<DistinguishabilityPoint> figure2_grid() {
    return figure2_grid(kGridAxisMin, kGridAxisMax, kGridAxisMin, kGridAxisMax, 64);
}

} // namespace entsearch
