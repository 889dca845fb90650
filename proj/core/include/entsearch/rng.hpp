#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace entsearch {

/// Seeded random stream with portable output.
///
/// std::mt19937_64 has a standardized bit stream, but the standard
/// distributions do not; sampling here is implemented directly on the raw
/// stream so that identical seeds give identical draws on every platform.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// One draw from the categorical distribution given by `weights`
    /// (non-negative, summing to ~1). Returns the chosen bin index.
    std::size_t next_category(std::span<const double> weights) {
        if (weights.empty()) {
            throw std::invalid_argument("next_category: empty weight vector");
        }
        const double u = next_double();
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) {
                return i;
            }
        }
        return weights.size() - 1;
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace entsearch
