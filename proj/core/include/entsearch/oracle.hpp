#pragma once

#include <cstdint>
#include <vector>

#include "entsearch/formula.hpp"
#include "entsearch/qsim.hpp"

namespace entsearch {

// The entangling map O_[lo,hi]: |q⟩|a⟩ → |q⟩|a ⊕ f_[lo,hi](q)⟩ where
// f_[lo,hi](q) = φ(q) for q in [lo, hi] and 0 outside. The induced basis
// map is an involutive permutation, hence unitary. The full oracle is the
// special case [0, 2^n - 1].
class RangeOracle {
public:
    static RangeOracle make(Formula formula, std::uint64_t lo, std::uint64_t hi,
                            RegisterLayout layout);

    const Formula& formula() const { return formula_; }
    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    const RegisterLayout& layout() const { return layout_; }

    // Image of a basis index under the induced permutation.
    std::uint64_t basis_image(std::uint64_t index) const;

    // Applied as an O(D) amplitude permutation; the D x D matrix is never
    // materialized outside oracle_unitary_check.
    PureState apply(const PureState& psi) const;

private:
    RangeOracle(Formula formula, std::uint64_t lo, std::uint64_t hi, RegisterLayout layout)
        : formula_(std::move(formula)), lo_(lo), hi_(hi), layout_(layout) {}

    Formula formula_;
    std::uint64_t lo_;
    std::uint64_t hi_;
    RegisterLayout layout_;
};

PureState apply_oracle(const RangeOracle& oracle, const PureState& psi);

// True iff `image` describes a self-inverse permutation of its index set.
bool involutive_permutation(const std::vector<std::uint64_t>& image);

// Enumerates the oracle's basis map exhaustively and checks it is its own
// inverse. Throws CapExceeded when the register exceeds the enumeration cap.
bool oracle_unitary_check(const RangeOracle& oracle,
                          int enumeration_cap = kDefaultEnumerationCap);

// apply_oracle(uniform_superposition(layout)).
PureState post_oracle_state(const Formula& f, std::uint64_t lo, std::uint64_t hi,
                            RegisterLayout layout);

} // namespace entsearch
