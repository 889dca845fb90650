#include "entsearch/oracle.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace entsearch {

RangeOracle RangeOracle::make(Formula formula, std::uint64_t lo, std::uint64_t hi,
                              RegisterLayout layout) {
    if (layout.query_qubits() != formula.variable_count()) {
        throw std::invalid_argument("layout query register does not match formula width");
    }
    const std::uint64_t top = formula.space_size() - 1;
    if (lo > hi || hi > top) {
        throw std::out_of_range("oracle range [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "] violates 0 <= lo <= hi <= 2^n - 1");
    }
    return RangeOracle(std::move(formula), lo, hi, layout);
}

std::uint64_t RangeOracle::basis_image(std::uint64_t index) const {
    const int answer_bits = layout_.answer_qubits();
    const std::uint64_t q = index >> answer_bits;
    if (q < lo_ || q > hi_ || !evaluate(formula_, q)) {
        return index;
    }
    // The answer value sits in the last answer qubit, the global LSB.
    return index ^ 1u;
}

PureState RangeOracle::apply(const PureState& psi) const {
    if (!(psi.layout() == layout_)) {
        throw std::invalid_argument("state layout does not match oracle layout");
    }
    Eigen::VectorXcd amps = psi.amplitudes();
    const std::int64_t answer_dim = layout_.answer_dim();
    for (std::uint64_t q = lo_; q <= hi_; ++q) {
        if (!evaluate(formula_, q)) {
            continue;
        }
        const std::int64_t base = static_cast<std::int64_t>(q) * answer_dim;
        for (std::int64_t a = 0; a < answer_dim; a += 2) {
            std::swap(amps(base + a), amps(base + a + 1));
        }
    }
    return PureState(layout_, std::move(amps));
}

PureState apply_oracle(const RangeOracle& oracle, const PureState& psi) {
    return oracle.apply(psi);
}

bool involutive_permutation(const std::vector<std::uint64_t>& image) {
    const std::uint64_t size = image.size();
    for (std::uint64_t i = 0; i < size; ++i) {
        if (image[i] >= size || image[image[i]] != i) {
            return false;
        }
    }
    return true;
}

bool oracle_unitary_check(const RangeOracle& oracle, int enumeration_cap) {
    if (oracle.layout().query_qubits() > enumeration_cap) {
        throw CapExceeded("oracle_unitary_check: n=" +
                          std::to_string(oracle.layout().query_qubits()) + " exceeds cap " +
                          std::to_string(enumeration_cap));
    }
    const std::uint64_t dim = static_cast<std::uint64_t>(oracle.layout().dim());
    std::vector<std::uint64_t> image(dim);
    for (std::uint64_t i = 0; i < dim; ++i) {
        image[i] = oracle.basis_image(i);
    }
    return involutive_permutation(image);
}

PureState post_oracle_state(const Formula& f, std::uint64_t lo, std::uint64_t hi,
                            RegisterLayout layout) {
    return RangeOracle::make(f, lo, hi, layout).apply(uniform_superposition(layout));
}

} // namespace entsearch
