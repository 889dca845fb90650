#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "entsearch/errors.hpp"

namespace entsearch {

using Complex = std::complex<double>;

inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kEigenvalueTol = 1e-10;

// Dense density operators are capped at this side length (2^12).
inline constexpr std::int64_t kDenseDimCap = 4096;

enum class RegisterMode { minimal, dxd };

// Tensor factor selector. For states without register semantics, `query`
// names the first factor and `answer` the second.
enum class Subsystem { query, answer };

// Bipartite (query ⊗ answer) register. Basis index of |q⟩|a⟩ is
// q * 2^answer_qubits + a, with x1 the most significant query bit.
// In dxd mode the answer value lives in the last answer qubit (the
// global least significant bit); the other answer qubits stay 0.
class RegisterLayout {
public:
    static RegisterLayout minimal(int query_qubits);
    static RegisterLayout dxd(int query_qubits);
    static RegisterLayout make(int query_qubits, RegisterMode mode);

    int query_qubits() const { return query_; }
    int answer_qubits() const { return answer_; }
    RegisterMode mode() const { return answer_ == 1 ? RegisterMode::minimal : RegisterMode::dxd; }

    std::int64_t query_dim() const { return std::int64_t{1} << query_; }
    std::int64_t answer_dim() const { return std::int64_t{1} << answer_; }
    std::int64_t dim() const { return query_dim() * answer_dim(); }

    bool operator==(const RegisterLayout& other) const {
        return query_ == other.query_ && answer_ == other.answer_;
    }

private:
    RegisterLayout(int query, int answer) : query_(query), answer_(answer) {}

    int query_;
    int answer_;
};

class PureState {
public:
    // Validates the norm (1 within 1e-12).
    static PureState make(RegisterLayout layout, Eigen::VectorXcd amplitudes);

    const RegisterLayout& layout() const { return layout_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    std::int64_t dim() const { return amps_.size(); }

private:
    PureState(RegisterLayout layout, Eigen::VectorXcd amps)
        : layout_(layout), amps_(std::move(amps)) {}

    friend PureState uniform_superposition(RegisterLayout);
    friend class RangeOracle;

    RegisterLayout layout_;
    Eigen::VectorXcd amps_;
};

// Bipartite density operator with declared subsystem dimensions (d_A, d_B).
// For register states the first factor is the query, the second the answer.
class DensityOp {
public:
    // Validates Hermiticity (1e-12), unit trace (1e-12) and
    // positive semidefiniteness (min eigenvalue >= -1e-10).
    static DensityOp make(std::int64_t dim_a, std::int64_t dim_b, Eigen::MatrixXcd matrix);

    // Validates Hermiticity and unit trace only. Needed for operators that
    // are legitimately indefinite, such as partial transposes and the Choi
    // states of positive but not completely positive maps.
    static DensityOp make_indefinite(std::int64_t dim_a, std::int64_t dim_b,
                                     Eigen::MatrixXcd matrix);

    std::int64_t dim_a() const { return dim_a_; }
    std::int64_t dim_b() const { return dim_b_; }
    std::int64_t dim() const { return matrix_.rows(); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

    double min_eigenvalue() const;

private:
    DensityOp(std::int64_t dim_a, std::int64_t dim_b, Eigen::MatrixXcd matrix)
        : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(matrix)) {}

    // Trusted path for operations that preserve validity by construction.
    static DensityOp trusted(std::int64_t dim_a, std::int64_t dim_b, Eigen::MatrixXcd matrix) {
        return DensityOp(dim_a, dim_b, std::move(matrix));
    }

    friend DensityOp density_from_state(const PureState&);
    friend DensityOp partial_trace(const DensityOp&, Subsystem);
    friend DensityOp reduced_density(const PureState&, Subsystem);
    friend DensityOp final_qubit_marginal(const PureState&);
    friend DensityOp answer_state_closed_form(int, std::int64_t);
    friend DensityOp depolarize(const DensityOp&, double);

    std::int64_t dim_a_;
    std::int64_t dim_b_;
    Eigen::MatrixXcd matrix_;
};

// Amplitude 1/sqrt(2^n) on every |x⟩|0...0⟩, zero elsewhere.
PureState uniform_superposition(RegisterLayout layout);

// Rank-1 projector |ψ⟩⟨ψ| with dims (query_dim, answer_dim).
// Throws CapExceeded when the matrix side would exceed the dense cap.
DensityOp density_from_state(const PureState& psi);

// Traces out the complement of `keep`. The result has dims (d_kept, 1).
DensityOp partial_trace(const DensityOp& rho, Subsystem keep);

// Reduced state of a pure state, computed directly from the amplitudes in
// O(D * d_kept) without materializing the full projector.
DensityOp reduced_density(const PureState& psi, Subsystem keep);

// 2x2 marginal of the global least significant qubit. In dxd mode this is
// the qubit carrying the answer value.
DensityOp final_qubit_marginal(const PureState& psi);

// diag((2^n - k) / 2^n, k / 2^n): the answer marginal after a full-range
// oracle pass over a formula with k solutions.
DensityOp answer_state_closed_form(int query_qubits, std::int64_t k);

// ⟨ψ1|ψ2⟩.
Complex inner_product(const PureState& psi1, const PureState& psi2);

// Tr(ρ²).
double purity(const DensityOp& rho);

// (1 - p) ρ + p I/dim.
DensityOp depolarize(const DensityOp& rho, double p);

} // namespace entsearch
