#include "entsearch/qsim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace entsearch {

namespace {

constexpr int kMinimalQueryCap = 20;
constexpr int kDxdQueryCap = 6;

void check_hermitian(const Eigen::MatrixXcd& m) {
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > kAlgebraicTol) {
        throw std::invalid_argument("matrix is not Hermitian (deviation " +
                                    std::to_string(dev) + ")");
    }
}

void check_trace_one(const Eigen::MatrixXcd& m) {
    const Complex tr = m.trace();
    if (std::abs(tr - Complex{1.0, 0.0}) > kAlgebraicTol) {
        throw std::invalid_argument("matrix trace is not 1");
    }
}

void check_dims(std::int64_t dim_a, std::int64_t dim_b, const Eigen::MatrixXcd& m) {
    if (dim_a < 1 || dim_b < 1) {
        throw std::invalid_argument("subsystem dimensions must be positive");
    }
    if (m.rows() != m.cols() || m.rows() != dim_a * dim_b) {
        throw std::invalid_argument("matrix size does not match declared dimensions");
    }
    if (m.rows() > kDenseDimCap) {
        throw CapExceeded("dense operator side " + std::to_string(m.rows()) +
                          " exceeds cap " + std::to_string(kDenseDimCap));
    }
}

} // namespace

RegisterLayout RegisterLayout::minimal(int query_qubits) {
    if (query_qubits < 1) {
        throw std::invalid_argument("empty query register");
    }
    if (query_qubits > kMinimalQueryCap) {
        throw CapExceeded("minimal-mode query register capped at " +
                          std::to_string(kMinimalQueryCap) + " qubits");
    }
    return RegisterLayout(query_qubits, 1);
}

RegisterLayout RegisterLayout::dxd(int query_qubits) {
    if (query_qubits < 1) {
        throw std::invalid_argument("empty query register");
    }
    if (query_qubits > kDxdQueryCap) {
        throw CapExceeded("dxd-mode query register capped at " +
                          std::to_string(kDxdQueryCap) + " qubits");
    }
    return RegisterLayout(query_qubits, query_qubits);
}

RegisterLayout RegisterLayout::make(int query_qubits, RegisterMode mode) {
    return mode == RegisterMode::minimal ? minimal(query_qubits) : dxd(query_qubits);
}

PureState PureState::make(RegisterLayout layout, Eigen::VectorXcd amplitudes) {
    if (amplitudes.size() != layout.dim()) {
        throw std::invalid_argument("amplitude vector length does not match layout");
    }
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > kAlgebraicTol) {
        throw std::invalid_argument("state is not normalized (norm " + std::to_string(norm) +
                                    ")");
    }
    return PureState(layout, std::move(amplitudes));
}

DensityOp DensityOp::make(std::int64_t dim_a, std::int64_t dim_b, Eigen::MatrixXcd matrix) {
    check_dims(dim_a, dim_b, matrix);
    check_hermitian(matrix);
    check_trace_one(matrix);
    DensityOp op(dim_a, dim_b, std::move(matrix));
    const double min_eig = op.min_eigenvalue();
    if (min_eig < -kEigenvalueTol) {
        throw std::invalid_argument("matrix is not positive semidefinite (min eigenvalue " +
                                    std::to_string(min_eig) + ")");
    }
    return op;
}

DensityOp DensityOp::make_indefinite(std::int64_t dim_a, std::int64_t dim_b,
                                     Eigen::MatrixXcd matrix) {
    check_dims(dim_a, dim_b, matrix);
    check_hermitian(matrix);
    check_trace_one(matrix);
    return DensityOp(dim_a, dim_b, std::move(matrix));
}

double DensityOp::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

PureState uniform_superposition(RegisterLayout layout) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(layout.dim());
    const double amp = 1.0 / std::sqrt(static_cast<double>(layout.query_dim()));
    const std::int64_t answer_dim = layout.answer_dim();
    for (std::int64_t q = 0; q < layout.query_dim(); ++q) {
        amps(q * answer_dim) = amp;
    }
    return PureState(layout, std::move(amps));
}

DensityOp density_from_state(const PureState& psi) {
    if (psi.dim() > kDenseDimCap) {
        throw CapExceeded("density operator side " + std::to_string(psi.dim()) +
                          " exceeds cap " + std::to_string(kDenseDimCap));
    }
    Eigen::MatrixXcd m = psi.amplitudes() * psi.amplitudes().adjoint();
    return DensityOp::trusted(psi.layout().query_dim(), psi.layout().answer_dim(),
                              std::move(m));
}

DensityOp partial_trace(const DensityOp& rho, Subsystem keep) {
    const std::int64_t da = rho.dim_a();
    const std::int64_t db = rho.dim_b();
    const Eigen::MatrixXcd& m = rho.matrix();
    if (keep == Subsystem::query) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(da, da);
        for (std::int64_t i = 0; i < da; ++i) {
            for (std::int64_t j = 0; j < da; ++j) {
                Complex acc{0.0, 0.0};
                for (std::int64_t b = 0; b < db; ++b) {
                    acc += m(i * db + b, j * db + b);
                }
                out(i, j) = acc;
            }
        }
        return DensityOp::trusted(da, 1, std::move(out));
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(db, db);
    for (std::int64_t a = 0; a < db; ++a) {
        for (std::int64_t b = 0; b < db; ++b) {
            Complex acc{0.0, 0.0};
            for (std::int64_t i = 0; i < da; ++i) {
                acc += m(i * db + a, i * db + b);
            }
            out(a, b) = acc;
        }
    }
    return DensityOp::trusted(db, 1, std::move(out));
}

DensityOp reduced_density(const PureState& psi, Subsystem keep) {
    const std::int64_t da = psi.layout().query_dim();
    const std::int64_t db = psi.layout().answer_dim();
    const std::int64_t kept = keep == Subsystem::query ? da : db;
    if (kept > kDenseDimCap) {
        throw CapExceeded("reduced operator side " + std::to_string(kept) + " exceeds cap " +
                          std::to_string(kDenseDimCap));
    }
    const Eigen::VectorXcd& v = psi.amplitudes();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kept, kept);
    if (keep == Subsystem::answer) {
        for (std::int64_t q = 0; q < da; ++q) {
            for (std::int64_t a = 0; a < db; ++a) {
                const Complex va = v(q * db + a);
                if (va == Complex{0.0, 0.0}) {
                    continue;
                }
                for (std::int64_t b = 0; b < db; ++b) {
                    out(a, b) += va * std::conj(v(q * db + b));
                }
            }
        }
    } else {
        for (std::int64_t q = 0; q < da; ++q) {
            for (std::int64_t p = 0; p < da; ++p) {
                Complex acc{0.0, 0.0};
                for (std::int64_t a = 0; a < db; ++a) {
                    acc += v(q * db + a) * std::conj(v(p * db + a));
                }
                out(q, p) = acc;
            }
        }
    }
    return DensityOp::trusted(kept, 1, std::move(out));
}

DensityOp final_qubit_marginal(const PureState& psi) {
    const Eigen::VectorXcd& v = psi.amplitudes();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, 2);
    for (std::int64_t rest = 0; rest < psi.dim() / 2; ++rest) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                out(a, b) += v(rest * 2 + a) * std::conj(v(rest * 2 + b));
            }
        }
    }
    return DensityOp::trusted(2, 1, std::move(out));
}

DensityOp answer_state_closed_form(int query_qubits, std::int64_t k) {
    if (query_qubits < 1 || query_qubits > 62) {
        throw std::invalid_argument("query qubit count out of range");
    }
    const double total = static_cast<double>(std::int64_t{1} << query_qubits);
    if (k < 0 || static_cast<double>(k) > total) {
        throw std::out_of_range("solution count k must lie in [0, 2^n]");
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, 2);
    out(0, 0) = (total - static_cast<double>(k)) / total;
    out(1, 1) = static_cast<double>(k) / total;
    return DensityOp::trusted(2, 1, std::move(out));
}

Complex inner_product(const PureState& psi1, const PureState& psi2) {
    if (!(psi1.layout() == psi2.layout())) {
        throw std::invalid_argument("inner product requires matching layouts");
    }
    return psi1.amplitudes().dot(psi2.amplitudes());
}

double purity(const DensityOp& rho) {
    return rho.matrix().squaredNorm();
}

DensityOp depolarize(const DensityOp& rho, double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("mixing weight must lie in [0, 1]");
    }
    const std::int64_t dim = rho.dim();
    Eigen::MatrixXcd out =
        (1.0 - p) * rho.matrix() +
        (p / static_cast<double>(dim)) * Eigen::MatrixXcd::Identity(dim, dim);
    return DensityOp::trusted(rho.dim_a(), rho.dim_b(), std::move(out));
}

} // namespace entsearch
