#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "entsearch/formula.hpp"
#include "entsearch/qsim.hpp"
#include "entsearch/rng.hpp"

// Reference oracles for the test suite. Everything here recomputes results
// from first principles so the library under test never validates itself.
namespace testref {

// Truth-table evaluator walking the node list directly, no short-circuiting.
inline int eval_reference(const entsearch::Formula& f, std::uint64_t index, int node_idx) {
    const entsearch::FormulaNode& node = f.nodes()[static_cast<std::size_t>(node_idx)];
    switch (node.kind) {
    case entsearch::Connective::Var:
        return static_cast<int>((index >> (f.variable_count() - node.var)) & 1u);
    case entsearch::Connective::Not:
        return 1 - eval_reference(f, index, node.lhs);
    case entsearch::Connective::And:
        return eval_reference(f, index, node.lhs) & eval_reference(f, index, node.rhs);
    case entsearch::Connective::Or:
        return eval_reference(f, index, node.lhs) | eval_reference(f, index, node.rhs);
    case entsearch::Connective::Implies:
        return (1 - eval_reference(f, index, node.lhs)) | eval_reference(f, index, node.rhs);
    case entsearch::Connective::Iff:
        return eval_reference(f, index, node.lhs) == eval_reference(f, index, node.rhs) ? 1
                                                                                        : 0;
    }
    return 0;
}

inline int eval_reference(const entsearch::Formula& f, std::uint64_t index) {
    return eval_reference(f, index, f.root());
}

inline std::vector<std::uint64_t> brute_solutions(const entsearch::Formula& f) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < f.space_size(); ++x) {
        if (eval_reference(f, x) == 1) {
            out.push_back(x);
        }
    }
    return out;
}

inline std::uint64_t brute_count(const entsearch::Formula& f, std::uint64_t lo,
                                 std::uint64_t hi) {
    std::uint64_t k = 0;
    for (std::uint64_t x = lo; x <= hi; ++x) {
        k += static_cast<std::uint64_t>(eval_reference(f, x));
    }
    return k;
}

// Random CNF as DIMACS text so tests also exercise the parser on the way in.
inline std::string random_dimacs(entsearch::RandomStream& rng, int n, int clauses,
                                 int max_len = 3) {
    std::string text = "p cnf " + std::to_string(n) + " " + std::to_string(clauses) + "\n";
    for (int c = 0; c < clauses; ++c) {
        const int len = 1 + static_cast<int>(rng.next_double() * max_len);
        for (int l = 0; l < len; ++l) {
            const int var = 1 + static_cast<int>(rng.next_double() * n);
            const bool neg = rng.next_double() < 0.5;
            text += (neg ? "-" : "") + std::to_string(var) + " ";
        }
        text += "0\n";
    }
    return text;
}

inline entsearch::Formula random_cnf(entsearch::RandomStream& rng, int n, int clauses) {
    return entsearch::parse_dimacs(random_dimacs(rng, n, clauses));
}

inline double min_eig(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

inline Eigen::VectorXcd random_pure(entsearch::RandomStream& rng, int dim) {
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = entsearch::Complex{2.0 * rng.next_double() - 1.0,
                                  2.0 * rng.next_double() - 1.0};
    }
    v.normalize();
    return v;
}

inline Eigen::VectorXcd bell_phi_plus() {
    Eigen::VectorXcd v(4);
    v << 1.0, 0.0, 0.0, 1.0;
    v /= std::sqrt(2.0);
    return v;
}

inline entsearch::DensityOp pure_density(std::int64_t da, std::int64_t db,
                                         const Eigen::VectorXcd& v) {
    Eigen::MatrixXcd m = v * v.adjoint();
    return entsearch::DensityOp::make(da, db, std::move(m));
}

// Convex mixture of `rank` random pure states on da x db.
inline entsearch::DensityOp random_mixed(entsearch::RandomStream& rng, std::int64_t da,
                                         std::int64_t db, int rank) {
    const int dim = static_cast<int>(da * db);
    std::vector<double> weights(static_cast<std::size_t>(rank));
    double total = 0.0;
    for (double& w : weights) {
        w = rng.next_double() + 1e-6;
        total += w;
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = 0; r < rank; ++r) {
        const Eigen::VectorXcd v = random_pure(rng, dim);
        m += (weights[static_cast<std::size_t>(r)] / total) * (v * v.adjoint());
    }
    return entsearch::DensityOp::make(da, db, std::move(m));
}

// Werner family on 2 x 2: w |Φ+><Φ+| + (1-w) I/4.
inline entsearch::DensityOp werner(double w) {
    const Eigen::VectorXcd phi = bell_phi_plus();
    Eigen::MatrixXcd m =
        w * (phi * phi.adjoint()) + (1.0 - w) * 0.25 * Eigen::MatrixXcd::Identity(4, 4);
    return entsearch::DensityOp::make(2, 2, std::move(m));
}

} // namespace testref
