#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "entsearch/errors.hpp"
#include "entsearch/formula.hpp"
#include "entsearch/oracle.hpp"
#include "entsearch/qsim.hpp"
#include "entsearch/rng.hpp"
#include "helpers.hpp"

using namespace entsearch;

TEST_CASE("oracle flips the answer bit exactly on in-range solutions") {
    const Formula f = parse_expr("(x1 & x2) | x3");
    const RegisterLayout layout = RegisterLayout::minimal(3);
    const PureState psi = post_oracle_state(f, 0, 7, layout);
    const std::vector<std::uint64_t> solutions = testref::brute_solutions(f);
    const double amp = 1.0 / std::sqrt(8.0);
    for (std::uint64_t q = 0; q < 8; ++q) {
        const bool sat =
            std::find(solutions.begin(), solutions.end(), q) != solutions.end();
        const Complex a0 = psi.amplitudes()(2 * q);
        const Complex a1 = psi.amplitudes()(2 * q + 1);
        if (sat) {
            CHECK(std::abs(a0) < 1e-15);
            CHECK(std::abs(a1 - Complex{amp, 0.0}) < 1e-15);
        } else {
            CHECK(std::abs(a0 - Complex{amp, 0.0}) < 1e-15);
            CHECK(std::abs(a1) < 1e-15);
        }
    }
}

TEST_CASE("range restriction masks solutions outside the window") {
    const Formula f = parse_expr("(x1 & x2) | x3");
    const RegisterLayout layout = RegisterLayout::minimal(3);
    const PureState psi = post_oracle_state(f, 4, 7, layout);
    for (std::uint64_t q = 0; q < 8; ++q) {
        const bool flipped = q >= 4 && testref::eval_reference(f, q) == 1;
        CHECK((std::abs(psi.amplitudes()(2 * q + 1)) > 0.0) == flipped);
    }
}

TEST_CASE("oracle on a non-solution singleton range is the identity") {
    const Formula f = parse_expr("(x1 & x2) | x3");
    const RegisterLayout layout = RegisterLayout::minimal(3);
    const PureState before = uniform_superposition(layout);
    const RangeOracle oracle = RangeOracle::make(f, 0, 0, layout);
    const PureState after = oracle.apply(before);
    CHECK((after.amplitudes() - before.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("double application restores the input state") {
    RandomStream rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_double() * 5);
        const Formula f = testref::random_cnf(rng, n, 1 + trial % 4);
        const RegisterLayout layout = RegisterLayout::minimal(n);
        const std::uint64_t top = f.space_size() - 1;
        const std::uint64_t lo = static_cast<std::uint64_t>(rng.next_double() * (top + 1));
        const std::uint64_t hi =
            lo + static_cast<std::uint64_t>(rng.next_double() * (top - lo + 1));
        const RangeOracle oracle = RangeOracle::make(f, lo, hi, layout);
        const PureState start = uniform_superposition(layout);
        const PureState twice = oracle.apply(oracle.apply(start));
        CHECK((twice.amplitudes() - start.amplitudes()).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("basis image is an involutive permutation") {
    RandomStream rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_double() * 4);
        const Formula f = testref::random_cnf(rng, n, 1 + trial % 3);
        const RegisterMode mode =
            trial % 2 == 0 ? RegisterMode::minimal : RegisterMode::dxd;
        const RegisterLayout layout = RegisterLayout::make(n, mode);
        const RangeOracle oracle =
            RangeOracle::make(f, 0, f.space_size() - 1, layout);
        CHECK(oracle_unitary_check(oracle));
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(layout.dim()); ++i) {
            CHECK(oracle.basis_image(oracle.basis_image(i)) == i);
        }
    }
}

TEST_CASE("tampered basis maps fail the involution check") {
    std::vector<std::uint64_t> good{1, 0, 2, 3};
    CHECK(involutive_permutation(good));
    std::vector<std::uint64_t> duplicated{1, 1, 2, 3};
    CHECK_FALSE(involutive_permutation(duplicated));
    std::vector<std::uint64_t> cycle{1, 2, 0, 3};
    CHECK_FALSE(involutive_permutation(cycle));
    std::vector<std::uint64_t> oob{1, 0, 2, 9};
    CHECK_FALSE(involutive_permutation(oob));
}

TEST_CASE("full-range tautology oracle equals X on the answer qubit") {
    const Formula f = tautology_formula(2);
    const RegisterLayout layout = RegisterLayout::minimal(2);
    const RangeOracle oracle = RangeOracle::make(f, 0, 3, layout);
    for (std::uint64_t q = 0; q < 4; ++q) {
        CHECK(oracle.basis_image(2 * q) == 2 * q + 1);
        CHECK(oracle.basis_image(2 * q + 1) == 2 * q);
    }
}

TEST_CASE("post-oracle state with k=0 is a product with the answer register") {
    const Formula f = contradiction_formula(3);
    const PureState psi = post_oracle_state(f, 0, 7, RegisterLayout::minimal(3));
    const PureState plain = uniform_superposition(RegisterLayout::minimal(3));
    CHECK((psi.amplitudes() - plain.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(purity(reduced_density(psi, Subsystem::answer)) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pinned single-solution post-oracle amplitudes at n=2") {
    const Formula f = planted_formula(2, 2);
    const PureState psi = post_oracle_state(f, 0, 3, RegisterLayout::minimal(2));
    const double amp = 0.5;
    CHECK(std::abs(psi.amplitudes()(0) - Complex{amp, 0.0}) < 1e-15); // |00>|0>
    CHECK(std::abs(psi.amplitudes()(2) - Complex{amp, 0.0}) < 1e-15); // |01>|0>
    CHECK(std::abs(psi.amplitudes()(5) - Complex{amp, 0.0}) < 1e-15); // |10>|1>
    CHECK(std::abs(psi.amplitudes()(4)) < 1e-15);
    CHECK(std::abs(psi.amplitudes()(6) - Complex{amp, 0.0}) < 1e-15); // |11>|0>
}

TEST_CASE("query marginal is untouched by the oracle") {
    RandomStream rng(33);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_double() * 4);
        const Formula f = testref::random_cnf(rng, n, 1 + trial % 3);
        const RegisterLayout layout = RegisterLayout::minimal(n);
        const PureState before = uniform_superposition(layout);
        const PureState after = post_oracle_state(f, 0, f.space_size() - 1, layout);
        const DensityOp qb = reduced_density(before, Subsystem::query);
        const DensityOp qa = reduced_density(after, Subsystem::query);
        // Off-diagonal coherences move into the answer register, so only the
        // populations are compared; they carry the full query distribution.
        for (std::int64_t i = 0; i < qa.dim(); ++i) {
            CHECK(std::abs(qa.matrix()(i, i) - qb.matrix()(i, i)) < 1e-12);
        }
    }
}

TEST_CASE("oracle construction validates its range and layout") {
    const Formula f = parse_expr("x1 & x2");
    CHECK_THROWS_AS(RangeOracle::make(f, 2, 1, RegisterLayout::minimal(2)),
                    std::out_of_range);
    CHECK_THROWS_AS(RangeOracle::make(f, 0, 4, RegisterLayout::minimal(2)),
                    std::out_of_range);
    CHECK_THROWS_AS(RangeOracle::make(f, 0, 3, RegisterLayout::minimal(3)),
                    std::invalid_argument);
    const RangeOracle oracle = RangeOracle::make(f, 0, 3, RegisterLayout::minimal(2));
    const PureState wrong = uniform_superposition(RegisterLayout::minimal(3));
    CHECK_THROWS_AS(oracle.apply(wrong), std::invalid_argument);
}

TEST_CASE("dxd mode stores the answer bit in the last answer qubit") {
    const Formula f = planted_formula(2, 3);
    const PureState psi = post_oracle_state(f, 0, 3, RegisterLayout::dxd(2));
    // Query block q occupies indices [4q, 4q+4); answer 0...01 is offset 1.
    CHECK(std::abs(psi.amplitudes()(3 * 4 + 1) - Complex{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(psi.amplitudes()(3 * 4 + 0)) < 1e-15);
    for (std::uint64_t q = 0; q < 3; ++q) {
        CHECK(std::abs(psi.amplitudes()(q * 4) - Complex{0.5, 0.0}) < 1e-15);
    }
}
