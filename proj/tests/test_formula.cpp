#include "doctest.h"

#include <cstdint>
#include <string>
#include <vector>

#include "entsearch/errors.hpp"
#include "entsearch/formula.hpp"
#include "entsearch/rng.hpp"
#include "helpers.hpp"

using namespace entsearch;

namespace {
const char* kExprOne = "(x1 & x2) | x3";
}

TEST_CASE("parse_dimacs handles the smallest CNF") {
    const Formula f = parse_dimacs("p cnf 1 1\n1 0\n");
    CHECK(f.variable_count() == 1);
    CHECK(evaluate(f, std::uint64_t{1}));
    CHECK_FALSE(evaluate(f, std::uint64_t{0}));
}

TEST_CASE("parse_dimacs transcribes clauses as AND of ORs") {
    const Formula f = parse_dimacs("p cnf 3 2\n1 2 0\n3 0\n");
    const Formula g = parse_expr("(x1 | x2) & x3");
    for (std::uint64_t x = 0; x < 8; ++x) {
        CHECK(evaluate(f, x) == evaluate(g, x));
    }
}

TEST_CASE("parse_dimacs accepts comments and blank lines") {
    const Formula f = parse_dimacs("c a comment\nc another\np cnf 2 1\n\n1 -2 0\n");
    CHECK(f.variable_count() == 2);
    CHECK(count_solutions(f, 0, 3).solution_count == 3);
}

TEST_CASE("parse_dimacs rejects malformed input with line numbers") {
    SUBCASE("literal out of range") {
        CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 -3 0\n"), ParseError);
        try {
            parse_dimacs("p cnf 2 1\n1 -3 0\n");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("malformed header") {
        CHECK_THROWS_AS(parse_dimacs("p dnf 2 1\n1 0\n"), ParseError);
    }
    SUBCASE("unterminated clause") {
        CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
    }
    SUBCASE("clause count mismatch") {
        CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0\n"), ParseError);
    }
}

TEST_CASE("parse_expr covers the connective grammar") {
    SUBCASE("negation") {
        const Formula f = parse_expr("!x1");
        CHECK(f.variable_count() == 1);
        CHECK(evaluate(f, std::uint64_t{0}));
        CHECK_FALSE(evaluate(f, std::uint64_t{1}));
    }
    SUBCASE("implication is a tautology on x1 -> x1") {
        const Formula f = parse_expr("x1 -> x1");
        CHECK(count_solutions(f, 0, 1).solution_count == 2);
    }
    SUBCASE("precedence binds & tighter than |") {
        const Formula a = parse_expr("x1 | x2 & x3");
        const Formula b = parse_expr("x1 | (x2 & x3)");
        for (std::uint64_t x = 0; x < 8; ++x) {
            CHECK(evaluate(a, x) == evaluate(b, x));
        }
    }
    SUBCASE("implication associates right") {
        const Formula a = parse_expr("x1 -> x2 -> x3");
        const Formula b = parse_expr("x1 -> (x2 -> x3)");
        for (std::uint64_t x = 0; x < 8; ++x) {
            CHECK(evaluate(a, x) == evaluate(b, x));
        }
    }
    SUBCASE("iff binds loosest") {
        const Formula a = parse_expr("x1 <-> x2 | x3");
        const Formula b = parse_expr("x1 <-> (x2 | x3)");
        for (std::uint64_t x = 0; x < 8; ++x) {
            CHECK(evaluate(a, x) == evaluate(b, x));
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(parse_expr("(x1 & x2"), ParseError);
        CHECK_THROWS_AS(parse_expr("x1 $ x2"), ParseError);
        CHECK_THROWS_AS(parse_expr(""), ParseError);
        CHECK_THROWS_AS(parse_expr("x1 &"), ParseError);
    }
}

TEST_CASE("evaluate matches the reference truth table on the running example") {
    const Formula f = parse_expr(kExprOne);
    CHECK(evaluate(f, Assignment::from_bits({true, true, false})));
    CHECK_FALSE(evaluate(f, Assignment::from_bits({true, false, false})));
    CHECK(evaluate(f, Assignment::from_bits({false, false, true})));
    for (std::uint64_t x = 0; x < 8; ++x) {
        CHECK(static_cast<int>(evaluate(f, x)) == testref::eval_reference(f, x));
    }
}

TEST_CASE("assignment index and bits are consistent, x1 most significant") {
    const Assignment a(3, 4);
    CHECK(a.bit(1));
    CHECK_FALSE(a.bit(2));
    CHECK_FALSE(a.bit(3));
    CHECK(a.to_string() == "100");
    CHECK(Assignment::from_bits({true, false, false}).index() == 4);
    for (std::uint64_t x = 0; x < 16; ++x) {
        CHECK(Assignment::from_bits(Assignment(4, x).bits()).index() == x);
    }
    CHECK_THROWS_AS(Assignment(2, 4), std::out_of_range);
}

TEST_CASE("evaluate rejects assignments of the wrong length") {
    const Formula f = parse_expr(kExprOne);
    CHECK_THROWS_AS(evaluate(f, Assignment(2, 1)), std::invalid_argument);
}

TEST_CASE("count_solutions on pinned ranges") {
    const Formula f = parse_expr(kExprOne);
    CHECK(count_solutions(f, 0, 7).solution_count == 5);
    CHECK(count_solutions(f, 0, 0).solution_count == 0);
    CHECK(count_solutions(f, 0, 7).width() == 8);
    const Formula contra = parse_expr("x1 & !x1");
    CHECK(count_solutions(contra, 0, 1).solution_count == 0);
    CHECK_THROWS_AS(count_solutions(f, 5, 2), std::out_of_range);
    CHECK_THROWS_AS(count_solutions(f, 0, 8), std::out_of_range);
}

TEST_CASE("count_solutions is additive over partitions of random formulas") {
    RandomStream rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_double() * 6);
        const Formula f = testref::random_cnf(rng, n, 1 + trial % 5);
        const std::uint64_t top = f.space_size() - 1;
        const std::uint64_t mid = top / 2;
        const std::uint64_t whole = count_solutions(f, 0, top).solution_count;
        const std::uint64_t left = count_solutions(f, 0, mid).solution_count;
        const std::uint64_t right = count_solutions(f, mid + 1, top).solution_count;
        CHECK(whole == left + right);
        CHECK(whole == testref::brute_count(f, 0, top));
    }
}

TEST_CASE("enumerate_paths uses 1-based path numbering") {
    const Formula f = parse_expr(kExprOne);
    CHECK(enumerate_paths(f) == std::vector<std::uint64_t>{2, 4, 6, 7, 8});
    CHECK(enumerate_paths(tautology_formula(2)) == std::vector<std::uint64_t>{1, 2, 3, 4});
    CHECK(enumerate_paths(contradiction_formula(2)).empty());
}

TEST_CASE("enumerate_paths enforces the enumeration cap") {
    const Formula big = planted_formula(25, 0);
    CHECK_THROWS_AS(enumerate_paths(big), CapExceeded);
    CHECK_NOTHROW(enumerate_paths(big, 25));
}

TEST_CASE("path count equals range count on random formulas") {
    RandomStream rng(12);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_double() * 7);
        const Formula f = testref::random_cnf(rng, n, 2 + trial % 4);
        CHECK(enumerate_paths(f).size() ==
              count_solutions(f, 0, f.space_size() - 1).solution_count);
    }
}

TEST_CASE("builders produce the advertised solution sets") {
    SUBCASE("planted formula has exactly one solution") {
        RandomStream rng(13);
        for (int n = 1; n <= 10; ++n) {
            const std::uint64_t s =
                static_cast<std::uint64_t>(rng.next_double() * (1u << n));
            const Formula f = planted_formula(n, s);
            CHECK(testref::brute_solutions(f) == std::vector<std::uint64_t>{s});
        }
    }
    SUBCASE("contradiction and tautology") {
        CHECK(testref::brute_solutions(contradiction_formula(3)).empty());
        CHECK(testref::brute_solutions(tautology_formula(3)).size() == 8);
    }
}

TEST_CASE("verification touches each connective at most once") {
    RandomStream rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_double() * 5);
        const Formula f = testref::random_cnf(rng, n, 2 + trial % 4);
        for (std::uint64_t x = 0; x < f.space_size(); ++x) {
            const std::uint64_t visits =
                evaluation_connective_visits(f, Assignment(n, x));
            CHECK(visits <= static_cast<std::uint64_t>(f.connective_count()));
        }
    }
}

TEST_CASE("dimacs and expression forms of the same formula agree everywhere") {
    const Formula cnf = parse_dimacs("p cnf 3 2\n1 3 0\n2 3 0\n");
    const Formula expr = parse_expr("(x1 | x3) & (x2 | x3)");
    for (std::uint64_t x = 0; x < 8; ++x) {
        CHECK(evaluate(cnf, x) == evaluate(expr, x));
    }
}

TEST_CASE("formula construction validates its tree") {
    CHECK_THROWS_AS(Formula(0, {FormulaNode{Connective::Var, 1, -1, -1}}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(Formula(1, {FormulaNode{Connective::Var, 2, -1, -1}}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(Formula(1, {FormulaNode{Connective::Var, 1, -1, -1}}, 5),
                    std::invalid_argument);
}
