#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "entsearch/errors.hpp"

namespace entsearch {

enum class Connective { Var, Not, And, Or, Implies, Iff };

/// One node of a formula's expression tree. Nodes live in a flat arena
/// owned by the Formula; children are referenced by arena index.
struct FormulaNode {
    Connective kind = Connective::Var;
    int var = 0;   // 1-based variable index, Var nodes only
    int lhs = -1;  // left child (or the only child for Not)
    int rhs = -1;  // right child, binary connectives only
};

class Assignment;

/// Immutable boolean formula over variables x1..xn.
///
/// `variable_count` is the declared n (a variable may be declared but
/// unused); `connective_count` is the number of connective nodes in the
/// tree. Evaluation is total over {0,1}^n.
class Formula {
public:
    Formula(int variable_count, std::vector<FormulaNode> nodes, int root,
            std::string source = {});

    int variable_count() const noexcept { return n_; }
    int connective_count() const noexcept { return m_; }
    const std::string& source() const noexcept { return source_; }
    const std::vector<FormulaNode>& nodes() const noexcept { return nodes_; }
    int root() const noexcept { return root_; }

    /// Basis-state count 2^n of the induced search space.
    std::uint64_t space_size() const noexcept { return std::uint64_t{1} << n_; }

private:
    int n_ = 0;
    int m_ = 0;
    int root_ = -1;
    std::vector<FormulaNode> nodes_;
    std::string source_;
};

/// A variable configuration, stored as a basis index under the canonical
/// ordering: x1 is the most significant bit.
class Assignment {
public:
    Assignment(int variable_count, std::uint64_t index);

    static Assignment from_bits(const std::vector<bool>& bits);

    int variable_count() const noexcept { return n_; }
    std::uint64_t index() const noexcept { return index_; }

    /// Value of x_i, 1-based.
    bool bit(int i) const;

    std::vector<bool> bits() const;

    /// Bit string "x1 x2 ... xn" without separators, e.g. "011".
    std::string to_string() const;

private:
    int n_ = 0;
    std::uint64_t index_ = 0;
};

/// Exhaustive statistics of a contiguous basis-index range.
struct RangeStats {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t solution_count = 0;

    std::uint64_t width() const noexcept { return hi - lo + 1; }
};

inline constexpr int kDefaultEnumerationCap = 24;

// --- tree builders -------------------------------------------------------

/// Programmatic formula construction, used by tests and by synthetic
/// instances (planted single-solution / contradiction formulas).
class FormulaBuilder {
public:
    int var(int index);
    int lnot(int child);
    int land(int lhs, int rhs);
    int lor(int lhs, int rhs);
    int implies(int lhs, int rhs);
    int iff(int lhs, int rhs);

    /// Finish with an explicit declared variable count (>= max index used).
    Formula build(int variable_count, int root, std::string source = {}) &&;

private:
    std::vector<FormulaNode> nodes_;
};

/// AND of literals matching the bits of `solution_index`: exactly one
/// satisfying assignment.
Formula planted_formula(int variable_count, std::uint64_t solution_index);

/// x1 AND NOT x1, over a declared width: no satisfying assignment.
Formula contradiction_formula(int variable_count);

/// x1 OR NOT x1, over a declared width: every assignment satisfies.
Formula tautology_formula(int variable_count);

// --- parsing -------------------------------------------------------------

/// Parse DIMACS CNF. The tree is the AND of ORs of (possibly negated)
/// literals; the clause count and variable range must match the header.
/// Throws ParseError with the offending line on malformed input.
Formula parse_dimacs(const std::string& text);

/// Parse an infix expression over tokens `xN`, `!`, `&`, `|`, `->`, `<->`
/// and parentheses, with precedence ! > & > | > -> > <-> and
/// right-associative ->. The variable count is the largest index used.
Formula parse_expr(const std::string& text);

// --- evaluation ----------------------------------------------------------

/// 1 iff the assignment satisfies the formula. Pure; touches each
/// connective node at most once (n + m work).
bool evaluate(const Formula& f, const Assignment& a);

/// Same, addressing the assignment by basis index.
bool evaluate(const Formula& f, std::uint64_t index);

/// Exhaustive solution count over [lo, hi], inclusive bounds.
RangeStats count_solutions(const Formula& f, std::uint64_t lo, std::uint64_t hi);

/// Sorted 1-based satisfying path indices (path p <-> basis index p-1).
std::vector<std::uint64_t> enumerate_paths(const Formula& f,
                                           int enumeration_cap = kDefaultEnumerationCap);

/// Number of connective-node visits a single evaluation performs; used to
/// validate the n + m verification-cost contract.
std::uint64_t evaluation_connective_visits(const Formula& f, const Assignment& a);

} // namespace entsearch
