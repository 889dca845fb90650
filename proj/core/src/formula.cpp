#include "entsearch/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace entsearch {

namespace {

int count_connectives(const std::vector<FormulaNode>& nodes) {
    int m = 0;
    for (const auto& node : nodes) {
        if (node.kind != Connective::Var) {
            ++m;
        }
    }
    return m;
}

void validate_tree(const std::vector<FormulaNode>& nodes, int root, int n) {
    if (root < 0 || root >= static_cast<int>(nodes.size())) {
        throw std::invalid_argument("formula root index out of range");
    }
    for (const auto& node : nodes) {
        switch (node.kind) {
        case Connective::Var:
            if (node.var < 1 || node.var > n) {
                throw std::invalid_argument("variable index out of range: x" +
                                            std::to_string(node.var));
            }
            break;
        case Connective::Not:
            if (node.lhs < 0 || node.lhs >= static_cast<int>(nodes.size())) {
                throw std::invalid_argument("dangling child index");
            }
            break;
        default:
            if (node.lhs < 0 || node.lhs >= static_cast<int>(nodes.size()) ||
                node.rhs < 0 || node.rhs >= static_cast<int>(nodes.size())) {
                throw std::invalid_argument("dangling child index");
            }
        }
    }
}

} // namespace

Formula::Formula(int variable_count, std::vector<FormulaNode> nodes, int root,
                 std::string source)
    : n_(variable_count), root_(root), nodes_(std::move(nodes)), source_(std::move(source)) {
    if (n_ < 1) {
        throw std::invalid_argument("formula needs at least one variable");
    }
    if (n_ > 62) {
        throw std::invalid_argument("variable count too large for 64-bit basis indices");
    }
    validate_tree(nodes_, root_, n_);
    m_ = count_connectives(nodes_);
}

Assignment::Assignment(int variable_count, std::uint64_t index)
    : n_(variable_count), index_(index) {
    if (n_ < 1 || n_ > 62) {
        throw std::invalid_argument("assignment width out of range");
    }
    if (index >= (std::uint64_t{1} << n_)) {
        throw std::out_of_range("assignment index exceeds 2^n - 1");
    }
}

Assignment Assignment::from_bits(const std::vector<bool>& bits) {
    if (bits.empty()) {
        throw std::invalid_argument("empty bit vector");
    }
    std::uint64_t index = 0;
    for (bool b : bits) {
        index = (index << 1) | static_cast<std::uint64_t>(b);
    }
    return Assignment(static_cast<int>(bits.size()), index);
}

bool Assignment::bit(int i) const {
    if (i < 1 || i > n_) {
        throw std::out_of_range("variable index out of range");
    }
    return (index_ >> (n_ - i)) & 1u;
}

std::vector<bool> Assignment::bits() const {
    std::vector<bool> out(static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i) {
        out[static_cast<std::size_t>(i - 1)] = bit(i);
    }
    return out;
}

std::string Assignment::to_string() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 1; i <= n_; ++i) {
        if (bit(i)) {
            s[static_cast<std::size_t>(i - 1)] = '1';
        }
    }
    return s;
}

// --- builders --------------------------------------------------------------

int FormulaBuilder::var(int index) {
    nodes_.push_back({Connective::Var, index, -1, -1});
    return static_cast<int>(nodes_.size()) - 1;
}

int FormulaBuilder::lnot(int child) {
    nodes_.push_back({Connective::Not, 0, child, -1});
    return static_cast<int>(nodes_.size()) - 1;
}

int FormulaBuilder::land(int lhs, int rhs) {
    nodes_.push_back({Connective::And, 0, lhs, rhs});
    return static_cast<int>(nodes_.size()) - 1;
}

int FormulaBuilder::lor(int lhs, int rhs) {
    nodes_.push_back({Connective::Or, 0, lhs, rhs});
    return static_cast<int>(nodes_.size()) - 1;
}

int FormulaBuilder::implies(int lhs, int rhs) {
    nodes_.push_back({Connective::Implies, 0, lhs, rhs});
    return static_cast<int>(nodes_.size()) - 1;
}

int FormulaBuilder::iff(int lhs, int rhs) {
    nodes_.push_back({Connective::Iff, 0, lhs, rhs});
    return static_cast<int>(nodes_.size()) - 1;
}

Formula FormulaBuilder::build(int variable_count, int root, std::string source) && {
    return Formula(variable_count, std::move(nodes_), root, std::move(source));
}

Formula planted_formula(int variable_count, std::uint64_t solution_index) {
    Assignment target(variable_count, solution_index);
    FormulaBuilder b;
    int acc = -1;
    for (int i = 1; i <= variable_count; ++i) {
        int leaf = b.var(i);
        if (!target.bit(i)) {
            leaf = b.lnot(leaf);
        }
        acc = (acc < 0) ? leaf : b.land(acc, leaf);
    }
    return std::move(b).build(variable_count, acc,
                              "planted@" + std::to_string(solution_index));
}

Formula contradiction_formula(int variable_count) {
    FormulaBuilder b;
    int root = b.land(b.var(1), b.lnot(b.var(1)));
    return std::move(b).build(variable_count, root, "contradiction");
}

Formula tautology_formula(int variable_count) {
    FormulaBuilder b;
    int root = b.lor(b.var(1), b.lnot(b.var(1)));
    return std::move(b).build(variable_count, root, "tautology");
}

// --- DIMACS ----------------------------------------------------------------

Formula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    int n = -1;
    long long declared_clauses = -1;

    // header
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c') {
            continue;
        }
        std::istringstream hs(line);
        std::string p, cnf;
        if (!(hs >> p >> cnf >> n >> declared_clauses) || p != "p" || cnf != "cnf" ||
            n < 1 || declared_clauses < 0) {
            throw ParseError("malformed DIMACS header (expected 'p cnf n m')", line_no);
        }
        break;
    }
    if (n < 0) {
        throw ParseError("missing DIMACS header", std::max<std::size_t>(line_no, 1));
    }

    FormulaBuilder b;
    std::vector<int> clause_roots;
    int clause_acc = -1;
    bool in_clause = false;
    std::size_t clause_start_line = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c') {
            continue;
        }
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            long long lit = 0;
            try {
                std::size_t used = 0;
                lit = std::stoll(tok, &used);
                if (used != tok.size()) {
                    throw std::invalid_argument(tok);
                }
            } catch (const std::exception&) {
                throw ParseError("unexpected token '" + tok + "'", line_no);
            }
            if (lit == 0) {
                if (!in_clause) {
                    throw ParseError("empty clause", line_no);
                }
                clause_roots.push_back(clause_acc);
                clause_acc = -1;
                in_clause = false;
                continue;
            }
            const long long v = lit < 0 ? -lit : lit;
            if (v > n) {
                throw ParseError("literal out of range: " + std::to_string(lit), line_no);
            }
            if (!in_clause) {
                in_clause = true;
                clause_start_line = line_no;
            }
            int leaf = b.var(static_cast<int>(v));
            if (lit < 0) {
                leaf = b.lnot(leaf);
            }
            clause_acc = (clause_acc < 0) ? leaf : b.lor(clause_acc, leaf);
        }
    }
    if (in_clause) {
        throw ParseError("unterminated clause (missing trailing 0)", clause_start_line);
    }
    if (static_cast<long long>(clause_roots.size()) != declared_clauses) {
        throw ParseError("clause count " + std::to_string(clause_roots.size()) +
                             " does not match header m=" + std::to_string(declared_clauses),
                         line_no == 0 ? 1 : line_no);
    }
    if (clause_roots.empty()) {
        throw ParseError("formula has no clauses", line_no == 0 ? 1 : line_no);
    }

    int root = clause_roots.front();
    for (std::size_t i = 1; i < clause_roots.size(); ++i) {
        root = b.land(root, clause_roots[i]);
    }
    return std::move(b).build(n, root, text);
}

// --- infix expressions -------------------------------------------------------

namespace {

struct Token {
    enum Kind { Var, Not, And, Or, Implies, Iff, LParen, RParen, End } kind;
    int var = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        const std::size_t start = pos_;
        if (pos_ >= text_.size()) {
            current_ = {Token::End, 0, start};
            return;
        }
        const char c = text_[pos_];
        switch (c) {
        case '(': ++pos_; current_ = {Token::LParen, 0, start}; return;
        case ')': ++pos_; current_ = {Token::RParen, 0, start}; return;
        case '!': ++pos_; current_ = {Token::Not, 0, start}; return;
        case '&': ++pos_; current_ = {Token::And, 0, start}; return;
        case '|': ++pos_; current_ = {Token::Or, 0, start}; return;
        case '-':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                pos_ += 2;
                current_ = {Token::Implies, 0, start};
                return;
            }
            throw ParseError("unknown token '-' at column " + std::to_string(start + 1), 1);
        case '<':
            if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' && text_[pos_ + 2] == '>') {
                pos_ += 3;
                current_ = {Token::Iff, 0, start};
                return;
            }
            throw ParseError("unknown token '<' at column " + std::to_string(start + 1), 1);
        case 'x': {
            std::size_t end = pos_ + 1;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) {
                ++end;
            }
            if (end == pos_ + 1) {
                throw ParseError("variable token 'x' without index at column " +
                                     std::to_string(start + 1),
                                 1);
            }
            const int var = std::stoi(text_.substr(pos_ + 1, end - pos_ - 1));
            pos_ = end;
            current_ = {Token::Var, var, start};
            return;
        }
        default:
            throw ParseError(std::string("unknown token '") + c + "' at column " +
                                 std::to_string(start + 1),
                             1);
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    Token current_{Token::End, 0, 0};
};

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : lex_(text) {}

    Formula parse(const std::string& source) {
        if (lex_.peek().kind == Token::End) {
            throw ParseError("empty input", 1);
        }
        const int root = parse_iff();
        if (lex_.peek().kind != Token::End) {
            if (lex_.peek().kind == Token::RParen) {
                throw ParseError("unbalanced parentheses", 1);
            }
            throw ParseError("trailing tokens after expression", 1);
        }
        if (max_var_ < 1) {
            throw ParseError("expression uses no variables", 1);
        }
        return std::move(builder_).build(max_var_, root, source);
    }

private:
    int parse_iff() {
        int lhs = parse_implies();
        while (lex_.peek().kind == Token::Iff) {
            lex_.take();
            lhs = builder_.iff(lhs, parse_implies());
        }
        return lhs;
    }

    int parse_implies() {
        const int lhs = parse_or();
        if (lex_.peek().kind == Token::Implies) {
            lex_.take();
            return builder_.implies(lhs, parse_implies()); // right-associative
        }
        return lhs;
    }

    int parse_or() {
        int lhs = parse_and();
        while (lex_.peek().kind == Token::Or) {
            lex_.take();
            lhs = builder_.lor(lhs, parse_and());
        }
        return lhs;
    }

    int parse_and() {
        int lhs = parse_not();
        while (lex_.peek().kind == Token::And) {
            lex_.take();
            lhs = builder_.land(lhs, parse_not());
        }
        return lhs;
    }

    int parse_not() {
        if (lex_.peek().kind == Token::Not) {
            lex_.take();
            return builder_.lnot(parse_not());
        }
        return parse_atom();
    }

    int parse_atom() {
        const Token t = lex_.take();
        switch (t.kind) {
        case Token::Var:
            if (t.var < 1) {
                throw ParseError("variable index must be >= 1", 1);
            }
            max_var_ = std::max(max_var_, t.var);
            return builder_.var(t.var);
        case Token::LParen: {
            const int inner = parse_iff();
            if (lex_.peek().kind != Token::RParen) {
                throw ParseError("unbalanced parentheses", 1);
            }
            lex_.take();
            return inner;
        }
        case Token::End:
            throw ParseError("unexpected end of input", 1);
        default:
            throw ParseError("unexpected token at column " + std::to_string(t.pos + 1), 1);
        }
    }

    Lexer lex_;
    FormulaBuilder builder_;
    int max_var_ = 0;
};

} // namespace

Formula parse_expr(const std::string& text) {
    ExprParser parser(text);
    return parser.parse(text);
}

// --- evaluation --------------------------------------------------------------

namespace {

bool eval_node(const std::vector<FormulaNode>& nodes, int idx, const Assignment& a,
               std::uint64_t* connective_visits) {
    const FormulaNode& node = nodes[static_cast<std::size_t>(idx)];
    switch (node.kind) {
    case Connective::Var:
        return a.bit(node.var);
    case Connective::Not:
        if (connective_visits) ++*connective_visits;
        return !eval_node(nodes, node.lhs, a, connective_visits);
    case Connective::And:
        if (connective_visits) ++*connective_visits;
        return eval_node(nodes, node.lhs, a, connective_visits) &&
               eval_node(nodes, node.rhs, a, connective_visits);
    case Connective::Or:
        if (connective_visits) ++*connective_visits;
        return eval_node(nodes, node.lhs, a, connective_visits) ||
               eval_node(nodes, node.rhs, a, connective_visits);
    case Connective::Implies:
        if (connective_visits) ++*connective_visits;
        return !eval_node(nodes, node.lhs, a, connective_visits) ||
               eval_node(nodes, node.rhs, a, connective_visits);
    case Connective::Iff:
        if (connective_visits) ++*connective_visits;
        return eval_node(nodes, node.lhs, a, connective_visits) ==
               eval_node(nodes, node.rhs, a, connective_visits);
    }
    throw std::logic_error("unreachable connective kind");
}

} // namespace

bool evaluate(const Formula& f, const Assignment& a) {
    if (a.variable_count() != f.variable_count()) {
        throw std::invalid_argument("assignment width " + std::to_string(a.variable_count()) +
                                    " does not match formula n=" +
                                    std::to_string(f.variable_count()));
    }
    return eval_node(f.nodes(), f.root(), a, nullptr);
}

bool evaluate(const Formula& f, std::uint64_t index) {
    return evaluate(f, Assignment(f.variable_count(), index));
}

std::uint64_t evaluation_connective_visits(const Formula& f, const Assignment& a) {
    if (a.variable_count() != f.variable_count()) {
        throw std::invalid_argument("assignment width mismatch");
    }
    std::uint64_t visits = 0;
    eval_node(f.nodes(), f.root(), a, &visits);
    return visits;
}

RangeStats count_solutions(const Formula& f, std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t top = f.space_size() - 1;
    if (lo > hi || hi > top) {
        throw std::out_of_range("range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "] violates 0 <= lo <= hi <= 2^n - 1");
    }
    std::uint64_t k = 0;
    for (std::uint64_t x = lo; x <= hi; ++x) {
        if (evaluate(f, Assignment(f.variable_count(), x))) {
            ++k;
        }
        if (x == hi) {
            break; // avoid wrap when hi == 2^64 range edge patterns
        }
    }
    return RangeStats{lo, hi, k};
}

std::vector<std::uint64_t> enumerate_paths(const Formula& f, int enumeration_cap) {
    if (f.variable_count() > enumeration_cap) {
        throw CapExceeded("enumerate_paths: n=" + std::to_string(f.variable_count()) +
                          " exceeds cap " + std::to_string(enumeration_cap));
    }
    std::vector<std::uint64_t> paths;
    const std::uint64_t total = f.space_size();
    for (std::uint64_t x = 0; x < total; ++x) {
        if (evaluate(f, Assignment(f.variable_count(), x))) {
            paths.push_back(x + 1);
        }
    }
    return paths;
}

} // namespace entsearch
