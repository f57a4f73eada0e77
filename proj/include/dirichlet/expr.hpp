#pragma once

// Expression ASTs for boundary data and implicit domain functions.
// Recursive-descent grammar over x1..xn with +, -, *, /, integer ^, unary
// minus and the functions sin, cos, exp, log, abs, sqrt, min, max, atan.
// Precedence: ^ > unary- > *,/ > +,-; binary +,-,*,/ associate left.

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirichlet/symmat.hpp"

namespace dirichlet {

struct SourceSpan {
    int line = 1;
    int column = 1;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, SourceSpan where)
        : std::runtime_error(message + " at line " + std::to_string(where.line) + ", column " +
                             std::to_string(where.column)),
          span(where) {}
    SourceSpan span;
};

class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& message, SourceSpan where)
        : std::runtime_error(message + " (from expression at line " + std::to_string(where.line) +
                             ", column " + std::to_string(where.column) + ")"),
          span(where) {}
    SourceSpan span;
};

class NonSmoothError : public std::runtime_error {
public:
    explicit NonSmoothError(const std::string& what) : std::runtime_error(what) {}
};

enum class ExprOp { constant, variable, add, sub, mul, div, pow_int, neg, call };
enum class Builtin { sin, cos, exp, log, abs, sqrt, min, max, atan };

struct ExprNode {
    ExprOp op = ExprOp::constant;
    double value = 0.0;   // constant
    int var = 0;          // variable index (0-based)
    int exponent = 1;     // pow_int
    Builtin fn = Builtin::sin;
    std::vector<std::shared_ptr<const ExprNode>> args;
    SourceSpan span;
};

class Expr {
public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

    static Expr constant(double c);
    static Expr variable(int index);

    bool valid() const { return root_ != nullptr; }
    const ExprNode& root() const { return *root_; }
    std::shared_ptr<const ExprNode> root_ptr() const { return root_; }

    // Highest x<k> mentioned (k >= 1), 0 for constants.
    int max_variable() const;
    // Contains abs/min/max anywhere (not C^2-safe).
    bool has_nonsmooth_ops() const;

    double eval(std::span<const double> x) const;

    bool equal(const Expr& other) const;

private:
    std::shared_ptr<const ExprNode> root_;
};

// Throws ParseError with line/column on syntax errors and unknown
// identifiers.
Expr parse_expr(const std::string& src);

// Canonical text form; parse(print(e)) reproduces the AST.
std::string print_expr(const Expr& e);

struct DerivResult {
    double value = 0.0;
    std::vector<double> gradient;
    SymMatrix hessian;
    bool smooth = true; // false if abs/min/max was evaluated within 1e-12 of a kink
};

// Nested forward-mode evaluation: exact-to-roundoff first and second
// derivatives for smooth composites.  Requesting derivatives at a kink sets
// smooth = false.
DerivResult eval_with_derivatives(const Expr& e, std::span<const double> x);

} // namespace dirichlet
