#include "dirichlet/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

#include "dirichlet/autodiff.hpp"

namespace dirichlet {

namespace {

struct Token {
    enum class Kind { number, identifier, plus, minus, star, slash, caret, lparen, rparen, comma, end };
    Kind kind;
    double number = 0.0;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_ws();
        Token t;
        t.span = {line_, col_};
        if (pos_ >= src_.size()) {
            t.kind = Token::Kind::end;
            return t;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            t.number = std::stod(src_.substr(pos_), &used);
            // Reject forms like "1e" that stod would stop inside.
            advance(used);
            t.kind = Token::Kind::number;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
                ++end;
            t.text = src_.substr(pos_, end - pos_);
            advance(end - pos_);
            t.kind = Token::Kind::identifier;
            return t;
        }
        advance(1);
        switch (c) {
        case '+': t.kind = Token::Kind::plus; return t;
        case '-': t.kind = Token::Kind::minus; return t;
        case '*': t.kind = Token::Kind::star; return t;
        case '/': t.kind = Token::Kind::slash; return t;
        case '^': t.kind = Token::Kind::caret; return t;
        case '(': t.kind = Token::Kind::lparen; return t;
        case ')': t.kind = Token::Kind::rparen; return t;
        case ',': t.kind = Token::Kind::comma; return t;
        default: throw ParseError(std::string("unexpected character '") + c + "'", t.span);
        }
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_])))
            advance(1);
    }
    void advance(size_t k) {
        for (size_t i = 0; i < k && pos_ < src_.size(); ++i, ++pos_) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) { advance(); }

    NodePtr parse() {
        NodePtr e = sum();
        expect(Token::Kind::end, "end of input");
        return e;
    }

private:
    void advance() { cur_ = lex_.next(); }

    void expect(Token::Kind k, const std::string& what) {
        if (cur_.kind != k) throw ParseError("expected " + what, cur_.span);
    }

    NodePtr sum() {
        NodePtr lhs = term();
        while (cur_.kind == Token::Kind::plus || cur_.kind == Token::Kind::minus) {
            const bool plus = cur_.kind == Token::Kind::plus;
            const SourceSpan sp = cur_.span;
            advance();
            NodePtr rhs = term();
            ExprNode n;
            n.op = plus ? ExprOp::add : ExprOp::sub;
            n.args = {lhs, rhs};
            n.span = sp;
            lhs = make_node(std::move(n));
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (cur_.kind == Token::Kind::star || cur_.kind == Token::Kind::slash) {
            const bool mul = cur_.kind == Token::Kind::star;
            const SourceSpan sp = cur_.span;
            advance();
            NodePtr rhs = unary();
            ExprNode n;
            n.op = mul ? ExprOp::mul : ExprOp::div;
            n.args = {lhs, rhs};
            n.span = sp;
            lhs = make_node(std::move(n));
        }
        return lhs;
    }

    NodePtr unary() {
        if (cur_.kind == Token::Kind::minus) {
            const SourceSpan sp = cur_.span;
            advance();
            NodePtr inner = unary();
            ExprNode n;
            n.op = ExprOp::neg;
            n.args = {inner};
            n.span = sp;
            return make_node(std::move(n));
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        while (cur_.kind == Token::Kind::caret) {
            const SourceSpan sp = cur_.span;
            advance();
            int sign = 1;
            if (cur_.kind == Token::Kind::minus) {
                sign = -1;
                advance();
            }
            expect(Token::Kind::number, "integer exponent");
            const double v = cur_.number;
            if (v != std::floor(v) || std::fabs(v) > 64)
                throw ParseError("exponent must be a small integer", cur_.span);
            advance();
            ExprNode n;
            n.op = ExprOp::pow_int;
            n.exponent = sign * static_cast<int>(v);
            n.args = {base};
            n.span = sp;
            base = make_node(std::move(n));
        }
        return base;
    }

    NodePtr primary() {
        if (cur_.kind == Token::Kind::number) {
            ExprNode n;
            n.op = ExprOp::constant;
            n.value = cur_.number;
            n.span = cur_.span;
            advance();
            return make_node(std::move(n));
        }
        if (cur_.kind == Token::Kind::lparen) {
            advance();
            NodePtr inner = sum();
            expect(Token::Kind::rparen, "')'");
            advance();
            return inner;
        }
        if (cur_.kind == Token::Kind::identifier) {
            const std::string id = cur_.text;
            const SourceSpan sp = cur_.span;
            advance();
            if (id.size() >= 2 && id[0] == 'x') {
                bool digits = true;
                for (size_t i = 1; i < id.size(); ++i)
                    if (!std::isdigit(static_cast<unsigned char>(id[i]))) digits = false;
                if (digits) {
                    const int idx = std::stoi(id.substr(1));
                    if (idx < 1) throw ParseError("variable index must be >= 1", sp);
                    ExprNode n;
                    n.op = ExprOp::variable;
                    n.var = idx - 1;
                    n.span = sp;
                    return make_node(std::move(n));
                }
            }
            if (id == "pi") {
                ExprNode n;
                n.op = ExprOp::constant;
                n.value = 3.14159265358979323846;
                n.span = sp;
                return make_node(std::move(n));
            }
            static const std::map<std::string, Builtin> fns = {
                {"sin", Builtin::sin}, {"cos", Builtin::cos}, {"exp", Builtin::exp},
                {"log", Builtin::log}, {"abs", Builtin::abs}, {"sqrt", Builtin::sqrt},
                {"min", Builtin::min}, {"max", Builtin::max}, {"atan", Builtin::atan}};
            const auto it = fns.find(id);
            if (it == fns.end()) throw ParseError("unknown identifier '" + id + "'", sp);
            expect(Token::Kind::lparen, "'(' after function name");
            advance();
            std::vector<NodePtr> args;
            args.push_back(sum());
            while (cur_.kind == Token::Kind::comma) {
                advance();
                args.push_back(sum());
            }
            expect(Token::Kind::rparen, "')'");
            advance();

            const Builtin fn = it->second;
            const size_t want = (fn == Builtin::min || fn == Builtin::max) ? 2 : 1;
            if (args.size() != want)
                throw ParseError(id + " expects " + std::to_string(want) + " argument(s)", sp);
            ExprNode n;
            n.op = ExprOp::call;
            n.fn = fn;
            n.args = std::move(args);
            n.span = sp;
            return make_node(std::move(n));
        }
        throw ParseError("expected a value", cur_.span);
    }

    Lexer lex_;
    Token cur_;
};

struct EvalContext {
    bool nonsmooth = false;
};

constexpr double kKinkTol = 1e-12;

template <class T, bool kDerivs>
T eval_node(const ExprNode& n, std::span<const T> x, EvalContext& ctx) {
    switch (n.op) {
    case ExprOp::constant:
        return T(n.value);
    case ExprOp::variable:
        if (n.var >= static_cast<int>(x.size()))
            throw EvalError("variable x" + std::to_string(n.var + 1) + " out of range", n.span);
        return x[n.var];
    case ExprOp::add:
        return eval_node<T, kDerivs>(*n.args[0], x, ctx) + eval_node<T, kDerivs>(*n.args[1], x, ctx);
    case ExprOp::sub:
        return eval_node<T, kDerivs>(*n.args[0], x, ctx) - eval_node<T, kDerivs>(*n.args[1], x, ctx);
    case ExprOp::mul:
        return eval_node<T, kDerivs>(*n.args[0], x, ctx) * eval_node<T, kDerivs>(*n.args[1], x, ctx);
    case ExprOp::div: {
        const T num = eval_node<T, kDerivs>(*n.args[0], x, ctx);
        const T den = eval_node<T, kDerivs>(*n.args[1], x, ctx);
        if (scalar_value(den) == 0.0) throw EvalError("division by zero", n.span);
        return num / den;
    }
    case ExprOp::pow_int: {
        const T base = eval_node<T, kDerivs>(*n.args[0], x, ctx);
        if (n.exponent < 0 && scalar_value(base) == 0.0)
            throw EvalError("zero raised to a negative power", n.span);
        return pow_int(base, n.exponent);
    }
    case ExprOp::neg:
        return -eval_node<T, kDerivs>(*n.args[0], x, ctx);
    case ExprOp::call: {
        using std::atan;
        using std::cos;
        using std::exp;
        using std::log;
        using std::sin;
        using std::sqrt;
        const T a0 = eval_node<T, kDerivs>(*n.args[0], x, ctx);
        switch (n.fn) {
        case Builtin::sin: return sin(a0);
        case Builtin::cos: return cos(a0);
        case Builtin::exp: return exp(a0);
        case Builtin::atan: return atan(a0);
        case Builtin::log:
            if (scalar_value(a0) <= 0.0) throw EvalError("log of a non-positive value", n.span);
            return log(a0);
        case Builtin::sqrt:
            if (scalar_value(a0) < 0.0) throw EvalError("sqrt of a negative value", n.span);
            if (kDerivs && scalar_value(a0) == 0.0)
                throw EvalError("sqrt derivative at zero", n.span);
            return sqrt(a0);
        case Builtin::abs:
            if (kDerivs && std::fabs(scalar_value(a0)) <= kKinkTol) ctx.nonsmooth = true;
            return scalar_value(a0) >= 0.0 ? a0 : -a0;
        case Builtin::min:
        case Builtin::max: {
            const T a1 = eval_node<T, kDerivs>(*n.args[1], x, ctx);
            const double v0 = scalar_value(a0);
            const double v1 = scalar_value(a1);
            if (kDerivs && std::fabs(v0 - v1) <= kKinkTol) ctx.nonsmooth = true;
            if (n.fn == Builtin::min) return v0 <= v1 ? a0 : a1;
            return v0 >= v1 ? a0 : a1;
        }
        }
        throw EvalError("unknown builtin", n.span);
    }
    }
    throw EvalError("malformed expression node", n.span);
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
    if (a.op != b.op) return false;
    switch (a.op) {
    case ExprOp::constant: return a.value == b.value;
    case ExprOp::variable: return a.var == b.var;
    case ExprOp::pow_int:
        if (a.exponent != b.exponent) return false;
        break;
    case ExprOp::call:
        if (a.fn != b.fn) return false;
        break;
    default: break;
    }
    if (a.args.size() != b.args.size()) return false;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (!nodes_equal(*a.args[i], *b.args[i])) return false;
    return true;
}

int precedence(const ExprNode& n) {
    switch (n.op) {
    case ExprOp::add:
    case ExprOp::sub: return 1;
    case ExprOp::mul:
    case ExprOp::div: return 2;
    case ExprOp::neg: return 3;
    case ExprOp::pow_int: return 4;
    default: return 5;
    }
}

void print_node(const ExprNode& n, std::string& out) {
    auto child = [&](const ExprNode& c, bool needs_paren) {
        if (needs_paren) out += "(";
        print_node(c, out);
        if (needs_paren) out += ")";
    };
    switch (n.op) {
    case ExprOp::constant: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", n.value);
        out += buf;
        return;
    }
    case ExprOp::variable:
        out += "x" + std::to_string(n.var + 1);
        return;
    case ExprOp::add:
    case ExprOp::sub:
        child(*n.args[0], precedence(*n.args[0]) < 1);
        out += n.op == ExprOp::add ? " + " : " - ";
        child(*n.args[1], precedence(*n.args[1]) <= 1);
        return;
    case ExprOp::mul:
    case ExprOp::div:
        child(*n.args[0], precedence(*n.args[0]) < 2);
        out += n.op == ExprOp::mul ? "*" : "/";
        child(*n.args[1], precedence(*n.args[1]) <= 2);
        return;
    case ExprOp::neg:
        out += "-";
        child(*n.args[0], precedence(*n.args[0]) < 3);
        return;
    case ExprOp::pow_int:
        child(*n.args[0], precedence(*n.args[0]) <= 4);
        out += "^";
        if (n.exponent < 0) {
            out += "-" + std::to_string(-n.exponent);
        } else {
            out += std::to_string(n.exponent);
        }
        return;
    case ExprOp::call: {
        static const char* names[] = {"sin", "cos", "exp", "log", "abs", "sqrt", "min", "max", "atan"};
        out += names[static_cast<int>(n.fn)];
        out += "(";
        for (size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            print_node(*n.args[i], out);
        }
        out += ")";
        return;
    }
    }
}

} // namespace

Expr Expr::constant(double c) {
    ExprNode n;
    n.op = ExprOp::constant;
    n.value = c;
    return Expr(make_node(std::move(n)));
}

Expr Expr::variable(int index) {
    ExprNode n;
    n.op = ExprOp::variable;
    n.var = index;
    return Expr(make_node(std::move(n)));
}

namespace {
int max_var_node(const ExprNode& n) {
    int m = n.op == ExprOp::variable ? n.var + 1 : 0;
    for (const auto& c : n.args) m = std::max(m, max_var_node(*c));
    return m;
}
bool nonsmooth_node(const ExprNode& n) {
    if (n.op == ExprOp::call &&
        (n.fn == Builtin::abs || n.fn == Builtin::min || n.fn == Builtin::max))
        return true;
    for (const auto& c : n.args)
        if (nonsmooth_node(*c)) return true;
    return false;
}
} // namespace

int Expr::max_variable() const { return root_ ? max_var_node(*root_) : 0; }
bool Expr::has_nonsmooth_ops() const { return root_ && nonsmooth_node(*root_); }

double Expr::eval(std::span<const double> x) const {
    EvalContext ctx;
    return eval_node<double, false>(*root_, x, ctx);
}

bool Expr::equal(const Expr& other) const {
    if (!root_ || !other.root_) return root_ == other.root_;
    return nodes_equal(*root_, *other.root_);
}

Expr parse_expr(const std::string& src) {
    Parser p(src);
    return Expr(p.parse());
}

std::string print_expr(const Expr& e) {
    std::string out;
    print_node(e.root(), out);
    return out;
}

DerivResult eval_with_derivatives(const Expr& e, std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    DerivResult res;
    res.gradient.assign(n, 0.0);
    res.hessian = SymMatrix(n);

    {
        EvalContext ctx;
        res.value = eval_node<double, false>(e.root(), x, ctx);
    }
    for (int i = 0; i < n; ++i) {
        EvalContext ctx;
        std::vector<Dual1> xd(n);
        for (int k = 0; k < n; ++k) xd[k] = Dual1(x[k], k == i ? 1.0 : 0.0);
        const Dual1 r = eval_node<Dual1, true>(e.root(), std::span<const Dual1>(xd), ctx);
        res.gradient[i] = r.b;
        if (ctx.nonsmooth) res.smooth = false;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            EvalContext ctx;
            std::vector<Dual2> xd(n);
            for (int k = 0; k < n; ++k)
                xd[k] = Dual2(Dual1(x[k], k == j ? 1.0 : 0.0), Dual1(k == i ? 1.0 : 0.0, 0.0));
            const Dual2 r = eval_node<Dual2, true>(e.root(), std::span<const Dual2>(xd), ctx);
            res.hessian.set(i, j, r.b.b);
            if (ctx.nonsmooth) res.smooth = false;
        }
    }
    return res;
}

} // namespace dirichlet
