// SPDX-License-Identifier: Apache-2.0
#include "bjorling/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace bjorling {

// ---------------------------------------------------------------------------
// VarSet

VarSet::VarSet(std::initializer_list<std::string> names) : names_(names) {}
VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {}

int VarSet::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

VarSet VarSet::curve() { return VarSet{"s"}; }
VarSet VarSet::sphere() { return VarSet{"x", "y", "z"}; }

const char* func_name(Func f)
{
    switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Exp: return "exp";
    case Func::Sqrt: return "sqrt";
    }
    return "?";
}

namespace {

bool lookup_func(std::string_view name, Func& out)
{
    static constexpr std::pair<std::string_view, Func> table[] = {
        {"sin", Func::Sin},   {"cos", Func::Cos}, {"sinh", Func::Sinh},
        {"cosh", Func::Cosh}, {"exp", Func::Exp}, {"sqrt", Func::Sqrt},
    };
    for (const auto& [n, f] : table) {
        if (n == name) {
            out = f;
            return true;
        }
    }
    return false;
}

NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

NodePtr const_node(double v)
{
    Node n;
    n.kind = NodeKind::Constant;
    n.value = v;
    return make_node(n);
}

NodePtr unary_node(NodeKind kind, NodePtr a)
{
    Node n;
    n.kind = kind;
    n.lhs = std::move(a);
    return make_node(n);
}

NodePtr binary_node(NodeKind kind, NodePtr a, NodePtr b)
{
    Node n;
    n.kind = kind;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return make_node(n);
}

NodePtr call_node(Func f, NodePtr a)
{
    Node n;
    n.kind = NodeKind::Call;
    n.func = f;
    n.lhs = std::move(a);
    return make_node(n);
}

NodePtr pow_node(NodePtr a, int e)
{
    Node n;
    n.kind = NodeKind::Pow;
    n.exponent = e;
    n.lhs = std::move(a);
    return make_node(n);
}

bool is_const(const NodePtr& n, double v) { return n->kind == NodeKind::Constant && n->value == v; }

bool nodes_equal(const Node& a, const Node& b)
{
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
    case NodeKind::Constant: return a.value == b.value;
    case NodeKind::Pi: return true;
    case NodeKind::Variable: return a.var_index == b.var_index;
    case NodeKind::Negate: return nodes_equal(*a.lhs, *b.lhs);
    case NodeKind::Pow: return a.exponent == b.exponent && nodes_equal(*a.lhs, *b.lhs);
    case NodeKind::Call: return a.func == b.func && nodes_equal(*a.lhs, *b.lhs);
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: return nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
    }
    return false;
}

bool has_variable(const Node& n)
{
    switch (n.kind) {
    case NodeKind::Constant:
    case NodeKind::Pi: return false;
    case NodeKind::Variable: return true;
    case NodeKind::Negate:
    case NodeKind::Pow:
    case NodeKind::Call: return has_variable(*n.lhs);
    default: return has_variable(*n.lhs) || has_variable(*n.rhs);
    }
}

VarSet merged_vars(const Expr& a, const Expr& b)
{
    if (a.vars().size() == 0) {
        return b.vars();
    }
    if (b.vars().size() != 0 && !(a.vars() == b.vars())) {
        throw DataError("cannot combine expressions over different variable sets");
    }
    return a.vars();
}

// Folding builders used by both the public operators and the differentiator.
NodePtr fold_add(NodePtr a, NodePtr b)
{
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    if (a->kind == NodeKind::Constant && b->kind == NodeKind::Constant) return const_node(a->value + b->value);
    return binary_node(NodeKind::Add, std::move(a), std::move(b));
}

NodePtr fold_neg(NodePtr a)
{
    if (a->kind == NodeKind::Constant) return const_node(-a->value);
    if (a->kind == NodeKind::Negate) return a->lhs;
    return unary_node(NodeKind::Negate, std::move(a));
}

NodePtr fold_sub(NodePtr a, NodePtr b)
{
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return fold_neg(std::move(b));
    if (a->kind == NodeKind::Constant && b->kind == NodeKind::Constant) return const_node(a->value - b->value);
    return binary_node(NodeKind::Sub, std::move(a), std::move(b));
}

NodePtr fold_mul(NodePtr a, NodePtr b)
{
    if (is_const(a, 0.0) || is_const(b, 0.0)) return const_node(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (a->kind == NodeKind::Constant && b->kind == NodeKind::Constant) return const_node(a->value * b->value);
    return binary_node(NodeKind::Mul, std::move(a), std::move(b));
}

NodePtr fold_div(NodePtr a, NodePtr b)
{
    if (is_const(a, 0.0) && !is_const(b, 0.0)) return const_node(0.0);
    if (is_const(b, 1.0)) return a;
    return binary_node(NodeKind::Div, std::move(a), std::move(b));
}

NodePtr fold_pow(NodePtr a, int e)
{
    if (e == 0) return const_node(1.0);
    if (e == 1) return a;
    return pow_node(std::move(a), e);
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    Parser(std::string_view text, const VarSet& vars) : text_(text), vars_(vars) {}

    NodePtr parse()
    {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr()
    {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = binary_node(NodeKind::Add, lhs, term());
            } else if (accept('-')) {
                lhs = binary_node(NodeKind::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term()
    {
        NodePtr lhs = factor();
        for (;;) {
            if (accept('*')) {
                lhs = binary_node(NodeKind::Mul, lhs, factor());
            } else if (accept('/')) {
                lhs = binary_node(NodeKind::Div, lhs, factor());
            } else {
                return lhs;
            }
        }
    }

    NodePtr factor()
    {
        NodePtr b = base();
        if (accept('^')) {
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            const bool trailing_number_part =
                pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E');
            if (pos_ == start || trailing_number_part) {
                fail("non-integer exponent", start);
            }
            int e = 0;
            auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, e);
            if (ec != std::errc{}) {
                fail("exponent out of range", start);
            }
            return pow_node(b, e);
        }
        return b;
    }

    NodePtr base()
    {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of expression");
        }
        const char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            NodePtr operand = base();
            if (operand->kind == NodeKind::Constant) {
                return const_node(-operand->value);
            }
            return unary_node(NodeKind::Negate, operand);
        }
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return identifier();
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    NodePtr number()
    {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                ++pos_;
            }
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits();
            } else {
                pos_ = save;
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc{} || ptr != text_.data() + pos_) {
            fail("malformed number", start);
        }
        return const_node(v);
    }

    NodePtr identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        skip_ws();
        const bool is_call = pos_ < text_.size() && text_[pos_] == '(';

        Func f{};
        if (lookup_func(name, f)) {
            if (!is_call) {
                fail("function '" + std::string(name) + "' requires an argument", start);
            }
            ++pos_;
            NodePtr arg = expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return call_node(f, arg);
        }
        if (is_call) {
            fail("unknown function '" + std::string(name) + "'", start);
        }
        if (name == "pi") {
            Node n;
            n.kind = NodeKind::Pi;
            return make_node(n);
        }
        const int idx = vars_.index_of(name);
        if (idx < 0) {
            fail("unknown identifier '" + std::string(name) + "'", start);
        }
        Node n;
        n.kind = NodeKind::Variable;
        n.var_index = idx;
        return make_node(n);
    }

    std::string_view text_;
    const VarSet& vars_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print(const Node& n, const VarSet& vars, std::string& out)
{
    switch (n.kind) {
    case NodeKind::Constant:
        if (n.value < 0.0) {
            out += "-" + format_double(-n.value);
        } else {
            out += format_double(n.value);
        }
        return;
    case NodeKind::Pi: out += "pi"; return;
    case NodeKind::Variable: out += vars.name(static_cast<std::size_t>(n.var_index)); return;
    case NodeKind::Negate:
        out += "-(";
        print(*n.lhs, vars, out);
        out += ")";
        return;
    case NodeKind::Pow:
        out += "(";
        print(*n.lhs, vars, out);
        out += ")^" + std::to_string(n.exponent);
        return;
    case NodeKind::Call:
        out += func_name(n.func);
        out += "(";
        print(*n.lhs, vars, out);
        out += ")";
        return;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
        const char* op = n.kind == NodeKind::Add ? " + " : n.kind == NodeKind::Sub ? " - " : n.kind == NodeKind::Mul ? " * " : " / ";
        out += "(";
        print(*n.lhs, vars, out);
        out += op;
        print(*n.rhs, vars, out);
        out += ")";
        return;
    }
    }
}

// ---------------------------------------------------------------------------
// Derivative

NodePtr differentiate(const NodePtr& n, int var)
{
    switch (n->kind) {
    case NodeKind::Constant:
    case NodeKind::Pi: return const_node(0.0);
    case NodeKind::Variable: return const_node(n->var_index == var ? 1.0 : 0.0);
    case NodeKind::Negate: return fold_neg(differentiate(n->lhs, var));
    case NodeKind::Add: return fold_add(differentiate(n->lhs, var), differentiate(n->rhs, var));
    case NodeKind::Sub: return fold_sub(differentiate(n->lhs, var), differentiate(n->rhs, var));
    case NodeKind::Mul:
        return fold_add(fold_mul(differentiate(n->lhs, var), n->rhs), fold_mul(n->lhs, differentiate(n->rhs, var)));
    case NodeKind::Div: {
        // (u/v)' = (u' v - u v') / v^2
        NodePtr num = fold_sub(fold_mul(differentiate(n->lhs, var), n->rhs),
                               fold_mul(n->lhs, differentiate(n->rhs, var)));
        return fold_div(num, fold_pow(n->rhs, 2));
    }
    case NodeKind::Pow: {
        const int e = n->exponent;
        if (e == 0) {
            return const_node(0.0);
        }
        return fold_mul(fold_mul(const_node(static_cast<double>(e)), fold_pow(n->lhs, e - 1)),
                        differentiate(n->lhs, var));
    }
    case NodeKind::Call: {
        NodePtr du = differentiate(n->lhs, var);
        NodePtr outer;
        switch (n->func) {
        case Func::Sin: outer = call_node(Func::Cos, n->lhs); break;
        case Func::Cos: outer = fold_neg(call_node(Func::Sin, n->lhs)); break;
        case Func::Sinh: outer = call_node(Func::Cosh, n->lhs); break;
        case Func::Cosh: outer = call_node(Func::Sinh, n->lhs); break;
        case Func::Exp: outer = n; break;
        case Func::Sqrt: outer = fold_div(const_node(0.5), n); break;
        }
        return fold_mul(outer, du);
    }
    }
    return const_node(0.0);
}

// ---------------------------------------------------------------------------
// Evaluation, generic over the value kind.

struct RealOps {
    double constant(double v) const { return v; }
    double div(double a, double b) const
    {
        if (b == 0.0) {
            throw EvalError("division by zero");
        }
        return a / b;
    }
    double pow(double a, int n) const { return std::pow(a, n); }
    double call(Func f, double u) const
    {
        switch (f) {
        case Func::Sin: return std::sin(u);
        case Func::Cos: return std::cos(u);
        case Func::Sinh: return std::sinh(u);
        case Func::Cosh: return std::cosh(u);
        case Func::Exp: return std::exp(u);
        case Func::Sqrt:
            if (u < 0.0) {
                throw EvalError("sqrt of negative argument");
            }
            return std::sqrt(u);
        }
        return 0.0;
    }
};

struct ComplexOps {
    using C = std::complex<double>;
    C constant(double v) const { return {v, 0.0}; }
    C div(const C& a, const C& b) const
    {
        if (b == C{}) {
            throw EvalError("division by zero");
        }
        return a / b;
    }
    C pow(const C& a, int n) const
    {
        C result{1.0, 0.0};
        C base = a;
        while (n > 0) {
            if (n & 1) {
                result *= base;
            }
            n >>= 1;
            if (n > 0) {
                base *= base;
            }
        }
        return result;
    }
    C call(Func f, const C& u) const
    {
        // On the real axis the real-valued functions are used directly so
        // that complex and real evaluation agree to the last bit.
        if (u.imag() == 0.0 && !(f == Func::Sqrt && u.real() < 0.0)) {
            return {RealOps{}.call(f, u.real()), 0.0};
        }
        switch (f) {
        case Func::Sin: return std::sin(u);
        case Func::Cos: return std::cos(u);
        case Func::Sinh: return std::sinh(u);
        case Func::Cosh: return std::cosh(u);
        case Func::Exp: return std::exp(u);
        case Func::Sqrt: return std::sqrt(u);
        }
        return {};
    }
};

struct SeriesOps {
    int order;
    RealSeries constant(double v) const { return RealSeries(order, v); }
    RealSeries div(const RealSeries& a, const RealSeries& b) const { return a / b; }
    RealSeries pow(const RealSeries& a, int n) const { return bjorling::pow(a, n); }
    RealSeries call(Func f, const RealSeries& u) const
    {
        switch (f) {
        case Func::Sin: return bjorling::sin(u);
        case Func::Cos: return bjorling::cos(u);
        case Func::Sinh: return bjorling::sinh(u);
        case Func::Cosh: return bjorling::cosh(u);
        case Func::Exp: return bjorling::exp(u);
        case Func::Sqrt: return bjorling::sqrt(u);
        }
        return u;
    }
};

template <typename V, typename Ops>
V eval_node(const Node& n, std::span<const V> values, const Ops& ops)
{
    switch (n.kind) {
    case NodeKind::Constant: return ops.constant(n.value);
    case NodeKind::Pi: return ops.constant(std::numbers::pi);
    case NodeKind::Variable: return values[static_cast<std::size_t>(n.var_index)];
    case NodeKind::Negate: return -eval_node(*n.lhs, values, ops);
    case NodeKind::Add: return eval_node(*n.lhs, values, ops) + eval_node(*n.rhs, values, ops);
    case NodeKind::Sub: return eval_node(*n.lhs, values, ops) - eval_node(*n.rhs, values, ops);
    case NodeKind::Mul: return eval_node(*n.lhs, values, ops) * eval_node(*n.rhs, values, ops);
    case NodeKind::Div: return ops.div(eval_node(*n.lhs, values, ops), eval_node(*n.rhs, values, ops));
    case NodeKind::Pow: return ops.pow(eval_node(*n.lhs, values, ops), n.exponent);
    case NodeKind::Call: return ops.call(n.func, eval_node(*n.lhs, values, ops));
    }
    return ops.constant(0.0);
}

template <typename V>
void check_arity(const Expr& e, std::span<const V> values)
{
    if (e.empty()) {
        throw DataError("evaluating an empty expression");
    }
    if (values.size() < e.vars().size()) {
        throw DataError("expression over " + std::to_string(e.vars().size()) + " variables evaluated with " +
                        std::to_string(values.size()) + " values");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Expr

Expr Expr::constant(double v, VarSet vars) { return Expr(const_node(v), std::move(vars)); }

Expr Expr::variable(std::string_view name, VarSet vars)
{
    const int idx = vars.index_of(name);
    if (idx < 0) {
        throw DataError("variable '" + std::string(name) + "' is not declared");
    }
    Node n;
    n.kind = NodeKind::Variable;
    n.var_index = idx;
    return Expr(make_node(n), std::move(vars));
}

bool Expr::is_constant() const { return root_ && !has_variable(*root_); }

bool operator==(const Expr& a, const Expr& b)
{
    if (a.empty() || b.empty()) {
        return a.empty() && b.empty();
    }
    return a.vars() == b.vars() && nodes_equal(a.root(), b.root());
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(fold_add(a.root_ptr(), b.root_ptr()), merged_vars(a, b)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(fold_sub(a.root_ptr(), b.root_ptr()), merged_vars(a, b)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(fold_mul(a.root_ptr(), b.root_ptr()), merged_vars(a, b)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(fold_div(a.root_ptr(), b.root_ptr()), merged_vars(a, b)); }
Expr operator-(const Expr& a) { return Expr(fold_neg(a.root_ptr()), a.vars()); }
Expr call(Func f, const Expr& a) { return Expr(call_node(f, a.root_ptr()), a.vars()); }
Expr power(const Expr& a, int n)
{
    if (n < 0) {
        throw DataError("negative exponent");
    }
    return Expr(fold_pow(a.root_ptr(), n), a.vars());
}

VecExpr3 cross(const VecExpr3& a, const VecExpr3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Expr dot(const VecExpr3& a, const VecExpr3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Expr parse_expr(std::string_view text, const VarSet& vars)
{
    for (const auto& name : vars.names()) {
        Func f{};
        if (name == "pi" || lookup_func(name, f)) {
            throw DataError("variable name '" + name + "' collides with a reserved identifier");
        }
    }
    Parser p(text, vars);
    return Expr(p.parse(), vars);
}

std::string to_string(const Expr& e)
{
    std::string out;
    print(e.root(), e.vars(), out);
    return out;
}

Expr derivative_expr(const Expr& e, std::string_view var)
{
    // An undeclared variable is a constant direction: derivative zero.
    const int idx = e.vars().index_of(var);
    return Expr(differentiate(e.root_ptr(), idx), e.vars());
}

VecExpr3 derivative_expr(const VecExpr3& e, std::string_view var)
{
    return {derivative_expr(e[0], var), derivative_expr(e[1], var), derivative_expr(e[2], var)};
}

double eval_real(const Expr& e, std::span<const double> values)
{
    check_arity(e, values);
    return eval_node(e.root(), values, RealOps{});
}

std::complex<double> eval_complex(const Expr& e, std::span<const std::complex<double>> values)
{
    check_arity(e, values);
    return eval_node(e.root(), values, ComplexOps{});
}

RealSeries eval_series(const Expr& e, std::span<const RealSeries> values)
{
    check_arity(e, values);
    if (values.empty()) {
        throw DataError("series evaluation needs at least one argument to fix the order");
    }
    const int order = values[0].order();
    for (const auto& v : values) {
        if (v.order() != order) {
            throw DataError("series arguments of different orders");
        }
    }
    return eval_node(e.root(), values, SeriesOps{order});
}

double eval_real(const Expr& e, const VarAssignment<double>& a)
{
    const auto v = a.ordered(e.vars());
    return eval_real(e, std::span<const double>(v));
}

std::complex<double> eval_complex(const Expr& e, const VarAssignment<std::complex<double>>& a)
{
    const auto v = a.ordered(e.vars());
    return eval_complex(e, std::span<const std::complex<double>>(v));
}

RealSeries eval_series(const Expr& e, const VarAssignment<RealSeries>& a)
{
    const auto v = a.ordered(e.vars());
    return eval_series(e, std::span<const RealSeries>(v));
}

Vec3 eval_at(const VecExpr3& e, double s) { return {eval_at(e[0], s), eval_at(e[1], s), eval_at(e[2], s)}; }

} // namespace bjorling
