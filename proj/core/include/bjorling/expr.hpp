// SPDX-License-Identifier: Apache-2.0
#pragma once

// Small analytic expression language used for curves, fields and the
// prescribed curvature function.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' INT)?
//   base   := NUMBER | 'pi' | IDENT | IDENT '(' expr ')' | '(' expr ')' | '-' base
//
// Unary minus binds tighter than '^', so "-s^2" is (-s)^2. Write "-(s^2)"
// for the negated square.

#include "bjorling/series.hpp"
#include "bjorling/vec3.hpp"

#include <array>
#include <complex>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bjorling {

/// Ordered set of declared variable names. Positional evaluation follows this order.
class VarSet {
public:
    VarSet() = default;
    VarSet(std::initializer_list<std::string> names);
    explicit VarSet(std::vector<std::string> names);

    /// Index of `name`, or -1 if undeclared.
    int index_of(std::string_view name) const;
    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    friend bool operator==(const VarSet&, const VarSet&) = default;

    /// {s}: curve and field expressions.
    static VarSet curve();
    /// {x, y, z}: functions on the unit sphere.
    static VarSet sphere();

private:
    std::vector<std::string> names_;
};

enum class Func { Sin, Cos, Sinh, Cosh, Exp, Sqrt };

const char* func_name(Func f);

enum class NodeKind { Constant, Pi, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::Constant;
    double value = 0.0;   // Constant
    int var_index = -1;   // Variable
    int exponent = 0;     // Pow
    Func func = Func::Sin; // Call
    NodePtr lhs;          // unary operand, or left operand
    NodePtr rhs;          // right operand
};

/// Immutable expression over a declared variable set. Cheap to copy.
class Expr {
public:
    Expr() = default;
    Expr(NodePtr root, VarSet vars) : root_(std::move(root)), vars_(std::move(vars)) {}

    const Node& root() const { return *root_; }
    const NodePtr& root_ptr() const { return root_; }
    const VarSet& vars() const { return vars_; }
    bool empty() const { return root_ == nullptr; }

    /// Constant expression, optionally declared over some variable set.
    static Expr constant(double v, VarSet vars = {});
    /// Reference to declared variable `name`.
    static Expr variable(std::string_view name, VarSet vars);

    /// True when the tree contains no variable references.
    bool is_constant() const;

    /// Structural equality of trees (variable sets must match too).
    friend bool operator==(const Expr& a, const Expr& b);

private:
    NodePtr root_;
    VarSet vars_;
};

// Expression builders. Both operands must share the same variable set.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr call(Func f, const Expr& a);
Expr power(const Expr& a, int n);

/// Triple of expressions: a curve or a vector field.
using VecExpr3 = std::array<Expr, 3>;

VecExpr3 cross(const VecExpr3& a, const VecExpr3& b);
Expr dot(const VecExpr3& a, const VecExpr3& b);

/// Parse `text`; every identifier must be a declared variable, a function
/// name followed by '(' or the constant `pi`.
Expr parse_expr(std::string_view text, const VarSet& vars);

/// Fully parenthesized text that parses back to a structurally equal tree.
std::string to_string(const Expr& e);

/// Exact symbolic derivative with respect to `var` (constants are folded).
Expr derivative_expr(const Expr& e, std::string_view var);
VecExpr3 derivative_expr(const VecExpr3& e, std::string_view var);

/// Named variable values of a single evaluation kind.
template <typename V>
class VarAssignment {
public:
    VarAssignment() = default;
    VarAssignment(std::initializer_list<std::pair<std::string, V>> values) : values_(values) {}

    void set(std::string name, V value)
    {
        for (auto& [n, v] : values_) {
            if (n == name) {
                v = std::move(value);
                return;
            }
        }
        values_.emplace_back(std::move(name), std::move(value));
    }

    /// Values in the order of `vars`; throws DataError if one is missing.
    std::vector<V> ordered(const VarSet& vars) const
    {
        std::vector<V> out;
        out.reserve(vars.size());
        for (const auto& name : vars.names()) {
            const V* found = nullptr;
            for (const auto& [n, v] : values_) {
                if (n == name) {
                    found = &v;
                }
            }
            if (found == nullptr) {
                throw DataError("no value assigned to variable '" + name + "'");
            }
            out.push_back(*found);
        }
        return out;
    }

private:
    std::vector<std::pair<std::string, V>> values_;
};

// Positional evaluation: values[i] is the value of vars().name(i).
double eval_real(const Expr& e, std::span<const double> values);
std::complex<double> eval_complex(const Expr& e, std::span<const std::complex<double>> values);
/// All values must share one order; the result has that order. At least
/// one value is required to fix the order.
RealSeries eval_series(const Expr& e, std::span<const RealSeries> values);

double eval_real(const Expr& e, const VarAssignment<double>& a);
std::complex<double> eval_complex(const Expr& e, const VarAssignment<std::complex<double>>& a);
RealSeries eval_series(const Expr& e, const VarAssignment<RealSeries>& a);

/// Convenience for single-variable curve expressions.
inline double eval_at(const Expr& e, double s) { return eval_real(e, std::span<const double>(&s, 1)); }
Vec3 eval_at(const VecExpr3& e, double s);

} // namespace bjorling
