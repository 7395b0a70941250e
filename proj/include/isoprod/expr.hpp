#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isoprod {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error; offset() is the byte position of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation failure: unbound variable, or a partial operation applied
/// outside its domain (log of a non-positive value, division by zero,
/// zero to a negative power, negative base with fractional exponent).
/// Evaluation never returns a non-finite value silently.
class EvalError : public Error {
public:
    using Error::Error;
};

/// Immutable expression tree over named variables.
class Expr {
public:
    enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Log };

    Expr();  // Const(0)

    // Verbatim node construction; no rewriting. The arithmetic operators
    // below fold trivial identities and are what diff/simplify build with.
    static Expr constant(double value);
    static Expr var(std::string name);
    static Expr neg(Expr e);
    static Expr add(Expr l, Expr r);
    static Expr sub(Expr l, Expr r);
    static Expr mul(Expr l, Expr r);
    static Expr div(Expr l, Expr r);
    static Expr pow(Expr base, Expr exponent);
    static Expr exp(Expr e);
    static Expr log(Expr e);

    Kind kind() const noexcept;
    bool is(Kind k) const noexcept { return kind() == k; }
    bool is_const() const noexcept { return kind() == Kind::Const; }
    bool is_const(double v) const noexcept;
    double value() const;             // Const only
    const std::string& name() const;  // Var only
    Expr lhs() const;                 // first child (unary operand)
    Expr rhs() const;                 // second child

    friend bool operator==(const Expr& a, const Expr& b);  // structural
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Identity-folding builders: constant folding plus 0+e, e*1, 0*e, e^1, e^0,
// -(-e) and friends. Every rewrite is point-equal on the operand's domain.
Expr operator-(const Expr& e);
Expr operator+(const Expr& l, const Expr& r);
Expr operator-(const Expr& l, const Expr& r);
Expr operator*(const Expr& l, const Expr& r);
Expr operator/(const Expr& l, const Expr& r);
Expr pow(const Expr& base, const Expr& exponent);
Expr exp(const Expr& e);
Expr log(const Expr& e);

inline Expr operator+(const Expr& l, double r) { return l + Expr::constant(r); }
inline Expr operator+(double l, const Expr& r) { return Expr::constant(l) + r; }
inline Expr operator-(const Expr& l, double r) { return l - Expr::constant(r); }
inline Expr operator-(double l, const Expr& r) { return Expr::constant(l) - r; }
inline Expr operator*(const Expr& l, double r) { return l * Expr::constant(r); }
inline Expr operator*(double l, const Expr& r) { return Expr::constant(l) * r; }
inline Expr operator/(const Expr& l, double r) { return l / Expr::constant(r); }
inline Expr operator/(double l, const Expr& r) { return Expr::constant(l) / r; }
inline Expr pow(const Expr& base, double exponent) { return pow(base, Expr::constant(exponent)); }

/// Flat name -> value binding with no sign constraint. Used wherever
/// expressions are evaluated at arbitrary points (parameter domains,
/// finite-difference stencils).
class Valuation {
public:
    Valuation() = default;
    Valuation(std::initializer_list<std::pair<std::string, double>> init);
    void set(std::string name, double value);          // upsert
    const double* find(std::string_view name) const;   // nullptr if absent
    bool contains(std::string_view name) const { return find(name) != nullptr; }
    const std::vector<std::pair<std::string, double>>& items() const { return items_; }

private:
    std::vector<std::pair<std::string, double>> items_;
};

/// Production-side binding: inputs live in the positive orthant, so Env
/// rejects non-positive (or non-finite) values at insertion.
class Env {
public:
    Env() = default;
    Env(std::initializer_list<std::pair<std::string, double>> init);
    void set(std::string name, double value);
    const Valuation& values() const { return vals_; }

private:
    Valuation vals_;
};

double eval(const Expr& e, const Valuation& vars);
double eval(const Expr& e, const Env& env);

/// Exact symbolic derivative with respect to `var`; closed over the grammar.
Expr diff(const Expr& e, std::string_view var);

/// Bottom-up application of the folding rewrites; point-equal to the input
/// on its domain. Deliberately non-canonicalizing.
Expr simplify(const Expr& e);

Expr substitute(const Expr& e, std::string_view var, const Expr& replacement);

std::vector<std::string> free_variables(const Expr& e);  // sorted, unique

std::string to_string(const Expr& e);  // reparseable infix form

Expr parse(std::string_view text);
Expr parse(std::string_view text, std::span<const std::string> declared_variables);

struct VarInterval {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
};

/// True iff |a-b| <= tol*(1+|a|) at every sampled point of the box.
/// Sampling is low-discrepancy (Halton) and deterministic given the seed.
/// The box must lie strictly inside the positive orthant.
bool point_equal(const Expr& a, const Expr& b, std::span<const VarInterval> domain,
                 int samples, double tol, std::uint64_t seed = 42);
bool point_equal(const Expr& a, const Expr& b, std::initializer_list<VarInterval> domain,
                 int samples, double tol, std::uint64_t seed = 42);

}  // namespace isoprod
