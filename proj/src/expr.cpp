#include "isoprod/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "isoprod/sampling.hpp"

namespace isoprod {

ParseError::ParseError(const std::string& message, std::size_t offset)
    : Error(message + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}

struct Expr::Node {
    Kind kind;
    double value = 0.0;  // Const
    std::string name;    // Var
    std::shared_ptr<const Node> a, b;
};

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("expression constant must be finite");
    return Expr(std::make_shared<const Node>(Node{Kind::Const, value, {}, nullptr, nullptr}));
}

Expr Expr::var(std::string name) {
    if (name.empty()) throw std::invalid_argument("variable name must be non-empty");
    return Expr(std::make_shared<const Node>(Node{Kind::Var, 0.0, std::move(name), nullptr, nullptr}));
}

Expr Expr::neg(Expr e) {
    return Expr(std::make_shared<const Node>(Node{Kind::Neg, 0.0, {}, std::move(e.node_), nullptr}));
}
Expr Expr::add(Expr l, Expr r) {
    return Expr(std::make_shared<const Node>(Node{Kind::Add, 0.0, {}, std::move(l.node_), std::move(r.node_)}));
}
Expr Expr::sub(Expr l, Expr r) {
    return Expr(std::make_shared<const Node>(Node{Kind::Sub, 0.0, {}, std::move(l.node_), std::move(r.node_)}));
}
Expr Expr::mul(Expr l, Expr r) {
    return Expr(std::make_shared<const Node>(Node{Kind::Mul, 0.0, {}, std::move(l.node_), std::move(r.node_)}));
}
Expr Expr::div(Expr l, Expr r) {
    return Expr(std::make_shared<const Node>(Node{Kind::Div, 0.0, {}, std::move(l.node_), std::move(r.node_)}));
}
Expr Expr::pow(Expr base, Expr exponent) {
    return Expr(std::make_shared<const Node>(
        Node{Kind::Pow, 0.0, {}, std::move(base.node_), std::move(exponent.node_)}));
}
Expr Expr::exp(Expr e) {
    return Expr(std::make_shared<const Node>(Node{Kind::Exp, 0.0, {}, std::move(e.node_), nullptr}));
}
Expr Expr::log(Expr e) {
    return Expr(std::make_shared<const Node>(Node{Kind::Log, 0.0, {}, std::move(e.node_), nullptr}));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

bool Expr::is_const(double v) const noexcept {
    return node_->kind == Kind::Const && node_->value == v;
}

double Expr::value() const {
    if (node_->kind != Kind::Const) throw std::logic_error("value() on non-constant expression");
    return node_->value;
}

const std::string& Expr::name() const {
    if (node_->kind != Kind::Var) throw std::logic_error("name() on non-variable expression");
    return node_->name;
}

Expr Expr::lhs() const {
    if (!node_->a) throw std::logic_error("lhs() on leaf expression");
    return Expr(node_->a);
}

Expr Expr::rhs() const {
    if (!node_->b) throw std::logic_error("rhs() on non-binary expression");
    return Expr(node_->b);
}

bool operator==(const Expr& a, const Expr& b) {
    const Expr::Node* l = a.node_.get();
    const Expr::Node* r = b.node_.get();
    if (l == r) return true;
    if (l->kind != r->kind) return false;
    switch (l->kind) {
        case Expr::Kind::Const: return l->value == r->value;
        case Expr::Kind::Var: return l->name == r->name;
        default: break;
    }
    if (static_cast<bool>(l->b) != static_cast<bool>(r->b)) return false;
    if (!(Expr(l->a) == Expr(r->a))) return false;
    return !l->b || Expr(l->b) == Expr(r->b);
}

// ---------------------------------------------------------------------------
// Folding builders

Expr operator-(const Expr& e) {
    if (e.is_const()) return Expr::constant(-e.value());
    if (e.is(Expr::Kind::Neg)) return e.lhs();
    return Expr::neg(e);
}

Expr operator+(const Expr& l, const Expr& r) {
    if (l.is_const(0.0)) return r;
    if (r.is_const(0.0)) return l;
    if (l.is_const() && r.is_const()) return Expr::constant(l.value() + r.value());
    return Expr::add(l, r);
}

Expr operator-(const Expr& l, const Expr& r) {
    if (r.is_const(0.0)) return l;
    if (l.is_const() && r.is_const()) return Expr::constant(l.value() - r.value());
    if (l.is_const(0.0)) return -r;
    return Expr::sub(l, r);
}

Expr operator*(const Expr& l, const Expr& r) {
    if (l.is_const(0.0) || r.is_const(0.0)) return Expr::constant(0.0);
    if (l.is_const(1.0)) return r;
    if (r.is_const(1.0)) return l;
    if (l.is_const() && r.is_const()) {
        double v = l.value() * r.value();
        if (std::isfinite(v)) return Expr::constant(v);
    }
    return Expr::mul(l, r);
}

Expr operator/(const Expr& l, const Expr& r) {
    if (r.is_const(1.0)) return l;
    if (l.is_const() && r.is_const() && r.value() != 0.0) {
        double v = l.value() / r.value();
        if (std::isfinite(v)) return Expr::constant(v);
    }
    return Expr::div(l, r);
}

namespace {

bool is_integral(double v) { return std::isfinite(v) && v == std::nearbyint(v); }

// Shared domain checks for x^y; returns the value or throws EvalError.
double checked_pow(double base, double exponent) {
    if (base == 0.0 && exponent < 0.0) throw EvalError("zero raised to a negative power");
    if (base < 0.0 && !is_integral(exponent))
        throw EvalError("negative base raised to a non-integer power");
    return std::pow(base, exponent);
}

}  // namespace

Expr pow(const Expr& base, const Expr& exponent) {
    if (exponent.is_const(1.0)) return base;
    if (exponent.is_const(0.0)) return Expr::constant(1.0);
    if (base.is_const(1.0)) return Expr::constant(1.0);
    if (base.is_const() && exponent.is_const()) {
        double b = base.value(), e = exponent.value();
        if (b > 0.0 || (b != 0.0 && is_integral(e)) || (b == 0.0 && e > 0.0)) {
            double v = std::pow(b, e);
            if (std::isfinite(v)) return Expr::constant(v);
        }
    }
    return Expr::pow(base, exponent);
}

Expr exp(const Expr& e) {
    if (e.is_const()) {
        double v = std::exp(e.value());
        if (std::isfinite(v)) return Expr::constant(v);
    }
    return Expr::exp(e);
}

Expr log(const Expr& e) {
    if (e.is_const() && e.value() > 0.0) return Expr::constant(std::log(e.value()));
    return Expr::log(e);
}

// ---------------------------------------------------------------------------
// Bindings

Valuation::Valuation(std::initializer_list<std::pair<std::string, double>> init) {
    for (const auto& [name, value] : init) set(name, value);
}

void Valuation::set(std::string name, double value) {
    for (auto& item : items_) {
        if (item.first == name) {
            item.second = value;
            return;
        }
    }
    items_.emplace_back(std::move(name), value);
}

const double* Valuation::find(std::string_view name) const {
    for (const auto& item : items_)
        if (item.first == name) return &item.second;
    return nullptr;
}

Env::Env(std::initializer_list<std::pair<std::string, double>> init) {
    for (const auto& [name, value] : init) set(name, value);
}

void Env::set(std::string name, double value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument("Env value for '" + name + "' must be strictly positive");
    vals_.set(std::move(name), value);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

std::string fmt_double(double v) {
    if (is_integral(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double finite_or_throw(double v, const char* op) {
    if (!std::isfinite(v)) throw EvalError(std::string("non-finite result in '") + op + "'");
    return v;
}

}  // namespace

double eval(const Expr& e, const Valuation& vars) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Const: return e.value();
        case K::Var: {
            const double* v = vars.find(e.name());
            if (!v) throw EvalError("unbound variable '" + e.name() + "'");
            return *v;
        }
        case K::Neg: return -eval(e.lhs(), vars);
        case K::Add: return finite_or_throw(eval(e.lhs(), vars) + eval(e.rhs(), vars), "+");
        case K::Sub: return finite_or_throw(eval(e.lhs(), vars) - eval(e.rhs(), vars), "-");
        case K::Mul: return finite_or_throw(eval(e.lhs(), vars) * eval(e.rhs(), vars), "*");
        case K::Div: {
            double den = eval(e.rhs(), vars);
            if (den == 0.0) throw EvalError("division by zero");
            return finite_or_throw(eval(e.lhs(), vars) / den, "/");
        }
        case K::Pow:
            return finite_or_throw(checked_pow(eval(e.lhs(), vars), eval(e.rhs(), vars)), "^");
        case K::Exp: return finite_or_throw(std::exp(eval(e.lhs(), vars)), "exp");
        case K::Log: {
            double v = eval(e.lhs(), vars);
            if (!(v > 0.0)) throw EvalError("log of non-positive value " + fmt_double(v));
            return std::log(v);
        }
    }
    throw std::logic_error("unreachable expression kind");
}

double eval(const Expr& e, const Env& env) { return eval(e, env.values()); }

// ---------------------------------------------------------------------------
// Differentiation

Expr diff(const Expr& e, std::string_view var) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Const: return Expr::constant(0.0);
        case K::Var: return Expr::constant(e.name() == var ? 1.0 : 0.0);
        case K::Neg: return -diff(e.lhs(), var);
        case K::Add: return diff(e.lhs(), var) + diff(e.rhs(), var);
        case K::Sub: return diff(e.lhs(), var) - diff(e.rhs(), var);
        case K::Mul: {
            Expr l = e.lhs(), r = e.rhs();
            return diff(l, var) * r + l * diff(r, var);
        }
        case K::Div: {
            Expr l = e.lhs(), r = e.rhs();
            return (diff(l, var) * r - l * diff(r, var)) / (r * r);
        }
        case K::Pow: {
            Expr base = e.lhs(), exponent = e.rhs();
            if (exponent.is_const()) {
                double c = exponent.value();
                return Expr::constant(c) * pow(base, Expr::constant(c - 1.0)) * diff(base, var);
            }
            // variable exponent: b^p == exp(p*log b) on the positive orthant
            return e * (diff(exponent, var) * log(base) + exponent * diff(base, var) / base);
        }
        case K::Exp: return e * diff(e.lhs(), var);
        case K::Log: return diff(e.lhs(), var) / e.lhs();
    }
    throw std::logic_error("unreachable expression kind");
}

// ---------------------------------------------------------------------------
// Rewrites

Expr simplify(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Const:
        case K::Var: return e;
        case K::Neg: return -simplify(e.lhs());
        case K::Add: return simplify(e.lhs()) + simplify(e.rhs());
        case K::Sub: return simplify(e.lhs()) - simplify(e.rhs());
        case K::Mul: return simplify(e.lhs()) * simplify(e.rhs());
        case K::Div: return simplify(e.lhs()) / simplify(e.rhs());
        case K::Pow: return pow(simplify(e.lhs()), simplify(e.rhs()));
        case K::Exp: return exp(simplify(e.lhs()));
        case K::Log: return log(simplify(e.lhs()));
    }
    throw std::logic_error("unreachable expression kind");
}

Expr substitute(const Expr& e, std::string_view var, const Expr& replacement) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Const: return e;
        case K::Var: return e.name() == var ? replacement : e;
        case K::Neg: return -substitute(e.lhs(), var, replacement);
        case K::Add: return substitute(e.lhs(), var, replacement) + substitute(e.rhs(), var, replacement);
        case K::Sub: return substitute(e.lhs(), var, replacement) - substitute(e.rhs(), var, replacement);
        case K::Mul: return substitute(e.lhs(), var, replacement) * substitute(e.rhs(), var, replacement);
        case K::Div: return substitute(e.lhs(), var, replacement) / substitute(e.rhs(), var, replacement);
        case K::Pow: return pow(substitute(e.lhs(), var, replacement), substitute(e.rhs(), var, replacement));
        case K::Exp: return exp(substitute(e.lhs(), var, replacement));
        case K::Log: return log(substitute(e.lhs(), var, replacement));
    }
    throw std::logic_error("unreachable expression kind");
}

namespace {

void collect_vars(const Expr& e, std::set<std::string>& out) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Const: return;
        case K::Var: out.insert(e.name()); return;
        case K::Neg:
        case K::Exp:
        case K::Log: collect_vars(e.lhs(), out); return;
        default:
            collect_vars(e.lhs(), out);
            collect_vars(e.rhs(), out);
            return;
    }
}

}  // namespace

std::vector<std::string> free_variables(const Expr& e) {
    std::set<std::string> vars;
    collect_vars(e, vars);
    return {vars.begin(), vars.end()};
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// precedence: + - (1)  * / (2)  unary - (3)  ^ (4)  atoms (5)
int precedence(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Add:
        case K::Sub: return 1;
        case K::Mul:
        case K::Div: return 2;
        case K::Neg: return 3;
        case K::Pow: return 4;
        default: return 5;
    }
}

void print_expr(const Expr& e, int min_prec, std::string& out) {
    const bool parens = precedence(e) < min_prec;
    if (parens) out += '(';
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Const: out += fmt_double(e.value()); break;
        case K::Var: out += e.name(); break;
        case K::Neg:
            out += '-';
            print_expr(e.lhs(), 4, out);
            break;
        case K::Add:
            print_expr(e.lhs(), 1, out);
            out += '+';
            print_expr(e.rhs(), 2, out);
            break;
        case K::Sub:
            print_expr(e.lhs(), 1, out);
            out += '-';
            print_expr(e.rhs(), 2, out);
            break;
        case K::Mul:
            print_expr(e.lhs(), 2, out);
            out += '*';
            print_expr(e.rhs(), 3, out);
            break;
        case K::Div:
            print_expr(e.lhs(), 2, out);
            out += '/';
            print_expr(e.rhs(), 3, out);
            break;
        case K::Pow:
            print_expr(e.lhs(), 5, out);
            out += '^';
            print_expr(e.rhs(), 4, out);
            break;
        case K::Exp:
        case K::Log:
            out += e.is(K::Exp) ? "exp(" : "log(";
            print_expr(e.lhs(), 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print_expr(e, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
//
// expr  := term (("+"|"-") term)*
// term  := unary (("*"|"/") unary)*
// unary := "-" unary | power
// power := atom ("^" unary)?
// atom  := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok type = Tok::End;
    std::size_t offset = 0;
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { next(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        next();
        return t;
    }

private:
    void next();
    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_;
};

void Lexer::next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t at = pos_;
    if (pos_ >= src_.size()) {
        tok_ = {Tok::End, at};
        return;
    }
    const char c = src_[pos_];
    switch (c) {
        case '+': ++pos_; tok_ = {Tok::Plus, at}; return;
        case '-': ++pos_; tok_ = {Tok::Minus, at}; return;
        case '*': ++pos_; tok_ = {Tok::Star, at}; return;
        case '/': ++pos_; tok_ = {Tok::Slash, at}; return;
        case '^': ++pos_; tok_ = {Tok::Caret, at}; return;
        case '(': ++pos_; tok_ = {Tok::LParen, at}; return;
        case ')': ++pos_; tok_ = {Tok::RParen, at}; return;
        default: break;
    }
    auto is_digit = [](char d) { return d >= '0' && d <= '9'; };
    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
        double value = 0.0;
        const char* begin = src_.data() + pos_;
        const char* end = src_.data() + src_.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || !std::isfinite(value))
            throw ParseError("invalid number literal", at);
        pos_ += static_cast<std::size_t>(ptr - begin);
        tok_ = {Tok::Number, at, value};
        return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t len = 0;
        while (pos_ + len < src_.size()) {
            char d = src_[pos_ + len];
            if (std::isalnum(static_cast<unsigned char>(d)) || d == '_')
                ++len;
            else
                break;
        }
        tok_ = {Tok::Ident, at, 0.0, std::string(src_.substr(pos_, len))};
        pos_ += len;
        return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
}

class Parser {
public:
    Parser(std::string_view src, std::span<const std::string> declared, bool check_vars)
        : lex_(src), declared_(declared), check_vars_(check_vars) {}

    Expr run() {
        Expr e = parse_expr();
        if (lex_.peek().type != Tok::End)
            throw ParseError("unexpected trailing input", lex_.peek().offset);
        return e;
    }

private:
    Expr parse_expr() {
        Expr e = parse_term();
        while (lex_.peek().type == Tok::Plus || lex_.peek().type == Tok::Minus) {
            Tok op = lex_.take().type;
            Expr r = parse_term();
            e = op == Tok::Plus ? Expr::add(e, r) : Expr::sub(e, r);
        }
        return e;
    }

    Expr parse_term() {
        Expr e = parse_unary();
        while (lex_.peek().type == Tok::Star || lex_.peek().type == Tok::Slash) {
            Tok op = lex_.take().type;
            Expr r = parse_unary();
            e = op == Tok::Star ? Expr::mul(e, r) : Expr::div(e, r);
        }
        return e;
    }

    Expr parse_unary() {
        if (lex_.peek().type == Tok::Minus) {
            lex_.take();
            return Expr::neg(parse_unary());
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (lex_.peek().type == Tok::Caret) {
            lex_.take();
            return Expr::pow(base, parse_unary());
        }
        return base;
    }

    Expr parse_atom() {
        const Token& t = lex_.peek();
        switch (t.type) {
            case Tok::Number: return Expr::constant(lex_.take().number);
            case Tok::Ident: {
                Token ident = lex_.take();
                if (lex_.peek().type == Tok::LParen) {
                    if (ident.text != "exp" && ident.text != "log")
                        throw ParseError("unknown function '" + ident.text + "'", ident.offset);
                    lex_.take();
                    Expr arg = parse_expr();
                    expect(Tok::RParen, "expected ')'");
                    return ident.text == "exp" ? Expr::exp(arg) : Expr::log(arg);
                }
                if (check_vars_ &&
                    std::find(declared_.begin(), declared_.end(), ident.text) == declared_.end())
                    throw ParseError("unknown variable '" + ident.text + "'", ident.offset);
                return Expr::var(std::move(ident.text));
            }
            case Tok::LParen: {
                lex_.take();
                Expr e = parse_expr();
                expect(Tok::RParen, "expected ')'");
                return e;
            }
            default: throw ParseError("expected expression", t.offset);
        }
    }

    void expect(Tok type, const char* message) {
        if (lex_.peek().type != type) throw ParseError(message, lex_.peek().offset);
        lex_.take();
    }

    Lexer lex_;
    std::span<const std::string> declared_;
    bool check_vars_;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text, {}, false).run(); }

Expr parse(std::string_view text, std::span<const std::string> declared_variables) {
    return Parser(text, declared_variables, true).run();
}

// ---------------------------------------------------------------------------
// Numeric equivalence

bool point_equal(const Expr& a, const Expr& b, std::span<const VarInterval> domain,
                 int samples, double tol, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("point_equal: samples must be >= 1");
    for (const auto& iv : domain) {
        if (!(iv.lo > 0.0) || !(iv.hi >= iv.lo) || !std::isfinite(iv.hi))
            throw std::invalid_argument(
                "point_equal: domain must lie strictly inside the positive orthant");
    }
    for (const Expr* e : {&a, &b}) {
        for (const auto& v : free_variables(*e)) {
            bool found = false;
            for (const auto& iv : domain) found |= iv.name == v;
            if (!found) throw std::invalid_argument("point_equal: domain missing variable '" + v + "'");
        }
    }
    Valuation vars;
    for (int i = 0; i < samples; ++i) {
        for (std::size_t d = 0; d < domain.size(); ++d)
            vars.set(domain[d].name, halton_in(domain[d].lo, domain[d].hi, seed + 1 + i, static_cast<unsigned>(d)));
        const double va = eval(a, vars);
        const double vb = eval(b, vars);
        if (std::abs(va - vb) > tol * (1.0 + std::abs(va))) return false;
    }
    return true;
}

bool point_equal(const Expr& a, const Expr& b, std::initializer_list<VarInterval> domain,
                 int samples, double tol, std::uint64_t seed) {
    return point_equal(a, b, std::span<const VarInterval>(domain.begin(), domain.size()),
                       samples, tol, seed);
}

}  // namespace isoprod
