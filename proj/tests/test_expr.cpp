#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "isoprod/expr.hpp"
#include "support.hpp"

using namespace isoprod;
using testsupport::random_smooth_expr;

namespace {

const std::initializer_list<VarInterval> kBoxXY = {{"x", 0.1, 10.0}, {"y", 0.1, 10.0}};
const std::initializer_list<VarInterval> kBoxX = {{"x", 0.1, 10.0}};

}  // namespace

TEST_CASE("parse builds the grammar-forced tree") {
    CHECK(parse("x*y") == Expr::mul(Expr::var("x"), Expr::var("y")));
    CHECK(parse("2*exp(3*x)") ==
          Expr::mul(Expr::constant(2.0), Expr::exp(Expr::mul(Expr::constant(3.0), Expr::var("x")))));
    CHECK(parse("x+y*z") == Expr::add(Expr::var("x"), Expr::mul(Expr::var("y"), Expr::var("z"))));
    CHECK(parse("x-y-z") ==
          Expr::sub(Expr::sub(Expr::var("x"), Expr::var("y")), Expr::var("z")));
    CHECK(parse("(x+y)*z") == Expr::mul(Expr::add(Expr::var("x"), Expr::var("y")), Expr::var("z")));
    CHECK(parse("log(x)") == Expr::log(Expr::var("x")));
    CHECK(parse(" x * y ") == parse("x*y"));
}

TEST_CASE("power is right-associative and binds above unary minus") {
    CHECK(parse("x^2^3") ==
          Expr::pow(Expr::var("x"), Expr::pow(Expr::constant(2.0), Expr::constant(3.0))));
    CHECK(parse("-x^2") == Expr::neg(Expr::pow(Expr::var("x"), Expr::constant(2.0))));
    CHECK(parse("x^-2") == Expr::pow(Expr::var("x"), Expr::neg(Expr::constant(2.0))));
    CHECK(parse("--x") == Expr::neg(Expr::neg(Expr::var("x"))));
}

TEST_CASE("numbers accept fraction and exponent forms") {
    CHECK(parse("1.5e-3") == Expr::constant(1.5e-3));
    CHECK(parse(".5") == Expr::constant(0.5));
    CHECK(parse("2.") == Expr::constant(2.0));
    CHECK(parse("1e5") == Expr::constant(1e5));
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK_THROWS_AS(parse("x +"), ParseError);
    try {
        parse("x +");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
    try {
        parse("sin(x)");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unknown function") != std::string::npos);
        CHECK(e.offset() == 0);
    }
    CHECK_THROWS_AS(parse("(x+y"), ParseError);
    CHECK_THROWS_AS(parse("2x"), ParseError);
    CHECK_THROWS_AS(parse("x $ y"), ParseError);
}

TEST_CASE("declared-variable list rejects unknown variables") {
    const std::vector<std::string> xy = {"x", "y"};
    CHECK(parse("x*y", xy) == parse("x*y"));
    try {
        parse("x*z", xy);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unknown variable 'z'") != std::string::npos);
        CHECK(e.offset() == 2);
    }
}

TEST_CASE("eval on the positive orthant") {
    CHECK(eval(parse("x*y"), Env{{"x", 2.0}, {"y", 3.0}}) == 6.0);
    CHECK(eval(parse("x^0.5"), Env{{"x", 4.0}}) == 2.0);
    CHECK(eval(parse("2*exp(3*x)"), Valuation{{"x", 0.0}}) == 2.0);
    CHECK(eval(parse("x^0"), Valuation{{"x", 0.0}}) == 1.0);
}

TEST_CASE("partial operations report domain errors, never non-finite values") {
    CHECK_THROWS_AS(eval(parse("log(x)"), Valuation{{"x", 0.0}}), EvalError);
    CHECK_THROWS_AS(eval(parse("log(x-1)"), Valuation{{"x", 0.5}}), EvalError);
    CHECK_THROWS_AS(eval(parse("1/(x-1)"), Valuation{{"x", 1.0}}), EvalError);
    CHECK_THROWS_AS(eval(parse("x^0.5"), Valuation{{"x", -1.0}}), EvalError);
    CHECK_THROWS_AS(eval(parse("x^-1"), Valuation{{"x", 0.0}}), EvalError);
    CHECK_THROWS_AS(eval(parse("exp(x)"), Valuation{{"x", 1000.0}}), EvalError);
    CHECK_THROWS_AS(eval(parse("x*y"), Valuation{{"x", 1.0}}), EvalError);  // unbound y
    CHECK(eval(parse("(-2)^3"), Valuation{}) == -8.0);
}

TEST_CASE("Env enforces strictly positive values") {
    Env env;
    CHECK_THROWS_AS(env.set("x", 0.0), std::invalid_argument);
    CHECK_THROWS_AS(env.set("x", -1.0), std::invalid_argument);
    env.set("x", 2.0);
    CHECK(eval(parse("x"), env) == 2.0);
}

TEST_CASE("diff on the basic calculus cases") {
    CHECK(diff(parse("x*y"), "x") == Expr::var("y"));
    CHECK(point_equal(diff(diff(parse("x^2*y"), "x"), "x"), parse("2*y"), kBoxXY, 50, 1e-9));

    // derived: independent central-difference oracle at x = 0
    const Expr d = diff(parse("exp(2*x)"), "x");
    const double at0 = eval(d, Valuation{{"x", 0.0}});
    CHECK(at0 == doctest::Approx(2.0).epsilon(1e-12));
    const double step = 1e-5;
    const double fd = (eval(parse("exp(2*x)"), Valuation{{"x", step}}) -
                       eval(parse("exp(2*x)"), Valuation{{"x", -step}})) /
                      (2.0 * step);
    CHECK(testsupport::close_rel(at0, fd, 1e-5));
}

TEST_CASE("diff agrees with central finite differences on random trees") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        const Expr e = random_smooth_expr(rng, 3);
        const Expr dx = diff(e, "x");
        for (int i = 0; i < 5; ++i) {
            const double x = testsupport::uniform(rng, 0.8, 3.0);
            const double y = testsupport::uniform(rng, 0.8, 3.0);
            const double step = 1e-6 * std::max(1.0, x);
            const double fd = (eval(e, Valuation{{"x", x + step}, {"y", y}}) -
                               eval(e, Valuation{{"x", x - step}, {"y", y}})) /
                              (2.0 * step);
            const double sym = eval(dx, Valuation{{"x", x}, {"y", y}});
            CHECK(testsupport::close_rel(sym, fd, 1e-5));
        }
    }
}

TEST_CASE("diff obeys the composition rules on random trees") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const Expr u = random_smooth_expr(rng, 2);
        const Expr v = random_smooth_expr(rng, 2);
        const Expr du = diff(u, "x");
        const Expr dv = diff(v, "x");
        // linearity
        CHECK(point_equal(diff(3.0 * u + 2.0 * v, "x"), 3.0 * du + 2.0 * dv, kBoxXY, 25, 1e-8));
        // product rule
        CHECK(point_equal(diff(u * v, "x"), du * v + u * dv, kBoxXY, 25, 1e-8));
        // chain rule through exp
        CHECK(point_equal(diff(exp(0.3 * u), "x"), exp(0.3 * u) * 0.3 * du, kBoxXY, 25, 1e-8));
    }
}

TEST_CASE("diff quotient and log rules on positive trees") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Expr u = testsupport::random_positive_expr(rng, 2);
        const Expr v = testsupport::random_positive_expr(rng, 2);
        const Expr du = diff(u, "y");
        const Expr dv = diff(v, "y");
        CHECK(point_equal(diff(u / v, "y"), (du * v - u * dv) / (v * v), kBoxXY, 25, 1e-8));
        CHECK(point_equal(diff(log(u), "y"), du / u, kBoxXY, 25, 1e-8));
        CHECK(point_equal(diff(pow(u, 1.7), "y"), 1.7 * pow(u, 0.7) * du, kBoxXY, 25, 1e-8));
    }
}

TEST_CASE("variable exponents differentiate through exp(p log b)") {
    const Expr e = parse("x^y");
    const Expr dx = diff(e, "x");
    const Expr dy = diff(e, "y");
    CHECK(point_equal(dx, parse("y*x^(y-1)"), kBoxXY, 40, 1e-8));
    CHECK(point_equal(dy, parse("x^y*log(x)"), kBoxXY, 40, 1e-8));
}

TEST_CASE("simplify applies the sound local rewrites") {
    CHECK(simplify(parse("0*x + y")) == Expr::var("y"));
    CHECK(simplify(parse("x^1")) == Expr::var("x"));
    CHECK(simplify(parse("2*3")) == Expr::constant(6.0));
    CHECK(simplify(parse("x*1 + 0")) == Expr::var("x"));
    CHECK(simplify(parse("x^0")) == Expr::constant(1.0));
    CHECK(simplify(parse("exp(0)")) == Expr::constant(1.0));
    // unsound folds are not applied
    CHECK(simplify(parse("1/0")) == parse("1/0"));
    CHECK(simplify(parse("log(0-1)")) == Expr::log(Expr::constant(-1.0)));
    CHECK_THROWS_AS(eval(simplify(parse("log(0-1)")), Valuation{}), EvalError);
}

TEST_CASE("simplify preserves value and derivative pointwise") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const Expr e = random_smooth_expr(rng, 3);
        CHECK(point_equal(simplify(e), e, kBoxXY, 25, 1e-9));
        CHECK(point_equal(diff(simplify(e), "x"), diff(e, "x"), kBoxXY, 25, 1e-8));
    }
}

TEST_CASE("point_equal on algebraic identities") {
    CHECK(point_equal(parse("(x+1)^2"), parse("x^2+2*x+1"), kBoxXY, 50, 1e-9));
    CHECK_FALSE(point_equal(parse("x*y"), parse("x+y"), kBoxXY, 50, 1e-9));
    CHECK(point_equal(diff(parse("x^3"), "x"), parse("3*x^2"), kBoxX, 50, 1e-9));
}

TEST_CASE("point_equal validates its domain") {
    CHECK_THROWS_AS(point_equal(parse("x"), parse("x"), {{"x", -1.0, 1.0}}, 10, 1e-9),
                    std::invalid_argument);
    CHECK_THROWS_AS(point_equal(parse("x"), parse("x"), kBoxX, 0, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(point_equal(parse("x*y"), parse("x"), kBoxX, 10, 1e-9), std::invalid_argument);
    // eval domain errors propagate
    CHECK_THROWS_AS(point_equal(parse("log(x-20)"), parse("x"), kBoxX, 10, 1e-9), EvalError);
}

TEST_CASE("to_string round-trips through parse") {
    // Negative constants have no literal form (unary minus is an operator),
    // so the reparse is point-equal and printing is stable after one pass.
    std::mt19937 rng(31);
    for (int trial = 0; trial < 80; ++trial) {
        const Expr e = random_smooth_expr(rng, 3);
        const Expr r = parse(to_string(e));
        CHECK(point_equal(r, e, kBoxXY, 20, 1e-12));
        CHECK(parse(to_string(r)) == r);
    }
    CHECK(parse(to_string(parse("x^-2"))) == parse("x^(-2)"));
}

TEST_CASE("substitute rewrites variables") {
    const Expr e = substitute(parse("x*y"), "x", parse("u1"));
    CHECK(e == Expr::mul(Expr::var("u1"), Expr::var("y")));
    const Expr shifted = substitute(parse("x^2"), "x", parse("x+1"));
    CHECK(point_equal(shifted, parse("(x+1)^2"), kBoxX, 30, 1e-9));
}

TEST_CASE("expressions are immutable values") {
    const Expr x = Expr::var("x");
    const Expr e = x + 1.0;
    const Expr f = e * e;
    CHECK(e == Expr::add(Expr::var("x"), Expr::constant(1.0)));
    CHECK(f.lhs() == e);  // shared child, same structure
}
