#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "isoprod/expr.hpp"

namespace isoprod {

/// h(x) = A x1^a1 ... xn^an, A > 0, a_i > 0. Two-variable instances use
/// variables (x, y); n-variable instances use x1..xn.
struct CobbDouglas {
    CobbDouglas(double A, std::vector<double> alphas);
    double A;
    std::vector<double> alphas;
};

/// h(x,y) = A [1 - exp(a x)][1 - exp(b y)], A > 0, a < 0, b < 0.
struct SpillmanMitscherlich {
    SpillmanMitscherlich(double A, double a, double b);
    double A, a, b;
};

/// h(x,y) = A x^a1 exp(b1 x) y^a2 exp(b2 y), A > 0, a_i^2 + b_i^2 != 0.
struct Transcendental {
    Transcendental(double A, double a1, double b1, double a2, double b2);
    double A, a1, b1, a2, b2;
};

/// h(x,y) = f(x) g(y). Factors of a genuine production function are
/// positive with nonvanishing first derivative; a factor that fails the
/// numeric probe marks the model economically degenerate instead of
/// failing construction (the degenerate cases are still meaningful
/// mathematically).
struct Product {
    Product(Expr f, Expr g);
    Expr f, g;
    bool economically_degenerate = false;
};

struct Custom {
    explicit Custom(Expr h);
    Expr h;
};

using ProductionModel = std::variant<CobbDouglas, SpillmanMitscherlich, Transcendental, Product, Custom>;

Expr to_expr(const ProductionModel& m);

/// Variables of the model's expression, in evaluation order.
std::vector<std::string> model_variables(const ProductionModel& m);

enum class ScaleClass { decreasing, constant, increasing, not_homogeneous };

std::string_view to_string(ScaleClass s);

struct HomogeneityReport {
    bool is_homogeneous = false;
    std::optional<double> degree;
    ScaleClass scale_class = ScaleClass::not_homogeneous;
    double residual = 0.0;  // max deviation of the degree estimates
};

/// Numeric homogeneity test: estimates p from h(l*x)/h(x) over a
/// deterministic sample of base points and scale factors l in {0.5, 2, 3}.
/// Homogeneous iff the spread of the estimates is <= tol.
HomogeneityReport homogeneity_degree(const ProductionModel& m, double tol);

/// Scale classification of a homogeneous report; throws std::invalid_argument
/// if the report is not homogeneous.
ScaleClass returns_to_scale(const HomogeneityReport& r);

/// JSON model literals, e.g. {"type":"cobb_douglas","A":1,"alphas":[0.5,0.5]}.
ProductionModel model_from_json(const std::string& json_text);
std::string model_to_json(const ProductionModel& m);

}  // namespace isoprod
