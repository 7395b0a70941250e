#pragma once

#include <random>
#include <utility>
#include <vector>

#include "isoprod/expr.hpp"
#include "isoprod/geometry.hpp"

namespace testsupport {

using isoprod::Expr;

inline double uniform(std::mt19937& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int pick(std::mt19937& rng, int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
}

/// Structurally positive expression over (x, y): every subtree is strictly
/// positive on the whole positive orthant, so log/pow/div never leave their
/// domains regardless of where the tree is evaluated.
inline Expr random_positive_expr(std::mt19937& rng, int depth) {
    if (depth <= 0) {
        switch (pick(rng, 3)) {
            case 0: return Expr::var("x");
            case 1: return Expr::var("y");
            default: return Expr::constant(uniform(rng, 0.5, 2.5));
        }
    }
    switch (pick(rng, 6)) {
        case 0: return random_positive_expr(rng, depth - 1) + random_positive_expr(rng, depth - 1);
        case 1: return random_positive_expr(rng, depth - 1) * random_positive_expr(rng, depth - 1);
        case 2: return random_positive_expr(rng, depth - 1) / random_positive_expr(rng, depth - 1);
        case 3: {
            static constexpr double exponents[] = {-2.0, -1.5, -1.0, -0.5, 0.5, 1.5, 2.0, 3.0};
            return pow(random_positive_expr(rng, depth - 1), exponents[pick(rng, 8)]);
        }
        case 4: {
            const Expr arg = pick(rng, 2) ? Expr::var("x") : Expr::var("y");
            return exp(Expr::constant(uniform(rng, -0.6, 0.6)) * arg);
        }
        default:
            // argument > 1.5, so the log itself stays positive
            return log(random_positive_expr(rng, depth - 1) + 1.5);
    }
}

/// Smooth test surface; occasionally a difference of positive trees so the
/// value can change sign.
inline Expr random_smooth_expr(std::mt19937& rng, int depth) {
    Expr e = random_positive_expr(rng, depth);
    if (pick(rng, 3) == 0) return e - random_positive_expr(rng, depth - 1);
    return e;
}

/// True when h and its Hessian stay within |.| <= bound at all points;
/// keeps finite-difference comparisons well-conditioned.
inline bool tame_at(const Expr& h, const std::vector<std::pair<double, double>>& points,
                    double bound) {
    try {
        const isoprod::MongeCurvature mc(h);
        for (const auto& [x, y] : points) {
            const double v = isoprod::eval(h, isoprod::Valuation{{"x", x}, {"y", y}});
            const isoprod::Hessian hess = mc.hessian(x, y);
            for (double entry : {v, hess.hxx, hess.hxy, hess.hyy})
                if (std::abs(entry) > bound) return false;
        }
    } catch (const isoprod::EvalError&) {
        return false;
    }
    return true;
}

/// |a - b| <= tol * (1 + |b|)
inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::abs(b));
}

}  // namespace testsupport
