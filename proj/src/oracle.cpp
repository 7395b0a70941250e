#include "isoprod/oracle.hpp"

#include <cmath>
#include <vector>

namespace isoprod {

namespace {

void validate(const FDConfig& cfg, Point2 p, double sx, double sy) {
    if (!(cfg.step > 0.0)) throw std::invalid_argument("fd: step must be positive");
    if (cfg.richardson_levels < 0 || cfg.richardson_levels > 8)
        throw std::invalid_argument("fd: richardson_levels out of range");
    // The coarsest rung is the widest stencil; keep it inside the positive
    // orthant with headroom.
    const double widest = static_cast<double>(1 << cfg.richardson_levels);
    if (widest * sx > 0.1 * p.u1 || widest * sy > 0.1 * p.u2)
        throw EvalError("fd: step exceeds a tenth of the distance to the domain boundary");
}

double eval_at(const Expr& h, double x, double y) {
    return eval(h, Valuation{{"x", x}, {"y", y}});
}

// Richardson ladder for an O(s^2) central-difference estimator. The config
// step is the finest rung; coarser rungs at step*2^i feed the extrapolation,
// which keeps the roundoff floor at the base step instead of dividing it.
template <typename Estimate>
double richardson(int levels, double step, Estimate estimate) {
    std::vector<double> row(static_cast<std::size_t>(levels) + 1);
    for (int i = 0; i <= levels; ++i)
        row[static_cast<std::size_t>(i)] = estimate(step * (1 << (levels - i)));
    double factor = 1.0;
    for (int j = 1; j <= levels; ++j) {
        factor *= 4.0;
        for (int i = levels; i >= j; --i)
            row[static_cast<std::size_t>(i)] =
                (factor * row[static_cast<std::size_t>(i)] - row[static_cast<std::size_t>(i - 1)]) /
                (factor - 1.0);
    }
    return row[static_cast<std::size_t>(levels)];
}

}  // namespace

Hessian fd_hessian(const Expr& h, Point2 p, const FDConfig& cfg) {
    const double sx = cfg.step * std::max(1.0, std::abs(p.u1));
    const double sy = cfg.step * std::max(1.0, std::abs(p.u2));
    validate(cfg, p, sx, sy);

    const double hxx = richardson(cfg.richardson_levels, sx, [&](double s) {
        return (eval_at(h, p.u1 + s, p.u2) - 2.0 * eval_at(h, p.u1, p.u2) +
                eval_at(h, p.u1 - s, p.u2)) /
               (s * s);
    });
    const double hyy = richardson(cfg.richardson_levels, sy, [&](double s) {
        return (eval_at(h, p.u1, p.u2 + s) - 2.0 * eval_at(h, p.u1, p.u2) +
                eval_at(h, p.u1, p.u2 - s)) /
               (s * s);
    });
    // Mixed partial: both steps shrink together through the ladder.
    const double ratio = sy / sx;
    const double hxy = richardson(cfg.richardson_levels, sx, [&](double s) {
        const double t = s * ratio;
        return (eval_at(h, p.u1 + s, p.u2 + t) - eval_at(h, p.u1 + s, p.u2 - t) -
                eval_at(h, p.u1 - s, p.u2 + t) + eval_at(h, p.u1 - s, p.u2 - t)) /
               (4.0 * s * t);
    });
    return {hxx, hxy, hyy};
}

Curvatures fd_curvatures(const Expr& h, Point2 p, const FDConfig& cfg) {
    const Hessian hess = fd_hessian(h, p, cfg);
    return {hess.hxx * hess.hyy - hess.hxy * hess.hxy, hess.hxx + hess.hyy};
}

}  // namespace isoprod
