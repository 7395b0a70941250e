#pragma once

#include "isoprod/expr.hpp"
#include "isoprod/geometry.hpp"

namespace isoprod {

/// Central second differences with Richardson extrapolation. The step is
/// scaled per coordinate by max(1, |coordinate|) and must stay below a
/// tenth of the distance to the positive-orthant boundary.
struct FDConfig {
    double step = 1e-4;
    int richardson_levels = 2;
};

/// Second partials of h at p by finite differences only; shares no code
/// with the symbolic differentiator so it can catch its bugs.
Hessian fd_hessian(const Expr& h, Point2 p, const FDConfig& cfg = {});

/// K = det(Hess), H = trace(Hess) applied to fd_hessian output.
Curvatures fd_curvatures(const Expr& h, Point2 p, const FDConfig& cfg = {});

}  // namespace isoprod
