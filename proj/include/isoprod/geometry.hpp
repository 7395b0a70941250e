#pragma once

#include <array>

#include "isoprod/expr.hpp"

namespace isoprod {

struct Point2 {
    double u1 = 0.0;
    double u2 = 0.0;
};

using Point3 = std::array<double, 3>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
    bool contains(double v) const { return v >= lo && v <= hi; }
};

struct Box2 {
    Interval u1, u2;
    bool contains(Point2 p) const { return u1.contains(p.u1) && u2.contains(p.u2); }
};

struct Metric {
    double g11 = 0.0, g12 = 0.0, g22 = 0.0;
    double det() const { return g11 * g22 - g12 * g12; }
};

struct SecondForm {
    double t11 = 0.0, t12 = 0.0, t22 = 0.0;
};

struct FundamentalForms {
    double g11 = 0.0, g12 = 0.0, g22 = 0.0;
    double t11 = 0.0, t12 = 0.0, t22 = 0.0;
};

struct Curvatures {
    double K = 0.0;  // relative curvature
    double H = 0.0;  // isotropic mean curvature
};

struct Hessian {
    double hxx = 0.0, hxy = 0.0, hyy = 0.0;
};

/// Six-parameter isotropic congruence: Euclidean motion of the top-view
/// plane plus an affine shear in the isotropic direction.
///   x1' = a + x1 cos(phi) - x2 sin(phi)
///   x2' = b + x1 sin(phi) + x2 cos(phi)
///   x3' = c + d x1 + e x2 + x3
struct IMotion {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0;
    double phi = 0.0;  // radians
};

Point3 apply_i_motion(const IMotion& m, const Point3& p);

/// Euclidean distance of the top views; degenerate along isotropic lines.
double i_distance(const Point3& p, const Point3& q);

/// det(g) above this is treated as an immersive top view.
inline constexpr double kAdmissibilityThreshold = 1e-12;

/// Surface r(u1,u2) = (r1,r2,r3) with smooth components over (u1,u2).
/// First and second symbolic derivatives are formed once at construction;
/// point queries only evaluate them.
class ParametricSurface {
public:
    ParametricSurface(Expr r1, Expr r2, Expr r3, Box2 domain);

    /// Graph surface (u1, u2, h(u1,u2)) from h over (x, y).
    static ParametricSurface from_monge(const Expr& h, const Box2& domain);

    const Expr& component(int i) const { return r_[static_cast<std::size_t>(i)]; }
    const Box2& domain() const { return domain_; }

    Metric induced_metric(Point2 p) const;
    bool is_admissible(Point2 p) const;
    SecondForm second_fundamental_form(Point2 p) const;  // requires admissibility
    FundamentalForms fundamental_forms(Point2 p) const;
    Curvatures curvatures(Point2 p) const;

private:
    std::array<double, 3> eval3(const std::array<Expr, 3>& v, Point2 p) const;

    std::array<Expr, 3> r_;
    Box2 domain_;
    std::array<Expr, 3> du1_, du2_;            // first derivatives, per component
    std::array<Expr, 3> d11_, d12_, d22_;      // second derivatives, per component
};

Metric induced_metric(const ParametricSurface& s, Point2 p);
SecondForm second_fundamental_form(const ParametricSurface& s, Point2 p);
Curvatures curvatures_parametric(const ParametricSurface& s, Point2 p);
bool is_admissible(const ParametricSurface& s, Point2 p);

/// Composes the motion with the immersion: the image surface over the same
/// parameter domain.
ParametricSurface apply_i_motion(const IMotion& m, const ParametricSurface& s);

/// Graph surface z = h(x,y) over a box in the positive orthant.
struct MongeSurface {
    Expr h;
    Box2 domain;
};

/// Cached symbolic Hessian of h(x,y); grid sweeps reuse the three
/// derivative expressions instead of re-deriving them per point.
class MongeCurvature {
public:
    explicit MongeCurvature(const Expr& h);
    Hessian hessian(double x, double y) const;
    Curvatures at(double x, double y) const;  // K = det Hess, H = trace Hess

private:
    Expr hxx_, hxy_, hyy_;
};

Curvatures curvatures_monge(const Expr& h, Point2 p);

}  // namespace isoprod
