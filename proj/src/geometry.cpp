#include "isoprod/geometry.hpp"

#include <cmath>
#include <string>

namespace isoprod {

Point3 apply_i_motion(const IMotion& m, const Point3& p) {
    const double c = std::cos(m.phi), s = std::sin(m.phi);
    return {m.a + p[0] * c - p[1] * s,
            m.b + p[0] * s + p[1] * c,
            m.c + m.d * p[0] + m.e * p[1] + p[2]};
}

double i_distance(const Point3& p, const Point3& q) {
    return std::hypot(q[0] - p[0], q[1] - p[1]);
}

namespace {

void require_vars(const Expr& e, std::initializer_list<std::string_view> allowed,
                  const char* what) {
    for (const auto& v : free_variables(e)) {
        bool ok = false;
        for (auto a : allowed) ok |= v == a;
        if (!ok)
            throw std::invalid_argument(std::string(what) + ": unexpected variable '" + v + "'");
    }
}

}  // namespace

ParametricSurface::ParametricSurface(Expr r1, Expr r2, Expr r3, Box2 domain)
    : r_{std::move(r1), std::move(r2), std::move(r3)}, domain_(domain) {
    for (const auto& c : r_) require_vars(c, {"u1", "u2"}, "ParametricSurface");
    for (std::size_t i = 0; i < 3; ++i) {
        du1_[i] = simplify(diff(r_[i], "u1"));
        du2_[i] = simplify(diff(r_[i], "u2"));
        d11_[i] = simplify(diff(du1_[i], "u1"));
        d12_[i] = simplify(diff(du1_[i], "u2"));
        d22_[i] = simplify(diff(du2_[i], "u2"));
    }
}

ParametricSurface ParametricSurface::from_monge(const Expr& h, const Box2& domain) {
    require_vars(h, {"x", "y"}, "from_monge");
    Expr h12 = substitute(substitute(h, "x", Expr::var("u1")), "y", Expr::var("u2"));
    return ParametricSurface(Expr::var("u1"), Expr::var("u2"), std::move(h12), domain);
}

std::array<double, 3> ParametricSurface::eval3(const std::array<Expr, 3>& v, Point2 p) const {
    const Valuation at{{"u1", p.u1}, {"u2", p.u2}};
    return {eval(v[0], at), eval(v[1], at), eval(v[2], at)};
}

Metric ParametricSurface::induced_metric(Point2 p) const {
    // The i-metric is degenerate in the z-direction: g_ij is the Euclidean
    // dot product of the top views of the tangent vectors.
    const auto t1 = eval3(du1_, p);
    const auto t2 = eval3(du2_, p);
    return {t1[0] * t1[0] + t1[1] * t1[1],
            t1[0] * t2[0] + t1[1] * t2[1],
            t2[0] * t2[0] + t2[1] * t2[1]};
}

bool ParametricSurface::is_admissible(Point2 p) const {
    return induced_metric(p).det() > kAdmissibilityThreshold;
}

namespace {

double det3(const std::array<double, 3>& a, const std::array<double, 3>& b,
            const std::array<double, 3>& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

}  // namespace

SecondForm ParametricSurface::second_fundamental_form(Point2 p) const {
    const Metric g = induced_metric(p);
    const double dg = g.det();
    if (!(dg > kAdmissibilityThreshold))
        throw EvalError("point is not admissible: det(g) = " + std::to_string(dg));
    const double root = std::sqrt(dg);
    const auto t1 = eval3(du1_, p);
    const auto t2 = eval3(du2_, p);
    // t_ij = det(r_uiuj, r_u1, r_u2) / sqrt(det g), rows in that order.
    return {det3(eval3(d11_, p), t1, t2) / root,
            det3(eval3(d12_, p), t1, t2) / root,
            det3(eval3(d22_, p), t1, t2) / root};
}

FundamentalForms ParametricSurface::fundamental_forms(Point2 p) const {
    const Metric g = induced_metric(p);
    const SecondForm t = second_fundamental_form(p);
    return {g.g11, g.g12, g.g22, t.t11, t.t12, t.t22};
}

Curvatures ParametricSurface::curvatures(Point2 p) const {
    const Metric g = induced_metric(p);
    const SecondForm t = second_fundamental_form(p);
    const double dg = g.det();
    return {(t.t11 * t.t22 - t.t12 * t.t12) / dg,
            (g.g11 * t.t22 - 2.0 * g.g12 * t.t12 + g.g22 * t.t11) / dg};
}

Metric induced_metric(const ParametricSurface& s, Point2 p) { return s.induced_metric(p); }

SecondForm second_fundamental_form(const ParametricSurface& s, Point2 p) {
    return s.second_fundamental_form(p);
}

Curvatures curvatures_parametric(const ParametricSurface& s, Point2 p) { return s.curvatures(p); }

bool is_admissible(const ParametricSurface& s, Point2 p) { return s.is_admissible(p); }

ParametricSurface apply_i_motion(const IMotion& m, const ParametricSurface& s) {
    const Expr c = Expr::constant(std::cos(m.phi));
    const Expr sn = Expr::constant(std::sin(m.phi));
    const Expr& r1 = s.component(0);
    const Expr& r2 = s.component(1);
    const Expr& r3 = s.component(2);
    return ParametricSurface(Expr::constant(m.a) + r1 * c - r2 * sn,
                             Expr::constant(m.b) + r1 * sn + r2 * c,
                             Expr::constant(m.c) + m.d * r1 + m.e * r2 + r3,
                             s.domain());
}

MongeCurvature::MongeCurvature(const Expr& h) {
    require_vars(h, {"x", "y"}, "MongeCurvature");
    const Expr hx = diff(h, "x");
    const Expr hy = diff(h, "y");
    hxx_ = simplify(diff(hx, "x"));
    hxy_ = simplify(diff(hx, "y"));
    hyy_ = simplify(diff(hy, "y"));
}

Hessian MongeCurvature::hessian(double x, double y) const {
    const Valuation at{{"x", x}, {"y", y}};
    return {eval(hxx_, at), eval(hxy_, at), eval(hyy_, at)};
}

Curvatures MongeCurvature::at(double x, double y) const {
    const Hessian h = hessian(x, y);
    return {h.hxx * h.hyy - h.hxy * h.hxy, h.hxx + h.hyy};
}

Curvatures curvatures_monge(const Expr& h, Point2 p) {
    return MongeCurvature(h).at(p.u1, p.u2);
}

}  // namespace isoprod
