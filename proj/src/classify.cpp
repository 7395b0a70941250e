#include "isoprod/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace isoprod {

std::string_view to_string(CurvatureQuantity q) {
    return q == CurvatureQuantity::K ? "K" : "H";
}

GridSpec default_grid() { return {{{0.5, 5.0}, {0.5, 5.0}}, 21, 21}; }

std::string_view to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::K_A1_factor_constant: return "K_A1_factor_constant";
        case CaseLabel::K_A2_transcendental: return "K_A2_transcendental";
        case CaseLabel::K_A3_cobb_douglas: return "K_A3_cobb_douglas";
        case CaseLabel::K_B_bilinear: return "K_B_bilinear";
        case CaseLabel::H_A_quadratic_times_constant: return "H_A_quadratic_times_constant";
        case CaseLabel::H_B_minimal_bilinear: return "H_B_minimal_bilinear";
        case CaseLabel::none: return "none";
    }
    return "?";
}

std::string_view short_case_name(CaseLabel label) {
    switch (label) {
        case CaseLabel::K_A1_factor_constant: return "K_A1";
        case CaseLabel::K_A2_transcendental: return "K_A2";
        case CaseLabel::K_A3_cobb_douglas: return "K_A3";
        case CaseLabel::K_B_bilinear: return "K_B";
        case CaseLabel::H_A_quadratic_times_constant: return "H_A";
        case CaseLabel::H_B_minimal_bilinear: return "H_B";
        case CaseLabel::none: return "none";
    }
    return "?";
}

namespace {

void validate_grid(const GridSpec& grid) {
    if (grid.nx < 5 || grid.ny < 5)
        throw std::invalid_argument("grid resolution must be at least 5x5");
    for (const Interval& iv : {grid.box.u1, grid.box.u2}) {
        if (!(iv.lo > 0.0) || !(iv.hi > iv.lo) || !std::isfinite(iv.hi))
            throw std::invalid_argument("grid must lie strictly inside the positive orthant");
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Number of abscissae used for per-factor analysis (constancy, separation
// ratio, affinity, parameter fits).
constexpr int kFactorSamples = 11;

struct Samples {
    std::vector<double> ts;    // abscissae
    std::vector<double> vals;  // expression values
    double mean = 0.0;
    double spread = 0.0;       // max - min
    double max_abs = 0.0;
};

Samples sample_expr(const Expr& e, const char* var, Interval iv, int n) {
    Samples s;
    s.ts.reserve(n);
    s.vals.reserve(n);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    Valuation at;
    for (int i = 0; i < n; ++i) {
        const double t = iv.lo + iv.length() * i / (n - 1);
        at.set(var, t);
        const double v = eval(e, at);
        s.ts.push_back(t);
        s.vals.push_back(v);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
        s.max_abs = std::max(s.max_abs, std::abs(v));
    }
    s.mean = sum / n;
    s.spread = hi - lo;
    return s;
}

bool is_constant_samples(const Samples& s, double tol) {
    return s.spread <= tol * (1.0 + std::abs(s.mean));
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < n; ++i)
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(ys[i] - (fit.slope * xs[i] + fit.intercept)));
    return fit;
}

// Derivative samples of one factor, shared between the case checks.
struct FactorAnalysis {
    Samples value, d1, d2;
    bool affine = false;  // second derivative vanishes at scale
};

FactorAnalysis analyze_factor(const Expr& f, const char* var, Interval iv, double tol) {
    FactorAnalysis a;
    const Expr df = simplify(diff(f, var));
    const Expr ddf = simplify(diff(df, var));
    a.value = sample_expr(f, var, iv, kFactorSamples);
    a.d1 = sample_expr(df, var, iv, kFactorSamples);
    a.d2 = sample_expr(ddf, var, iv, kFactorSamples);
    a.affine = a.d2.max_abs <= tol * (1.0 + a.d1.max_abs);
    return a;
}

// Separation ratio f f'' / (f')^2 per sample point.
// Empty result if the first derivative is too small to divide by.
std::vector<double> separation_ratio(const FactorAnalysis& a) {
    std::vector<double> r;
    r.reserve(a.value.vals.size());
    for (std::size_t i = 0; i < a.value.vals.size(); ++i) {
        const double fp = a.d1.vals[i];
        if (std::abs(fp) <= 1e-12 * (1.0 + std::abs(a.value.vals[i]))) return {};
        r.push_back(a.value.vals[i] * a.d2.vals[i] / (fp * fp));
    }
    return r;
}

struct RatioStats {
    bool constant = false;
    double mean = 0.0;
};

// Spread band for the separation constant and the lambda == 1 test.
constexpr double kLambdaBand = 1e-6;

RatioStats ratio_stats(const std::vector<double>& r) {
    if (r.empty()) return {};
    double lo = r[0], hi = r[0], sum = 0.0;
    for (double v : r) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    RatioStats s;
    s.mean = sum / static_cast<double>(r.size());
    s.constant = hi - lo <= kLambdaBand * (1.0 + std::abs(s.mean));
    return s;
}

[[noreturn]] void anomaly(const std::string& what) { throw AnomalyError("anomaly: " + what); }

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Exponential-factor fit: f = c exp(k t). Returns (k, log|c|, sign c).
struct ExpFit {
    double rate = 0.0;
    double log_scale = 0.0;
    double sign = 1.0;
};

ExpFit fit_exponential(const Samples& s, const char* which) {
    ExpFit out;
    out.sign = sign_of(s.vals[0]);
    std::vector<double> logs;
    logs.reserve(s.vals.size());
    double max_abs_log = 0.0;
    for (double v : s.vals) {
        if (v * out.sign <= 0.0)
            anomaly(std::string("factor ") + which + " changes sign in the exponential case");
        logs.push_back(std::log(std::abs(v)));
        max_abs_log = std::max(max_abs_log, std::abs(logs.back()));
    }
    const LineFit fit = fit_line(s.ts, logs);
    if (fit.max_residual > kLambdaBand * (1.0 + max_abs_log))
        anomaly(std::string("factor ") + which + " is not exponential in the lambda = 1 case");
    out.rate = fit.slope;
    out.log_scale = fit.intercept;
    return out;
}

}  // namespace

ConstancyVerdict constancy_test(const Expr& h, CurvatureQuantity quantity,
                                const GridSpec& grid, double tol) {
    validate_grid(grid);
    if (!(tol > 0.0)) throw std::invalid_argument("constancy_test: tol must be positive");
    const MongeCurvature mc(h);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.box.u1.lo + grid.box.u1.length() * i / (grid.nx - 1);
        for (int j = 0; j < grid.ny; ++j) {
            const double y = grid.box.u2.lo + grid.box.u2.length() * j / (grid.ny - 1);
            double v;
            try {
                const Curvatures c = mc.at(x, y);
                v = quantity == CurvatureQuantity::K ? c.K : c.H;
            } catch (const EvalError& e) {
                throw EvalError(std::string(e.what()) + " at grid point (x=" + fmt(x) +
                                ", y=" + fmt(y) + ")");
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
    }
    ConstancyVerdict verdict;
    verdict.quantity = quantity;
    verdict.grid = grid;
    verdict.spread = hi - lo;
    const double mean = sum / (static_cast<double>(grid.nx) * grid.ny);
    verdict.is_constant = verdict.spread <= tol * (1.0 + std::abs(mean));
    if (verdict.is_constant) verdict.value = mean;
    return verdict;
}

// ---------------------------------------------------------------------------
// Constant relative curvature classification
//
// The zero-curvature families are recognised through the separation ratios
// phi = f f''/(f')^2 and psi = g'' g/(g')^2: K == 0 iff phi psi == 1 with both
// ratios constant. Deciding this on the ratios instead of on raw
// K = det(Hess h) keeps steep exponential factors well-conditioned (the raw
// determinant cancels catastrophically); the raw constancy test remains the
// anomaly cross-check.

ClassificationResult classify_constant_K(const Expr& f, const Expr& g,
                                         const GridSpec& grid, double tol) {
    validate_grid(grid);
    if (!(tol > 0.0)) throw std::invalid_argument("classify_constant_K: tol must be positive");
    const Product probe(f, g);  // validates variables, flags degeneracy
    const bool degenerate = probe.economically_degenerate;

    const FactorAnalysis fa = analyze_factor(f, "x", grid.box.u1, tol);
    const FactorAnalysis ga = analyze_factor(g, "y", grid.box.u2, tol);

    // (A.1) one factor constant: h = c1 f(x) or c2 g(y).
    if (is_constant_samples(fa.value, tol))
        return {CaseLabel::K_A1_factor_constant, {{"c2", fa.value.mean}}, true};
    if (is_constant_samples(ga.value, tol))
        return {CaseLabel::K_A1_factor_constant, {{"c1", ga.value.mean}}, true};

    // (B) affine factors: K = -(f'g')^2, constant and negative.
    if (fa.affine && ga.affine) {
        const double c1 = fa.d1.mean, c2 = ga.d1.mean;
        const double K0 = -(c1 * c2) * (c1 * c2);
        return {CaseLabel::K_B_bilinear,
                {{"K0", K0}, {"A", std::sqrt(-K0)}},
                degenerate};
    }

    // (A.2)/(A.3) via the separation constant lambda.
    const RatioStats phi = ratio_stats(separation_ratio(fa));
    const RatioStats psi = ratio_stats(separation_ratio(ga));
    if (phi.constant && psi.constant && std::abs(phi.mean * psi.mean - 1.0) <= kLambdaBand) {
        const double lambda = phi.mean;
        if (std::abs(lambda) <= kLambdaBand)
            anomaly("separation constant is zero for non-constant factors");
        if (std::abs(lambda - 1.0) <= kLambdaBand) {
            // h = A exp(c1 x + c2 y)
            const ExpFit ef = fit_exponential(fa.value, "f");
            const ExpFit eg = fit_exponential(ga.value, "g");
            const double A = ef.sign * eg.sign * std::exp(ef.log_scale + eg.log_scale);
            return {CaseLabel::K_A2_transcendental,
                    {{"A", A}, {"c1", ef.rate}, {"c2", eg.rate}},
                    degenerate};
        }
        // Power factors: f^(1-lambda) and g^((lambda-1)/lambda) are affine in
        // their variables, which recovers the proof's (c_i, d_i) exactly.
        const double alpha1 = 1.0 / (1.0 - lambda);
        const double alpha2 = -lambda / (1.0 - lambda);
        std::vector<double> F, G;
        for (double v : fa.value.vals) {
            if (!(v > 0.0)) anomaly("non-positive factor f in the power-family case");
            F.push_back(std::pow(v, 1.0 - lambda));
        }
        for (double v : ga.value.vals) {
            if (!(v > 0.0)) anomaly("non-positive factor g in the power-family case");
            G.push_back(std::pow(v, (lambda - 1.0) / lambda));
        }
        const LineFit ff = fit_line(fa.value.ts, F);
        const LineFit gf = fit_line(ga.value.ts, G);
        double maxF = 0.0, maxG = 0.0;
        for (double v : F) maxF = std::max(maxF, std::abs(v));
        for (double v : G) maxG = std::max(maxG, std::abs(v));
        if (ff.max_residual > kLambdaBand * (1.0 + maxF) ||
            gf.max_residual > kLambdaBand * (1.0 + maxG))
            anomaly("factors do not match the power family of the lambda != 1 case");
        const double el = (lambda - 1.0) / lambda;
        std::map<std::string, double> params = {
            {"lambda", lambda},
            {"alpha1", alpha1},
            {"alpha2", alpha2},
            {"c1", ff.slope / (1.0 - lambda)},
            {"d1", ff.intercept / (1.0 - lambda)},
            {"c2", gf.slope / el},
            {"d2", gf.intercept / el},
        };
        if (ff.slope > 0.0 && gf.slope > 0.0)
            params["A"] = std::pow(ff.slope, alpha1) * std::pow(gf.slope, alpha2);
        return {CaseLabel::K_A3_cobb_douglas, std::move(params), degenerate};
    }

    // No case matched, so a constant K would contradict the taxonomy.
    const ConstancyVerdict raw = constancy_test(probe.f * probe.g, CurvatureQuantity::K, grid, tol);
    if (raw.is_constant) {
        if (*raw.value > tol)
            anomaly("constant relative curvature K0 = " + fmt(*raw.value) +
                    " is positive, which the constant-curvature taxonomy excludes");
        anomaly("relative curvature is constant (K0 = " + fmt(*raw.value) +
                ") but matches no case; tolerance failure or bug");
    }
    return {CaseLabel::none, {}, degenerate};
}

ClassificationResult classify_constant_K(const Expr& f, const Expr& g, double tol) {
    return classify_constant_K(f, g, default_grid(), tol);
}

// ---------------------------------------------------------------------------
// Constant isotropic mean curvature classification
//
// Constant-factor branch: h = (q t^2 + d1 t + d2) c0 with q = H0 / (2 c0).
// Substituting into H0 = f'' g + f g'' forces the factor 1/2 in the
// quadratic coefficient.

ClassificationResult classify_constant_H(const Expr& f, const Expr& g,
                                         const GridSpec& grid, double tol) {
    validate_grid(grid);
    if (!(tol > 0.0)) throw std::invalid_argument("classify_constant_H: tol must be positive");
    const Product probe(f, g);
    const bool degenerate = probe.economically_degenerate;

    const FactorAnalysis fa = analyze_factor(f, "x", grid.box.u1, tol);
    const FactorAnalysis ga = analyze_factor(g, "y", grid.box.u2, tol);
    const bool f_const = is_constant_samples(fa.value, tol);
    const bool g_const = is_constant_samples(ga.value, tol);

    // (A) one factor constant, the other quadratic.
    if (f_const || g_const) {
        const bool g_side = g_const;  // the constant factor
        const double c0 = g_side ? ga.value.mean : fa.value.mean;
        const Expr& quad = g_side ? f : g;
        const char* var = g_side ? "x" : "y";
        const FactorAnalysis& qa = g_side ? fa : ga;
        const ConstancyVerdict v = constancy_test(probe.f * probe.g, CurvatureQuantity::H, grid, tol);
        if (!v.is_constant) return {CaseLabel::none, {}, true};
        const double H0 = *v.value;
        std::map<std::string, double> params = {{"H0", H0}, {g_side ? "g0" : "f0", c0}};
        if (std::abs(c0) > tol) {
            const Expr d3 = simplify(diff(diff(diff(quad, var), var), var));
            const Samples s3 = sample_expr(d3, var, g_side ? grid.box.u1 : grid.box.u2,
                                           kFactorSamples);
            if (s3.max_abs > tol * (1.0 + qa.d2.max_abs))
                anomaly("constant H with a constant factor but a non-quadratic cofactor");
            // f' = (H0/c0) t + d1; the fitted slope cross-checks H0.
            const LineFit fit = fit_line(qa.d1.ts, qa.d1.vals);
            if (std::abs(fit.slope - H0 / c0) > kLambdaBand * (1.0 + std::abs(H0 / c0)))
                anomaly("quadratic coefficient disagrees with the H0 constancy value");
            params["d1"] = fit.intercept;
            const double q = H0 / (2.0 * c0);
            double d2 = 0.0;
            for (std::size_t i = 0; i < qa.value.vals.size(); ++i) {
                const double t = qa.value.ts[i];
                d2 += qa.value.vals[i] - q * t * t - fit.intercept * t;
            }
            params["d2"] = d2 / static_cast<double>(qa.value.vals.size());
        }
        return {CaseLabel::H_A_quadratic_times_constant, std::move(params), true};
    }

    // (B) both factors non-constant: the only constant value is H0 = 0 with
    // affine factors, h = A x y up to translations.
    const ConstancyVerdict v = constancy_test(probe.f * probe.g, CurvatureQuantity::H, grid, tol);
    if (!v.is_constant) return {CaseLabel::none, {}, degenerate};
    const double H0 = *v.value;
    if (std::abs(H0) > tol)
        anomaly("nonzero constant isotropic mean curvature H0 = " + fmt(H0) +
                " with non-constant factors contradicts the taxonomy");
    if (!fa.affine || !ga.affine)
        anomaly("isotropic minimal product surface with non-affine factors");
    const double A = fa.d1.mean * ga.d1.mean;
    return {CaseLabel::H_B_minimal_bilinear, {{"A", A}, {"H0", H0}}, degenerate};
}

ClassificationResult classify_constant_H(const Expr& f, const Expr& g, double tol) {
    return classify_constant_H(f, g, default_grid(), tol);
}

// ---------------------------------------------------------------------------
// Canonical representatives

namespace {

double require_param(const std::map<std::string, double>& params, const char* key,
                     CaseLabel label) {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument(std::string("synthesize_case: missing parameter '") + key +
                                    "' for " + std::string(to_string(label)));
    return it->second;
}

std::optional<double> optional_param(const std::map<std::string, double>& params,
                                     const char* key) {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
}

void probe_factor_domain(const Expr& e, const char* var) {
    Valuation at;
    for (double t : {0.5, 2.75, 5.0}) {
        at.set(var, t);
        try {
            (void)eval(e, at);
        } catch (const EvalError& err) {
            throw std::invalid_argument(
                std::string("synthesize_case: parameters give an invalid factor: ") + err.what());
        }
    }
}

}  // namespace

ProductionModel synthesize_case(CaseLabel label, const std::map<std::string, double>& params) {
    const Expr x = Expr::var("x");
    const Expr y = Expr::var("y");
    switch (label) {
        case CaseLabel::K_A1_factor_constant: {
            if (auto c1 = optional_param(params, "c1")) {
                if (*c1 == 0.0)
                    throw std::invalid_argument("synthesize_case: c1 must be nonzero");
                return Product(exp(x), Expr::constant(*c1));
            }
            const double c2 = require_param(params, "c2", label);
            if (c2 == 0.0) throw std::invalid_argument("synthesize_case: c2 must be nonzero");
            return Product(Expr::constant(c2), exp(y));
        }
        case CaseLabel::K_A2_transcendental: {
            const double A = require_param(params, "A", label);
            const double c1 = require_param(params, "c1", label);
            const double c2 = require_param(params, "c2", label);
            if (A == 0.0 || c1 == 0.0 || c2 == 0.0)
                throw std::invalid_argument("synthesize_case: K_A2 needs nonzero A, c1, c2");
            return Product(exp(c1 * x), Expr::constant(A) * exp(c2 * y));
        }
        case CaseLabel::K_A3_cobb_douglas: {
            if (auto lambda = optional_param(params, "lambda")) {
                const double l = *lambda;
                if (l == 0.0 || l == 1.0)
                    throw std::invalid_argument("synthesize_case: lambda must differ from 0 and 1");
                const double c1 = require_param(params, "c1", label);
                const double d1 = optional_param(params, "d1").value_or(0.0);
                const double c2 = require_param(params, "c2", label);
                const double d2 = optional_param(params, "d2").value_or(0.0);
                const double el = (l - 1.0) / l;
                Expr f = pow((1.0 - l) * (c1 * x + d1), 1.0 / (1.0 - l));
                Expr g = pow(el * (c2 * y + d2), 1.0 / el);
                probe_factor_domain(f, "x");
                probe_factor_domain(g, "y");
                return Product(std::move(f), std::move(g));
            }
            const double a1 = require_param(params, "alpha1", label);
            const double a2 = require_param(params, "alpha2", label);
            if (std::abs(a1 + a2 - 1.0) > 1e-6)
                throw std::invalid_argument(
                    "synthesize_case: K_A3 exponents must sum to 1 (constant return to scale)");
            const double A = optional_param(params, "A").value_or(1.0);
            if (!(A > 0.0)) throw std::invalid_argument("synthesize_case: A must be positive");
            return Product(pow(x, a1), Expr::constant(A) * pow(y, a2));
        }
        case CaseLabel::K_B_bilinear: {
            double K0;
            if (auto k = optional_param(params, "K0")) {
                K0 = *k;
            } else {
                const double A = require_param(params, "A", label);
                if (!(A > 0.0)) throw std::invalid_argument("synthesize_case: A must be positive");
                K0 = -A * A;
            }
            if (!(K0 < 0.0))
                throw std::invalid_argument("synthesize_case: K0 must be negative for K_B");
            return Product(x, Expr::constant(std::sqrt(-K0)) * y);
        }
        case CaseLabel::H_A_quadratic_times_constant: {
            const double H0 = require_param(params, "H0", label);
            const double d1 = optional_param(params, "d1").value_or(0.0);
            const double d2 = optional_param(params, "d2").value_or(0.0);
            if (auto g0 = optional_param(params, "g0")) {
                if (*g0 == 0.0) throw std::invalid_argument("synthesize_case: g0 must be nonzero");
                const double q = H0 / (2.0 * *g0);
                return Product(q * pow(x, 2.0) + d1 * x + Expr::constant(d2),
                               Expr::constant(*g0));
            }
            const double f0 = require_param(params, "f0", label);
            if (f0 == 0.0) throw std::invalid_argument("synthesize_case: f0 must be nonzero");
            const double q = H0 / (2.0 * f0);
            return Product(Expr::constant(f0), q * pow(y, 2.0) + d1 * y + Expr::constant(d2));
        }
        case CaseLabel::H_B_minimal_bilinear: {
            const double A = require_param(params, "A", label);
            if (!(A > 0.0))
                throw std::invalid_argument("synthesize_case: A must be positive for H_B");
            return Product(Expr::constant(A) * x, y);
        }
        case CaseLabel::none: break;
    }
    throw std::invalid_argument("synthesize_case: no representative for label 'none'");
}

// ---------------------------------------------------------------------------
// Corollaries for the named families

bool check_corollary_34(double A, double a, double b, const GridSpec& grid, double tol) {
    const SpillmanMitscherlich model(A, a, b);  // validates A > 0, a < 0, b < 0
    const Expr h = to_expr(ProductionModel(model));
    const ConstancyVerdict vK = constancy_test(h, CurvatureQuantity::K, grid, tol);
    const ConstancyVerdict vH = constancy_test(h, CurvatureQuantity::H, grid, tol);
    return !vK.is_constant && !vH.is_constant;
}

bool check_corollary_34(double A, double a, double b) {
    return check_corollary_34(A, a, b, default_grid(), kDefaultTol);
}

Corollary35Result check_corollary_35(double A, double a1, double b1, double a2, double b2,
                                     const GridSpec& grid, double tol) {
    const Transcendental model(A, a1, b1, a2, b2);  // validates the constraints
    const double eps = std::max(tol, 1e-9);
    const auto near = [eps](double v, double w) { return std::abs(v - w) <= eps; };
    const bool branch_a1 = near(a1, 0.0) && near(a2, 0.0) && !near(b1, 0.0) && !near(b2, 0.0);
    const bool branch_a2 = near(a1 + a2, 1.0) && !near(a1, 0.0) && !near(a2, 0.0) &&
                           near(b1, 0.0) && near(b2, 0.0);
    const bool branch_b = near(a1, 1.0) && near(a2, 1.0) && near(b1, 0.0) && near(b2, 0.0);

    // Factor split of the family; the classifiers carry the numeric evidence.
    const Expr x = Expr::var("x");
    const Expr y = Expr::var("y");
    const Expr f = Expr::constant(model.A) * pow(x, model.a1) * exp(model.b1 * x);
    const Expr g = pow(y, model.a2) * exp(model.b2 * y);
    const ClassificationResult rk = classify_constant_K(f, g, grid, tol);
    const ClassificationResult rh = classify_constant_H(f, g, grid, tol);

    const bool k_zero = rk.label == CaseLabel::K_A2_transcendental ||
                        rk.label == CaseLabel::K_A3_cobb_douglas;
    if ((branch_a1 || branch_a2) != k_zero)
        anomaly("corollary K == 0 branch disagrees with the classifier");
    if (branch_a1 && rk.label != CaseLabel::K_A2_transcendental)
        anomaly("corollary branch A.1 should classify as the exponential family");
    if (branch_a2 && rk.label != CaseLabel::K_A3_cobb_douglas)
        anomaly("corollary branch A.2 should classify as the power family");
    const bool h_zero = rh.label == CaseLabel::H_B_minimal_bilinear;
    if (branch_b != h_zero) anomaly("corollary H == 0 branch disagrees with the classifier");

    Corollary35Result result;
    if (branch_a1)
        result.k_zero_case = KZeroBranch::A1;
    else if (branch_a2)
        result.k_zero_case = KZeroBranch::A2;
    result.h_zero = branch_b;
    return result;
}

Corollary35Result check_corollary_35(double A, double a1, double b1, double a2, double b2) {
    return check_corollary_35(A, a1, b1, a2, b2, default_grid(), kDefaultTol);
}

}  // namespace isoprod
