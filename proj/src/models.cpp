#include "isoprod/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "isoprod/sampling.hpp"

namespace isoprod {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

// Probe a factor on [0.5, 5]: positive, with a first derivative that never
// vanishes at the local value scale. Evaluation failures count as a failed
// probe.
bool factor_is_regular(const Expr& f, const std::string& var) {
    const Expr df = diff(f, var);
    double prev_slope = 0.0;
    try {
        for (int i = 0; i < 17; ++i) {
            Valuation at;
            at.set(var, 0.5 + 4.5 * i / 16.0);
            const double v = eval(f, at);
            if (!(v > 0.0)) return false;
            const double slope = eval(df, at);
            if (std::abs(slope) <= 1e-9 * (1.0 + std::abs(v))) return false;
            // a sign change of the continuous derivative means a zero between samples
            if (i > 0 && std::signbit(slope) != std::signbit(prev_slope)) return false;
            prev_slope = slope;
        }
    } catch (const EvalError&) {
        return false;
    }
    return true;
}

}  // namespace

CobbDouglas::CobbDouglas(double A_, std::vector<double> alphas_)
    : A(A_), alphas(std::move(alphas_)) {
    require(std::isfinite(A) && A > 0.0, "CobbDouglas: A must be positive");
    require(!alphas.empty(), "CobbDouglas: at least one exponent required");
    for (double a : alphas)
        require(std::isfinite(a) && a > 0.0, "CobbDouglas: exponents must be positive");
}

SpillmanMitscherlich::SpillmanMitscherlich(double A_, double a_, double b_)
    : A(A_), a(a_), b(b_) {
    require(std::isfinite(A) && A > 0.0, "SpillmanMitscherlich: A must be positive");
    require(std::isfinite(a) && a < 0.0, "SpillmanMitscherlich: a must be negative");
    require(std::isfinite(b) && b < 0.0, "SpillmanMitscherlich: b must be negative");
}

Transcendental::Transcendental(double A_, double a1_, double b1_, double a2_, double b2_)
    : A(A_), a1(a1_), b1(b1_), a2(a2_), b2(b2_) {
    require(std::isfinite(A) && A > 0.0, "Transcendental: A must be positive");
    require(a1 * a1 + b1 * b1 != 0.0, "Transcendental: a1^2 + b1^2 must be nonzero");
    require(a2 * a2 + b2 * b2 != 0.0, "Transcendental: a2^2 + b2^2 must be nonzero");
}

Product::Product(Expr f_, Expr g_) : f(std::move(f_)), g(std::move(g_)) {
    for (const auto& v : free_variables(f))
        require(v == "x", "Product: f must be an expression over x");
    for (const auto& v : free_variables(g))
        require(v == "y", "Product: g must be an expression over y");
    economically_degenerate = !factor_is_regular(f, "x") || !factor_is_regular(g, "y");
}

Custom::Custom(Expr h_) : h(std::move(h_)) {
    for (const auto& v : free_variables(h))
        require(v == "x" || v == "y", "Custom: h must be an expression over (x, y)");
}

std::vector<std::string> model_variables(const ProductionModel& m) {
    if (const auto* cd = std::get_if<CobbDouglas>(&m)) {
        const std::size_t n = cd->alphas.size();
        if (n == 1) return {"x"};
        if (n == 2) return {"x", "y"};
        std::vector<std::string> vars;
        vars.reserve(n);
        for (std::size_t i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i + 1));
        return vars;
    }
    return free_variables(to_expr(m));
}

Expr to_expr(const ProductionModel& m) {
    return std::visit(
        [](const auto& model) -> Expr {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, CobbDouglas>) {
                Expr e = Expr::constant(model.A);
                const std::size_t n = model.alphas.size();
                for (std::size_t i = 0; i < n; ++i) {
                    std::string var = n == 1   ? "x"
                                      : n == 2 ? (i == 0 ? "x" : "y")
                                               : "x" + std::to_string(i + 1);
                    e = e * pow(Expr::var(std::move(var)), model.alphas[i]);
                }
                return e;
            } else if constexpr (std::is_same_v<T, SpillmanMitscherlich>) {
                return Expr::constant(model.A) *
                       (1.0 - exp(model.a * Expr::var("x"))) *
                       (1.0 - exp(model.b * Expr::var("y")));
            } else if constexpr (std::is_same_v<T, Transcendental>) {
                return Expr::constant(model.A) *
                       pow(Expr::var("x"), model.a1) * exp(model.b1 * Expr::var("x")) *
                       pow(Expr::var("y"), model.a2) * exp(model.b2 * Expr::var("y"));
            } else if constexpr (std::is_same_v<T, Product>) {
                return model.f * model.g;
            } else {
                return model.h;
            }
        },
        m);
}

std::string_view to_string(ScaleClass s) {
    switch (s) {
        case ScaleClass::decreasing: return "decreasing";
        case ScaleClass::constant: return "constant";
        case ScaleClass::increasing: return "increasing";
        case ScaleClass::not_homogeneous: return "not_homogeneous";
    }
    return "?";
}

HomogeneityReport homogeneity_degree(const ProductionModel& m, double tol) {
    require(tol > 0.0, "homogeneity_degree: tol must be positive");
    const Expr h = to_expr(m);
    const std::vector<std::string> vars = model_variables(m);

    // Closed-form families scale exactly, so "constant returns" is decided
    // with a tight band; user expressions use the caller's tolerance.
    const bool closed_form = !std::holds_alternative<Product>(m) && !std::holds_alternative<Custom>(m);
    const double constant_band = closed_form ? 1e-9 : tol;

    constexpr int kBasePoints = 25;
    constexpr std::uint64_t kSeed = 42;
    const double scales[] = {0.5, 2.0, 3.0};

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    int count = 0;
    std::vector<double> estimates;
    estimates.reserve(kBasePoints * 3);
    for (int i = 0; i < kBasePoints; ++i) {
        Valuation base, scaled;
        for (std::size_t d = 0; d < vars.size(); ++d)
            base.set(vars[d], halton_in(0.5, 2.0, kSeed + 1 + i, static_cast<unsigned>(d)));
        const double h0 = eval(h, base);
        for (double lambda : scales) {
            for (const auto& [name, value] : base.items()) scaled.set(name, lambda * value);
            const double ratio = eval(h, scaled) / h0;
            if (!(ratio > 0.0)) throw EvalError("homogeneity probe: non-positive value ratio");
            const double p = std::log(ratio) / std::log(lambda);
            estimates.push_back(p);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
            sum += p;
            ++count;
        }
    }

    HomogeneityReport report;
    const double mean = sum / count;
    const double spread = hi - lo;
    report.is_homogeneous = spread <= tol;
    double residual = 0.0;
    for (double p : estimates) residual = std::max(residual, std::abs(p - mean));
    report.residual = residual;
    if (!report.is_homogeneous) return report;
    report.degree = mean;
    if (std::abs(mean - 1.0) <= constant_band)
        report.scale_class = ScaleClass::constant;
    else
        report.scale_class = mean < 1.0 ? ScaleClass::decreasing : ScaleClass::increasing;
    return report;
}

ScaleClass returns_to_scale(const HomogeneityReport& r) {
    require(r.is_homogeneous, "returns_to_scale: report is not homogeneous");
    return r.scale_class;
}

// ---------------------------------------------------------------------------
// JSON model literals

namespace {

using nlohmann::json;

double get_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw std::invalid_argument(std::string("model literal: missing numeric field '") + key + "'");
    return j[key].get<double>();
}

std::string get_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw std::invalid_argument(std::string("model literal: missing string field '") + key + "'");
    return j[key].get<std::string>();
}

}  // namespace

ProductionModel model_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("model literal: ") + err.what());
    }
    const std::string type = get_string(j, "type");
    if (type == "cobb_douglas") {
        if (!j.contains("alphas") || !j["alphas"].is_array())
            throw std::invalid_argument("model literal: cobb_douglas requires 'alphas' array");
        std::vector<double> alphas;
        for (const auto& a : j["alphas"]) alphas.push_back(a.get<double>());
        return CobbDouglas(get_number(j, "A"), std::move(alphas));
    }
    if (type == "spillman_mitscherlich")
        return SpillmanMitscherlich(get_number(j, "A"), get_number(j, "a"), get_number(j, "b"));
    if (type == "transcendental")
        return Transcendental(get_number(j, "A"), get_number(j, "a1"), get_number(j, "b1"),
                              get_number(j, "a2"), get_number(j, "b2"));
    if (type == "product") {
        const std::vector<std::string> xs = {"x"}, ys = {"y"};
        return Product(parse(get_string(j, "f"), xs), parse(get_string(j, "g"), ys));
    }
    if (type == "custom") {
        const std::vector<std::string> xy = {"x", "y"};
        return Custom(parse(get_string(j, "h"), xy));
    }
    throw std::invalid_argument("model literal: unknown type '" + type + "'");
}

std::string model_to_json(const ProductionModel& m) {
    nlohmann::ordered_json j;
    std::visit(
        [&](const auto& model) {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, CobbDouglas>) {
                j["type"] = "cobb_douglas";
                j["A"] = model.A;
                j["alphas"] = model.alphas;
            } else if constexpr (std::is_same_v<T, SpillmanMitscherlich>) {
                j["type"] = "spillman_mitscherlich";
                j["A"] = model.A;
                j["a"] = model.a;
                j["b"] = model.b;
            } else if constexpr (std::is_same_v<T, Transcendental>) {
                j["type"] = "transcendental";
                j["A"] = model.A;
                j["a1"] = model.a1;
                j["b1"] = model.b1;
                j["a2"] = model.a2;
                j["b2"] = model.b2;
            } else if constexpr (std::is_same_v<T, Product>) {
                j["type"] = "product";
                j["f"] = to_string(model.f);
                j["g"] = to_string(model.g);
            } else {
                j["type"] = "custom";
                j["h"] = to_string(model.h);
            }
        },
        m);
    return j.dump();
}

}  // namespace isoprod
