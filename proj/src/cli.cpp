#include "isoprod/cli.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include <json.hpp>

namespace isoprod {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Command c) {
    switch (c) {
        case Command::eval: return "eval";
        case Command::curvature: return "curvature";
        case Command::classify: return "classify";
        case Command::corollary: return "corollary";
        case Command::motion_check: return "motion-check";
    }
    return "?";
}

std::string_view to_string(OutputFormat f) {
    return f == OutputFormat::json ? "json" : "csv";
}

GridAxis parse_grid_axis(const std::string& text) {
    GridAxis axis;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("grid axis must be min:max:count, got '" + text + "'");
    try {
        std::size_t used = 0;
        axis.interval.lo = std::stod(text.substr(0, c1), &used);
        axis.interval.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1), &used);
        axis.count = std::stoi(text.substr(c2 + 1), &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("grid axis must be min:max:count, got '" + text + "'");
    }
    if (!(axis.interval.lo > 0.0) || !(axis.interval.hi > axis.interval.lo))
        throw std::invalid_argument("grid axis must satisfy 0 < min < max");
    if (axis.count < 2) throw std::invalid_argument("grid axis needs at least 2 points");
    return axis;
}

namespace {

std::string fmt_csv(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ordered_json grid_json(const GridSpec& grid) {
    return {{"x", {{"min", grid.box.u1.lo}, {"max", grid.box.u1.hi}, {"count", grid.nx}}},
            {"y", {{"min", grid.box.u2.lo}, {"max", grid.box.u2.hi}, {"count", grid.ny}}}};
}

ordered_json verdict_json(const ConstancyVerdict& v) {
    ordered_json j;
    j["quantity"] = to_string(v.quantity);
    j["is_constant"] = v.is_constant;
    if (v.value)
        j["value"] = *v.value;
    else
        j["value"] = nullptr;
    j["spread"] = v.spread;
    j["grid"] = grid_json(v.grid);
    return j;
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = to_string(cfg.command);
    if (cfg.expr_text) j["expr"] = *cfg.expr_text;
    if (cfg.f_text) j["f"] = *cfg.f_text;
    if (cfg.g_text) j["g"] = *cfg.g_text;
    if (cfg.family) j["family"] = *cfg.family;
    if (cfg.model_json) j["model"] = *cfg.model_json;
    if (!cfg.family_params.empty()) j["params"] = cfg.family_params;
    if (!cfg.alphas.empty()) j["alphas"] = cfg.alphas;
    j["grid"] = grid_json(cfg.grid);
    j["tol"] = cfg.tol;
    j["seed"] = cfg.seed;
    j["format"] = to_string(cfg.format);
    return j;
}

int count_sources(const RunConfig& cfg) {
    int n = 0;
    n += cfg.expr_text.has_value();
    n += cfg.f_text.has_value() || cfg.g_text.has_value();
    n += cfg.family.has_value();
    n += cfg.model_json.has_value();
    return n;
}

double family_param(const RunConfig& cfg, const char* key) {
    auto it = cfg.family_params.find(key);
    if (it == cfg.family_params.end())
        throw std::invalid_argument(std::string("--family ") + *cfg.family +
                                    " requires --" + key);
    return it->second;
}

ProductionModel family_model(const RunConfig& cfg) {
    const std::string& family = *cfg.family;
    if (family == "cobb_douglas") {
        if (cfg.alphas.empty())
            throw std::invalid_argument("--family cobb_douglas requires --alphas");
        return CobbDouglas(family_param(cfg, "A"), cfg.alphas);
    }
    if (family == "spillman" || family == "spillman_mitscherlich")
        return SpillmanMitscherlich(family_param(cfg, "A"), family_param(cfg, "a"),
                                    family_param(cfg, "b"));
    if (family == "transcendental")
        return Transcendental(family_param(cfg, "A"), family_param(cfg, "a1"),
                              family_param(cfg, "b1"), family_param(cfg, "a2"),
                              family_param(cfg, "b2"));
    throw std::invalid_argument("unknown family '" + family +
                                "' (expected cobb_douglas, spillman, or transcendental)");
}

ProductionModel resolve_model(const RunConfig& cfg) {
    if (count_sources(cfg) != 1)
        throw std::invalid_argument(
            "exactly one input source expected: --expr, --f/--g, --family, or --model");
    if (cfg.expr_text) {
        const std::vector<std::string> xy = {"x", "y"};
        return Custom(parse(*cfg.expr_text, xy));
    }
    if (cfg.f_text || cfg.g_text) {
        if (!cfg.f_text || !cfg.g_text)
            throw std::invalid_argument("--f and --g must be given together");
        const std::vector<std::string> xs = {"x"}, ys = {"y"};
        return Product(parse(*cfg.f_text, xs), parse(*cfg.g_text, ys));
    }
    if (cfg.family) return family_model(cfg);
    return model_from_json(*cfg.model_json);
}

bool grid_command(Command c) { return c == Command::eval || c == Command::curvature; }

// Deterministic uniform draw in [lo, hi) independent of the standard
// library's distribution implementation.
double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = std::ldexp(static_cast<double>(rng() >> 11), -53);
    return lo + (hi - lo) * u;
}

struct CommandOutput {
    ordered_json results;
    ordered_json verdicts = ordered_json::object();
    std::string csv;  // grid commands only
};

CommandOutput run_eval(const RunConfig& cfg) {
    CommandOutput out;
    const ProductionModel model = resolve_model(cfg);
    const Expr h = to_expr(model);
    const std::vector<std::string> vars = model_variables(model);
    const bool planar = vars.size() <= 2 &&
                        std::all_of(vars.begin(), vars.end(),
                                    [](const std::string& v) { return v == "x" || v == "y"; });
    out.results["variables"] = vars;
    if (!planar && cfg.format == OutputFormat::csv)
        throw std::invalid_argument("csv output needs a two-input model over (x, y)");
    if (planar) {
        ordered_json rows = ordered_json::array();
        std::string csv = "x,y,h\n";
        for (int i = 0; i < cfg.grid.nx; ++i) {
            const double x = cfg.grid.box.u1.lo + cfg.grid.box.u1.length() * i / (cfg.grid.nx - 1);
            for (int j = 0; j < cfg.grid.ny; ++j) {
                const double y =
                    cfg.grid.box.u2.lo + cfg.grid.box.u2.length() * j / (cfg.grid.ny - 1);
                const double v = eval(h, Valuation{{"x", x}, {"y", y}});
                rows.push_back({x, y, v});
                csv += fmt_csv(x) + "," + fmt_csv(y) + "," + fmt_csv(v) + "\n";
            }
        }
        out.results["rows"] = std::move(rows);
        out.csv = std::move(csv);
    } else {
        out.results["rows"] = nullptr;
    }
    const HomogeneityReport hr = homogeneity_degree(model, cfg.tol);
    ordered_json hj;
    hj["is_homogeneous"] = hr.is_homogeneous;
    if (hr.degree)
        hj["degree"] = *hr.degree;
    else
        hj["degree"] = nullptr;
    hj["scale_class"] = to_string(hr.scale_class);
    hj["residual"] = hr.residual;
    out.results["homogeneity"] = std::move(hj);
    return out;
}

CommandOutput run_curvature(const RunConfig& cfg) {
    CommandOutput out;
    const ProductionModel model = resolve_model(cfg);
    const Expr h = to_expr(model);
    for (const auto& v : model_variables(model))
        if (v != "x" && v != "y")
            throw std::invalid_argument("curvature needs a two-input surface over (x, y)");
    const MongeCurvature mc(h);
    ordered_json rows = ordered_json::array();
    std::string csv = "x,y,h,K,H\n";
    for (int i = 0; i < cfg.grid.nx; ++i) {
        const double x = cfg.grid.box.u1.lo + cfg.grid.box.u1.length() * i / (cfg.grid.nx - 1);
        for (int j = 0; j < cfg.grid.ny; ++j) {
            const double y = cfg.grid.box.u2.lo + cfg.grid.box.u2.length() * j / (cfg.grid.ny - 1);
            const double v = eval(h, Valuation{{"x", x}, {"y", y}});
            const Curvatures c = mc.at(x, y);
            rows.push_back({x, y, v, c.K, c.H});
            csv += fmt_csv(x) + "," + fmt_csv(y) + "," + fmt_csv(v) + "," + fmt_csv(c.K) + "," +
                   fmt_csv(c.H) + "\n";
        }
    }
    out.results["rows"] = std::move(rows);
    out.csv = std::move(csv);
    out.verdicts["K"] = verdict_json(constancy_test(h, CurvatureQuantity::K, cfg.grid, cfg.tol));
    out.verdicts["H"] = verdict_json(constancy_test(h, CurvatureQuantity::H, cfg.grid, cfg.tol));
    return out;
}

CommandOutput run_classify(const RunConfig& cfg) {
    CommandOutput out;
    const ProductionModel model = resolve_model(cfg);
    const Product* product = std::get_if<Product>(&model);
    if (!product)
        throw std::invalid_argument(
            "classify needs separable factors: --f/--g or a product model "
            "(use curvature for constancy verdicts of general expressions)");
    const ClassificationResult rk = classify_constant_K(product->f, product->g, cfg.grid, cfg.tol);
    const ClassificationResult rh = classify_constant_H(product->f, product->g, cfg.grid, cfg.tol);
    const auto result_json = [](const ClassificationResult& r) {
        ordered_json j;
        j["label"] = to_string(r.label);
        j["case"] = short_case_name(r.label);
        j["params"] = r.params;
        j["economically_degenerate"] = r.economically_degenerate;
        return j;
    };
    out.results["K"] = result_json(rk);
    out.results["H"] = result_json(rh);
    return out;
}

CommandOutput run_corollary(const RunConfig& cfg) {
    if (!cfg.family)
        throw std::invalid_argument("corollary requires --family spillman or transcendental");
    CommandOutput out;
    const ProductionModel model = family_model(cfg);
    if (const auto* sm = std::get_if<SpillmanMitscherlich>(&model)) {
        const Expr h = to_expr(model);
        const ConstancyVerdict vK = constancy_test(h, CurvatureQuantity::K, cfg.grid, cfg.tol);
        const ConstancyVerdict vH = constancy_test(h, CurvatureQuantity::H, cfg.grid, cfg.tol);
        out.results["family"] = "spillman_mitscherlich";
        out.results["K_constant"] = vK.is_constant;
        out.results["H_constant"] = vH.is_constant;
        out.results["corollary_34_holds"] =
            check_corollary_34(sm->A, sm->a, sm->b, cfg.grid, cfg.tol);
        out.verdicts["K"] = verdict_json(vK);
        out.verdicts["H"] = verdict_json(vH);
        return out;
    }
    if (const auto* tr = std::get_if<Transcendental>(&model)) {
        const Corollary35Result r =
            check_corollary_35(tr->A, tr->a1, tr->b1, tr->a2, tr->b2, cfg.grid, cfg.tol);
        out.results["family"] = "transcendental";
        if (r.k_zero_case)
            out.results["k_zero_case"] = *r.k_zero_case == KZeroBranch::A1 ? "A1" : "A2";
        else
            out.results["k_zero_case"] = nullptr;
        out.results["h_zero"] = r.h_zero;
        return out;
    }
    throw std::invalid_argument("corollary supports --family spillman or transcendental");
}

CommandOutput run_motion_check(const RunConfig& cfg) {
    CommandOutput out;
    const ProductionModel model = resolve_model(cfg);
    const Expr h = to_expr(model);
    for (const auto& v : model_variables(model))
        if (v != "x" && v != "y")
            throw std::invalid_argument("motion-check needs a two-input surface over (x, y)");

    std::mt19937_64 rng(cfg.seed);
    IMotion m;
    m.a = uniform(rng, -2.0, 2.0);
    m.b = uniform(rng, -2.0, 2.0);
    m.c = uniform(rng, -2.0, 2.0);
    m.d = uniform(rng, -2.0, 2.0);
    m.e = uniform(rng, -2.0, 2.0);
    m.phi = uniform(rng, 0.0, 2.0 * M_PI);

    const ParametricSurface surface = ParametricSurface::from_monge(h, cfg.grid.box);
    const ParametricSurface moved = apply_i_motion(m, surface);
    double max_dK = 0.0, max_dH = 0.0;
    for (int i = 0; i < cfg.grid.nx; ++i) {
        const double u1 = cfg.grid.box.u1.lo + cfg.grid.box.u1.length() * i / (cfg.grid.nx - 1);
        for (int j = 0; j < cfg.grid.ny; ++j) {
            const double u2 =
                cfg.grid.box.u2.lo + cfg.grid.box.u2.length() * j / (cfg.grid.ny - 1);
            const Curvatures before = surface.curvatures({u1, u2});
            const Curvatures after = moved.curvatures({u1, u2});
            max_dK = std::max(max_dK, std::abs(after.K - before.K));
            max_dH = std::max(max_dH, std::abs(after.H - before.H));
        }
    }
    out.results["motion"] = {{"a", m.a}, {"b", m.b}, {"c", m.c},
                             {"d", m.d}, {"e", m.e}, {"phi", m.phi}};
    out.results["max_abs_dK"] = max_dK;
    out.results["max_abs_dH"] = max_dH;
    out.results["points"] = cfg.grid.nx * cfg.grid.ny;
    return out;
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
    ordered_json report;
    report["version"] = kToolVersion;
    report["config"] = config_json(cfg);
    report["results"] = nullptr;
    report["verdicts"] = ordered_json::object();
    report["anomalies"] = ordered_json::array();

    int exit_code = 0;
    std::string csv;
    try {
        if (cfg.format == OutputFormat::csv && !grid_command(cfg.command))
            throw std::invalid_argument(
                "--format csv is only available for the grid commands (eval, curvature)");
        if (cfg.grid.nx < 2 || cfg.grid.ny < 2)
            throw std::invalid_argument("grid resolution must be at least 2 per axis");
        if (!(cfg.grid.box.u1.lo > 0.0) || !(cfg.grid.box.u2.lo > 0.0))
            throw std::invalid_argument("grid must lie strictly inside the positive orthant");
        CommandOutput out;
        switch (cfg.command) {
            case Command::eval: out = run_eval(cfg); break;
            case Command::curvature: out = run_curvature(cfg); break;
            case Command::classify: out = run_classify(cfg); break;
            case Command::corollary: out = run_corollary(cfg); break;
            case Command::motion_check: out = run_motion_check(cfg); break;
        }
        report["results"] = std::move(out.results);
        report["verdicts"] = std::move(out.verdicts);
        csv = std::move(out.csv);
    } catch (const AnomalyError& e) {
        report["anomalies"].push_back(e.what());
        report["error"] = {{"code", "anomaly"}, {"message", e.what()}};
        exit_code = 2;
    } catch (const ParseError& e) {
        report["error"] = {{"code", "parse_error"}, {"message", e.what()}, {"offset", e.offset()}};
        exit_code = 1;
    } catch (const EvalError& e) {
        report["error"] = {{"code", "domain_error"}, {"message", e.what()}};
        exit_code = 1;
    } catch (const std::invalid_argument& e) {
        report["error"] = {{"code", "config_error"}, {"message", e.what()}};
        exit_code = 1;
    }

    RunOutcome outcome;
    outcome.exit_code = exit_code;
    if (cfg.format == OutputFormat::csv && exit_code == 0)
        outcome.report = std::move(csv);
    else
        outcome.report = report.dump(2) + "\n";
    return outcome;
}

}  // namespace isoprod
