#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "isoprod/cli.hpp"

namespace {

struct SubcommandState {
    CLI::App* cmd = nullptr;
    isoprod::Command command = isoprod::Command::curvature;
    std::string expr_text, f_text, g_text, family, model_json, out_path;
    std::string grid_text, grid_y_text, alphas_text;
    std::string format_text = "json";
    double A = 0, a = 0, b = 0, a1 = 0, b1 = 0, a2 = 0, b2 = 0;
    double tol = isoprod::kDefaultTol;
    std::uint64_t seed = 42;
};

void add_common_options(SubcommandState& s) {
    CLI::App* cmd = s.cmd;
    cmd->add_option("--expr", s.expr_text, "expression h(x,y)");
    cmd->add_option("--f", s.f_text, "factor f(x) of a product surface");
    cmd->add_option("--g", s.g_text, "factor g(y) of a product surface");
    cmd->add_option("--family", s.family,
                    "model family: cobb_douglas, spillman, transcendental");
    cmd->add_option("--model", s.model_json, "JSON model literal");
    cmd->add_option("--A", s.A, "family parameter A");
    cmd->add_option("--a", s.a, "family parameter a");
    cmd->add_option("--b", s.b, "family parameter b");
    cmd->add_option("--a1", s.a1, "family parameter a1");
    cmd->add_option("--b1", s.b1, "family parameter b1");
    cmd->add_option("--a2", s.a2, "family parameter a2");
    cmd->add_option("--b2", s.b2, "family parameter b2");
    cmd->add_option("--alphas", s.alphas_text, "comma-separated Cobb-Douglas exponents");
    cmd->add_option("--grid", s.grid_text, "grid as min:max:count (both axes)");
    cmd->add_option("--grid-y", s.grid_y_text, "y-axis grid as min:max:count");
    cmd->add_option("--tol", s.tol, "constancy tolerance")->capture_default_str();
    cmd->add_option("--seed", s.seed, "sampling seed")->capture_default_str();
    cmd->add_option("--format", s.format_text, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", s.out_path, "output path (default stdout)");
}

isoprod::RunConfig to_config(const SubcommandState& s) {
    isoprod::RunConfig cfg;
    cfg.command = s.command;
    const CLI::App* cmd = s.cmd;
    if (cmd->count("--expr")) cfg.expr_text = s.expr_text;
    if (cmd->count("--f")) cfg.f_text = s.f_text;
    if (cmd->count("--g")) cfg.g_text = s.g_text;
    if (cmd->count("--family")) cfg.family = s.family;
    if (cmd->count("--model")) cfg.model_json = s.model_json;
    if (cmd->count("--out")) cfg.out_path = s.out_path;
    if (cmd->count("--A")) cfg.family_params["A"] = s.A;
    if (cmd->count("--a")) cfg.family_params["a"] = s.a;
    if (cmd->count("--b")) cfg.family_params["b"] = s.b;
    if (cmd->count("--a1")) cfg.family_params["a1"] = s.a1;
    if (cmd->count("--b1")) cfg.family_params["b1"] = s.b1;
    if (cmd->count("--a2")) cfg.family_params["a2"] = s.a2;
    if (cmd->count("--b2")) cfg.family_params["b2"] = s.b2;
    if (cmd->count("--alphas")) {
        std::size_t pos = 0;
        while (pos <= s.alphas_text.size()) {
            const std::size_t comma = s.alphas_text.find(',', pos);
            const std::string item = s.alphas_text.substr(
                pos, comma == std::string::npos ? comma : comma - pos);
            cfg.alphas.push_back(std::stod(item));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    if (cmd->count("--grid")) {
        const isoprod::GridAxis axis = isoprod::parse_grid_axis(s.grid_text);
        cfg.grid.box.u1 = axis.interval;
        cfg.grid.nx = axis.count;
        cfg.grid.box.u2 = axis.interval;
        cfg.grid.ny = axis.count;
    }
    if (cmd->count("--grid-y")) {
        const isoprod::GridAxis axis = isoprod::parse_grid_axis(s.grid_y_text);
        cfg.grid.box.u2 = axis.interval;
        cfg.grid.ny = axis.count;
    }
    cfg.tol = s.tol;
    cfg.seed = s.seed;
    cfg.format = s.format_text == "csv" ? isoprod::OutputFormat::csv : isoprod::OutputFormat::json;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isotropic-geometry invariants of production-function graph surfaces"};
    app.require_subcommand(1);

    std::vector<SubcommandState> subs(5);
    const std::pair<const char*, isoprod::Command> names[] = {
        {"eval", isoprod::Command::eval},
        {"curvature", isoprod::Command::curvature},
        {"classify", isoprod::Command::classify},
        {"corollary", isoprod::Command::corollary},
        {"motion-check", isoprod::Command::motion_check},
    };
    for (std::size_t i = 0; i < 5; ++i) {
        subs[i].command = names[i].second;
        subs[i].cmd = app.add_subcommand(names[i].first);
        add_common_options(subs[i]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    for (const auto& sub : subs) {
        if (!sub.cmd->parsed()) continue;
        isoprod::RunConfig cfg;
        try {
            cfg = to_config(sub);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        const isoprod::RunOutcome outcome = isoprod::run(cfg);
        if (cfg.out_path) {
            std::ofstream out(*cfg.out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot open output path " << *cfg.out_path << "\n";
                return 1;
            }
            out << outcome.report;
        } else {
            std::cout << outcome.report;
        }
        return outcome.exit_code;
    }
    return 1;
}
