// meshplot command-line driver: render a plot spec to SVG, validate a
// spec, or evaluate a filter expression against explicit bindings.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meshplot/meshplot.hpp"

namespace {

// "WIDTHxHEIGHT", e.g. "640x480"
bool parse_size(const std::string& text, double& width, double& height) {
    auto x = text.find('x');
    if (x == std::string::npos) return false;
    auto w = meshplot::parse_number(text.substr(0, x));
    auto h = meshplot::parse_number(text.substr(x + 1));
    if (!w || !h || *w <= 0 || *h <= 0) return false;
    width = *w;
    height = *h;
    return true;
}

int run_eval(const std::string& source, const std::vector<std::string>& bindings) {
    meshplot::Env env;
    for (const std::string& bind : bindings) {
        auto eq = bind.find('=');
        auto value = eq == std::string::npos ? std::nullopt
                                             : meshplot::parse_number(bind.substr(eq + 1));
        if (!value) {
            std::cerr << "error: --bind expects name=value, got '" << bind << "'\n";
            return 1;
        }
        env[bind.substr(0, eq)] = *value;
    }
    try {
        double result = meshplot::evaluate(meshplot::parse_expression(source), env);
        std::cout << meshplot::format_shortest(result) << "\n";
        return 0;
    } catch (const meshplot::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Declarative matrix/scatter plot renderer"};
    app.require_subcommand(1);

    std::string spec_path, out_path = "out.svg", size_text;
    meshplot::RunOverrides overrides;
    auto* render = app.add_subcommand("render", "Render a plot spec to SVG");
    render->add_option("spec", spec_path, "Plot spec file")->required();
    render->add_option("-o,--output", out_path, "Output SVG path");
    render->add_option("--size", size_text, "Canvas size as WIDTHxHEIGHT");
    render->add_flag("--no-colorbar", overrides.no_colorbar, "Suppress the colorbar");
    render->add_flag("--verbose", overrides.verbose, "Report pipeline stages");

    std::string check_path;
    auto* check = app.add_subcommand("check", "Validate a plot spec without rendering");
    check->add_option("spec", check_path, "Plot spec file")->required();

    std::string expr_source;
    std::vector<std::string> bindings;
    auto* eval = app.add_subcommand("eval", "Evaluate a filter expression");
    eval->add_option("expr", expr_source, "Expression, e.g. \"x > 1 ? x : nan\"")->required();
    eval->add_option("--bind", bindings, "Variable binding name=value (repeatable)");

    CLI11_PARSE(app, argc, argv);

    if (render->parsed()) {
        if (!size_text.empty()) {
            double width = 0, height = 0;
            if (!parse_size(size_text, width, height)) {
                std::cerr << "error: --size expects WIDTHxHEIGHT, got '" << size_text << "'\n";
                return 1;
            }
            overrides.width = width;
            overrides.height = height;
        }
        return meshplot::run(spec_path, out_path, overrides);
    }
    if (check->parsed()) {
        int status = meshplot::check(check_path);
        if (status == 0) std::cout << "OK\n";
        return status;
    }
    return run_eval(expr_source, bindings);
}
