// Command-line front end: check, peirce, geodesic, distance, interpolate.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jgeom/cli.hpp"

namespace {

void print_error(const std::string& kind, const std::string& message)
{
    jgeom::cli::Json j;
    j["error"] = kind;
    j["message"] = message;
    std::cerr << j.dump() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    using namespace jgeom;

    CLI::App app{"Geometry of rank-r projection manifolds: Peirce data, geodesics, distances"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<double> tol_cluster, tol_invert;
    std::optional<std::size_t> samples;
    std::string format, config_path;
    app.add_option("--tol-cluster", tol_cluster, "Eigenvalue/singular value clustering gap");
    app.add_option("--tol-invert", tol_invert, "Invertibility threshold on P1(a)b");
    app.add_option("--format", format, "Output format: json or csv");
    app.add_option("--samples", samples, "Number of geodesic samples (>= 2)");
    app.add_option("--config", config_path, "Config file (default ./jgconfig.json when present)");

    std::string file_a, file_b, file_x, out;
    double tau = 0.5;

    auto* check = app.add_subcommand("check", "Validate a matrix file as a projection");
    check->add_option("file", file_a, "Matrix file")->required();

    auto* peirce = app.add_subcommand("peirce", "Peirce components of x relative to projection a");
    peirce->add_option("a", file_a, "Projection file")->required();
    peirce->add_option("x", file_x, "Hermitian matrix file")->required();
    peirce->add_option("--out-prefix", out, "Write <prefix>_E1.json, <prefix>_Ehalf.json, <prefix>_E0.json");

    auto* geo = app.add_subcommand("geodesic", "Sample the geodesic from a to b");
    geo->add_option("a", file_a, "Start projection")->required();
    geo->add_option("b", file_b, "End projection")->required();

    auto* dist = app.add_subcommand("distance", "Riemann distance and principal angles");
    dist->add_option("a", file_a, "First projection")->required();
    dist->add_option("b", file_b, "Second projection")->required();

    auto* interp = app.add_subcommand("interpolate", "Point at parameter t on the geodesic from a to b");
    interp->add_option("a", file_a, "Start projection")->required();
    interp->add_option("b", file_b, "End projection")->required();
    interp->add_option("--t", tau, "Curve parameter");
    interp->add_option("--out", out, "Write the interpolant to this matrix file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cli::RunConfig cfg;
        if (!config_path.empty()) cfg = cli::load_config(config_path, cfg);
        else if (std::filesystem::exists("jgconfig.json")) cfg = cli::load_config("jgconfig.json", cfg);
        if (tol_cluster) cfg.tolerances.tol_cluster = *tol_cluster;
        if (tol_invert) cfg.tolerances.tol_invert = *tol_invert;
        if (samples) cfg.sample_count = *samples;
        if (!format.empty()) cfg.format = cli::parse_format(format);
        if (!cfg.valid()) throw ParseError("invalid tolerances or sample count");

        cli::Report report;
        if (*check) report = cli::cmd_check(file_a, cfg);
        else if (*peirce) report = cli::cmd_peirce(file_a, file_x, out, cfg);
        else if (*geo) report = cli::cmd_geodesic(file_a, file_b, cfg);
        else if (*dist) report = cli::cmd_distance(file_a, file_b, cfg);
        else report = cli::cmd_interpolate(file_a, file_b, tau, out, cfg);
        std::cout << report.render(cfg.format);
        return 0;
    } catch (const Error& e) {
        print_error(e.error_class() == ErrorClass::validation     ? "validation"
                    : e.error_class() == ErrorClass::precondition ? "precondition"
                                                                  : "numerical",
                    e.what());
        return cli::exit_code_for(e.error_class());
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 4;
    }
}
