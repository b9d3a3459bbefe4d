#include <iostream>

#include <CLI11.hpp>

#include "pifweno/app.hpp"

using namespace pifweno;

int main(int argc, char** argv) {
    CLI::App app{"Single-step positivity-preserving WENO solver for the Euler equations"};
    app.require_subcommand(1);

    std::string config_path;
    CliOverrides overrides;
    std::string mesh_text;
    double cfl = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "Config file (key = value)")->required();
        sub->add_option("--output-dir", overrides.output_dir, "Directory for output files");
        sub->add_option("--mesh", mesh_text, "Mesh override, N or NxM");
        sub->add_option("--cfl", cfl, "CFL number override");
        sub->add_flag("--no-limiter", overrides.no_limiter, "Disable the positivity limiter");
    };
    CLI::App* run = app.add_subcommand("run", "Run one simulation");
    CLI::App* conv = app.add_subcommand("convergence", "Run a grid convergence study");
    add_common(run);
    add_common(conv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (!mesh_text.empty()) overrides.mesh = parse_mesh(mesh_text);
        if (cfl != 0.0) overrides.cfl = cfl;
        RunConfig cfg = load_config(config_path);
        apply_overrides(cfg, overrides);
        if (*run) return run_simulation(cfg, std::cout);
        return run_convergence(cfg, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidStateError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolverFailure;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
