#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "skinspec/cli.hpp"

namespace cli = skinspec::cli;

int main(int argc, char** argv) {
    CLI::App app{"Exact spectra, skin-effect modes and symbol topology of tridiagonal 2-Toeplitz matrices"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    std::size_t samples = 0;
    std::string grid;
    std::string eps;

    struct Entry {
        const char* name;
        const char* help;
        cli::Command command;
    };
    const Entry entries[] = {
        {"spectrum", "eigenvalues, normalized coordinates and frequencies", cli::Command::spectrum},
        {"modes", "eigenvectors, decay reports and mode profiles", cli::Command::modes},
        {"topology", "symbol curves, winding numbers and pseudospectrum", cli::Command::topology},
    };
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--format", format, "csv or json");
        sub->add_option("--samples", samples, "symbol curve samples (>= 64)");
        sub->add_option("--grid", grid, "re0,re1,im0,im1,nx,ny");
        sub->add_option("--eps", eps, "comma-separated pseudospectrum levels");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cli::RunConfig config = cli::load_config(config_path);
        config.out = out_dir;
        config.format = cli::parse_format(format);
        if (samples != 0) config.samples = samples;
        if (!grid.empty()) config.grid = cli::parse_grid(grid);
        if (!eps.empty()) config.epsilons = cli::parse_epsilons(eps);

        cli::Command command = cli::Command::spectrum;
        for (const auto& e : entries) {
            if (app.got_subcommand(e.name)) command = e.command;
        }
        cli::run_command(command, config);
    } catch (const skinspec::InsufficientSampling& e) {
        std::fprintf(stderr, "error: %s (hint: raise --samples)\n", e.what());
        return cli::exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return cli::exit_code_for(e);
    }
    return 0;
}
