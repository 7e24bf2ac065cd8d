#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skinspec/capacitance.hpp"
#include "skinspec/error.hpp"
#include "skinspec/params.hpp"
#include "skinspec/spectral.hpp"

namespace skinspec::cli {

enum class Mode { matrix, chain, interface };
enum class Format { csv, json };
enum class Command { spectrum, modes, topology };

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

struct RunConfig {
    Mode mode = Mode::matrix;
    PerturbedDimerParams params;  ///< matrix mode
    std::size_t n = 0;            ///< matrix order (matrix mode) or resonator count
    capacitance::ResonatorChain chain;  ///< chain and interface modes

    std::size_t samples = 1024;
    std::optional<spectral::GridSpec> grid;  ///< derived from the symbol curves when absent
    std::vector<double> epsilons{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    std::size_t samples_per_gap = 8;

    std::filesystem::path out = ".";
    Format format = Format::csv;
};

/// Parses a JSON configuration document. Throws ConfigError.
[[nodiscard]] RunConfig parse_config(std::string_view json_text);

/// Reads and parses a configuration file. Throws ConfigError.
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// "re0,re1,im0,im1,nx,ny".
[[nodiscard]] spectral::GridSpec parse_grid(std::string_view text);

/// Comma-separated positive finite values.
[[nodiscard]] std::vector<double> parse_epsilons(std::string_view text);

[[nodiscard]] Format parse_format(std::string_view text);

/// Shortest round-trip decimal form of a finite double.
[[nodiscard]] std::string format_number(double value);

/// Runs a command and writes its files below config.out. Library exceptions propagate.
void run_command(Command command, const RunConfig& config);

/// Maps an exception to the documented exit codes (2 config, 3 numerical, 4 sampling).
[[nodiscard]] int exit_code_for(const std::exception& error) noexcept;

}  // namespace skinspec::cli
