#ifndef DYSCERT_CLI_HPP
#define DYSCERT_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyscert/class_geometry.hpp"
#include "dyscert/dys_engine.hpp"

namespace dyscert::cli {

enum class Command { rates, srg, figure1, verify, iterate };
enum class Format { csv, json, svg };

/// Exit-code contract of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Parsed flags. Class and step defaults are the reference instance.
struct RunConfig {
    Command command = Command::rates;
    double mu_f = 0.7;
    Smoothness L_f = Smoothness::finite(1.5);
    double mu_g = 2.0;
    Smoothness L_g = Smoothness::finite(3.0);
    double mu_h = 0.8;
    Smoothness L_h = Smoothness::finite(1.3);
    double alpha = 0.9;
    double lambda = 1.0;
    /// Unset means the per-command default (32 for srg, 256 otherwise).
    std::optional<std::size_t> grid_n;
    /// Unset means csv, except figure1 clouds (svg) and verify (text report).
    std::optional<Format> format;
    std::optional<std::string> output_path;
    std::uint64_t seed = 0;

    // figure1
    std::optional<std::string> cloud_path;
    std::size_t plot_grid_n = 32;
    // verify
    std::optional<std::size_t> sets;
    // iterate
    std::optional<std::string> instance_path;
    std::vector<std::string> rows;
    std::size_t iters = 100;
    std::optional<double> tol;
};

inline constexpr std::size_t kSrgDefaultGridN = 32;

/**
 * Instance text: one "c_f c_g c_h b_f b_g b_h" row per coordinate,
 * whitespace separated; blank lines and lines starting with '#' are skipped.
 * Errors name the 1-based line.
 */
DysInstance parse_instance(std::string_view text, const AlgoParams& params);

/// Runs an already-parsed configuration.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and executes. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace dyscert::cli

#endif  // DYSCERT_CLI_HPP
