#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace lagtorus::cli {

enum class Command { Analyze, Stationarity, Scan, Ode, Reduce, Intersections, Verify };

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command c);

struct RunConfig {
    Command command = Command::Analyze;
    std::string input_path;  ///< curve spec, family spec (scan) or {c, k} (ode)
    std::string output_dir;  ///< empty: print only
    std::size_t n_samples = 2048;
    std::map<std::string, double> tolerances;
    std::uint64_t seed = 20240611;
    std::optional<double> c; ///< ode: overrides the input file
    std::optional<int> k;
    std::size_t ode_steps = 1024;
};

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2 };

/// Throws DomainError unless n_samples >= 64 is a power of two.
void validate(const RunConfig& config);

/// Parses "NAME=VALUE"; ParseError on malformed input.
std::pair<std::string, double> parse_tolerance(std::string_view text);

/// Runs one command. Diagnostics go to err; the summary goes to out.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace lagtorus::cli
