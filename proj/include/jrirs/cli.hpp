#pragma once

#include <jrirs/harness.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace jrirs::cli {

struct RunConfig
{
    ExperimentSpec spec;
    std::string out_path;
    std::size_t threads = 0;
};

/// Either a runnable config, or an exit code with the text to print
/// (help on stdout for code 0, a diagnostic naming the flag otherwise).
struct ParseResult
{
    std::optional<RunConfig> config;
    int exit_code = 0;
    std::string message;
};

/// Parses argv (argv[0] is the program name). Values come from, in rising
/// priority: built-in defaults, the --config file, command-line flags.
ParseResult parse_args(const std::vector<std::string>& argv);

/// Reads a flat `key = value` file (`#` starts a comment) into
/// `--key=value` arguments. Throws std::runtime_error for unreadable files
/// and malformed lines.
std::vector<std::string> read_config_file(const std::string& path);

inline constexpr const char* kCsvHeader =
    "experiment,scheme,sweep_param,sweep_value,trials,mean_rate_bps_hz,std_rate_bps_hz,seed";

/// CSV text: header plus one row per (scheme, sweep value), sorted by scheme
/// name then sweep value; floats printed with 6 decimals.
std::string format_csv(const AggregateResult& result);

/// Writes format_csv(result) to `path`. Throws std::runtime_error if the file
/// cannot be written.
void write_csv(const AggregateResult& result, const std::string& path);

/// Full CLI run; returns the process exit code.
int run(const std::vector<std::string>& argv);

}  // namespace jrirs::cli
