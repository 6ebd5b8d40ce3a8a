#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "contractio/series.hpp"

namespace contractio::cli {

enum class Command { Check, Analyze, Classify, Structure, Verify };
enum class Format { Text, Structured };

std::optional<Command> parse_command(const std::string& name);
std::string to_string(Command c);

inline constexpr std::uint64_t kDefaultSeed = 7;
inline constexpr long kDefaultSamples = 100;

enum ExitCode : int { kOk = 0, kValidation = 1, kPropertyFailure = 2, kUncertified = 3 };

/// Test hooks for exercising the exit-code table.
enum class Fault {
    None,
    TamperModule,  // bump the first factor module after the series is built
    ClaimSimple,   // classify without the simplicity check
};

struct Options {
    Command command = Command::Check;
    std::optional<series::Mode> mode;  // both modes when unset
    std::optional<long> precision;     // overrides the document setting
    std::optional<std::uint64_t> seed;
    long samples = kDefaultSamples;
    long max_root = 50;
    bool strict = false;
    Format format = Format::Text;
    std::string source_name = "<input>";
    Fault fault = Fault::None;
};

struct RunResult {
    int exit_code = kOk;
    nlohmann::ordered_json report;
    std::string output;  // rendered report
};

RunResult run_command(const Options& opts, std::string_view source);

/// `key = value` lines, nested keys joined with '.', array items by index.
std::string render_text(const nlohmann::ordered_json& report);

}  // namespace contractio::cli
