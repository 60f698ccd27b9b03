#pragma once

// Command-line front end: parses a group spec, runs one pipeline command and
// renders the JSON report plus a short human summary.

#include <cstddef>
#include <optional>
#include <string>

namespace qga::cli {

enum class Command { decompose, idempotents, matrix_units, units, verify };
enum class Format { json, summary };

struct RunConfig {
  std::string group_spec;
  Command command = Command::decompose;
  std::size_t order_cap = 256;
  int xy_height_cap = 6;
  std::optional<std::string> output_path;
  unsigned jobs = 1;
  Format format = Format::json;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitCap = 3;

struct RunResult {
  int exit_code = kExitOk;
  std::string json;     ///< the report (also produced for errors)
  std::string summary;  ///< human-readable lines
};

/// Never throws for library errors; they become exit codes and an
/// {"error": …} report.
RunResult run(const RunConfig& config);

const char* to_string(Command c);

/// Parses argv, runs, writes output; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace qga::cli
