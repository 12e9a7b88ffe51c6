#pragma once

// Verification harness: suites of checks over the body catalog, reports in
// CSV or JSON, and the command-line front end.

#include "hobody/core.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hobody {

/// Bad flags, unknown suite, invalid (n, m): exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or malformed catalog/config, unwritable output: exit code 3.
class InputError : public Error {
 public:
  using Error::Error;
};

enum class Provenance { paper_constant, derived_closed_form, derived_oracle, mc_reference };

std::string to_string(Provenance p);

struct ReportRow {
  std::string suite;
  std::string body;
  int n = 0;
  int m = 0;
  double value = 0.0;
  double std_error = 0.0;
  double reference = 0.0;
  Provenance provenance = Provenance::derived_oracle;
  bool pass = false;
  double wall_ms = 0.0;
};

struct SuiteReport {
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;  ///< errors caught while computing failed rows
  bool passed() const;
  std::size_t failures() const;
};

struct SuiteConfig {
  int n = 2;
  int m = 1;
  std::optional<std::size_t> samples;  ///< unset: each suite's default budget
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerance;  ///< suite -> relative floor for MC equality checks
  std::optional<std::string> catalog;
  std::optional<std::string> out;
  std::string format = "csv";

  /// Throws UsageError unless 1 <= n <= 4, 1 <= m <= 3, nm <= 12, samples >= 1000, format known.
  void validate() const;
};

/// "suite=value" as used by --tol.
std::pair<std::string, double> parse_tolerance(const std::string& spec);

/// Seed from HOBODY_SEED when set and numeric; throws UsageError otherwise.
void apply_env(SuiteConfig& config, const char* env_seed);

/// Overlays keys of a JSON config file (n, m, samples, seed, tol, catalog, out, format).
void apply_config_file(SuiteConfig& config, const std::string& path);

const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite in order).
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

std::string format_report(const SuiteReport& report, const std::string& format);
/// Writes the report; throws InputError when the path cannot be written.
void emit_report(const SuiteReport& report, const std::string& format, const std::string& path);

/// Parses a CSV report back into rows (wall_ms included).
std::vector<ReportRow> parse_csv_report(const std::string& text);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hobody
