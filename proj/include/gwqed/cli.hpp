#pragma once

// Command-line front end: configuration parsing, subcommand dispatch and
// CSV/JSON emission.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwqed/scan.hpp"

namespace gwqed {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitDomain = 3,
  kExitNumerical = 4,
  kExitConfig = 5,
};

/// Malformed configuration file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Command-line usage problem detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;

  double gain = 0.8;
  double theta_right = 0.0;
  double theta_left = 0.0;
  double ds = 0.2 * 3.14159265358979323846;
  double jc = 1.0;
  double jp = 0.5;
  double delta = 2.0;
  int n = 16;
  double length = 0.0;  // 0: derived from the geometry
  double delta_h = 0.01;
  double spacing = 3.14159265358979323846;
  double loss1 = 0.0;
  double loss2 = 0.0;
  double dk = 0.0;

  std::string scan;  // subcommand-specific scan parameter, empty = none
  std::optional<double> scan_min;
  std::optional<double> scan_max;
  std::optional<int> steps;
  std::optional<double> jp_min;
  std::optional<double> jp_max;
  std::optional<int> jp_steps;

  std::string method = "auto";   // waveguide: auto | analytic | rk4
  std::string sector = "even";   // fidelity: even | odd | lowest
  bool center = false;
  bool extended = false;
  bool continuum = false;
  bool convention_report = false;
  double threshold = 1e-3;
  int samples = 0;

  std::string output;  // empty = stdout
  std::string format;  // csv | json, empty = per-subcommand default
  unsigned long long seed = 0;

  bool operator==(const RunConfig&) const = default;

  /// Flat key=value echo of every field, values at full precision.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Parses "0.2pi", "pi/2", "-3pi/4", "1.5" and plain numbers.
double parse_real(const std::string& text);

/// Reads flat key=value lines; blank lines and lines starting with '#' are
/// skipped. Throws ConfigError on a malformed line.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Parses argv (argv[0] is the program name). A --config FILE supplies
/// defaults that command-line flags override. Throws CLI11 parse errors,
/// UsageError, ConfigError or DomainError.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes the configured subcommand, writing to `out` unless an output
/// path is set. Module errors propagate.
void run(const RunConfig& cfg, std::ostream& out);

/// Full entry point with exit-code mapping.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// CSV rendering: '#' metadata lines, header, rows at 12 significant digits.
void write_csv(const ScanResult& result, std::ostream& out);

}  // namespace gwqed
