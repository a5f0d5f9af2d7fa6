#ifndef ZETAPSI_CLI_HPP
#define ZETAPSI_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace zetapsi::cli {

struct RunConfig {
  unsigned precision_digits = 50;
  std::int64_t grid_points = 10000;
  double grid_inset = 1e-6;
  std::int64_t sigma_N = 200;
  std::string output_format = "json";
  std::optional<std::string> output_path;
  /// Set when grid_points came from a flag or the config file rather than the
  /// default; certify then uses it for its pointwise grid.
  bool grid_points_given = false;
  bool output_format_given = false;

  /// Throws std::invalid_argument on a non-positive field, sigma_N < 2 or an
  /// unknown format.
  void validate() const;
};

/// Applies `key=value` lines onto `config`. Blank lines and text after `#`
/// are ignored. Keys are the field names above or the matching flag names.
/// Throws std::invalid_argument on an unknown key or a malformed value.
void apply_config_text(const std::string& text, RunConfig& config);

/// Entry point shared by the executable and the tests. Returns 0 when every
/// check passes, 1 when a check fails, 2 on domain, numerical, usage or I/O
/// errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zetapsi::cli

#endif  // ZETAPSI_CLI_HPP
