#ifndef UAVVLC_CLI_HPP
#define UAVVLC_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavvlc/optimizer.hpp"
#include "uavvlc/scenario.hpp"

namespace uavvlc::cli {

inline constexpr int kExitFeasible = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;

enum class Mode { single, sweep, montecarlo, binding };

std::string_view to_string(Mode mode);

/// Configuration problem tied to a named field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct SweepRange {
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;

  /// from, from + step, ... up to and including `to` (within 1e-9 steps).
  std::vector<double> values() const;
};

struct RunConfig {
  Mode mode = Mode::single;
  ScenarioSpec spec;  // spec.params.uav_height is overwritten per height
  std::vector<double> heights{8.0};
  std::uint64_t seed = 1;
  std::size_t runs = 100;
  std::optional<SweepRange> cth_sweep;
  std::vector<Scheme> schemes{kAllSchemes.begin(), kAllSchemes.end()};
  std::filesystem::path out = "results";
  OptimizerConfig optimizer;
  std::size_t threads = 1;
  std::optional<std::filesystem::path> case1;
  std::optional<std::filesystem::path> case2;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// Sets one field from its textual key and value. Angles are in degrees.
/// Throws ConfigError for unknown keys and malformed values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Applies a key-value file: one `key = value` per line, `#` starts a comment.
void load_config_file(RunConfig& config, const std::filesystem::path& path);

/// Echo of every setting in the key-value format, loadable again.
std::string to_key_values(const RunConfig& config);

/// Shortest decimal that parses back to the same double; "nan"/"inf" otherwise.
std::string format_number(double value);

int run_single(const RunConfig& config, std::ostream& log);
int run_sweep(const RunConfig& config, std::ostream& log);
int run_montecarlo(const RunConfig& config, std::ostream& log);
int run_binding(const RunConfig& case1, const RunConfig& case2, const std::filesystem::path& out,
             std::ostream& log);

/// Dispatches on config.mode. Binding-constraint cases default to the base config with
/// thresholds (1.2, 0.1) and (1.8, 0.6) unless case files are given.
int run(const RunConfig& config, std::ostream& log);

}  // namespace uavvlc::cli

#endif  // UAVVLC_CLI_HPP
