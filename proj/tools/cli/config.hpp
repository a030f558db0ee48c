#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "catseye/error.hpp"

namespace catseye::cli {

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// Everything a subcommand can be told. Unset optionals fall back to
/// per-command defaults in `resolve`.
struct RunConfig {
  std::string command;

  std::optional<double> b;
  std::optional<double> s;
  std::optional<double> gamma;
  bool diagonal = false;  ///< s = -gamma

  std::optional<double> ell;
  std::optional<double> ell_ratio;

  std::optional<std::size_t> nx;
  std::optional<std::size_t> ny;
  std::optional<std::size_t> modes;
  std::optional<std::size_t> max_iter;
  std::optional<int> y_order;
  std::optional<double> tol;
  std::optional<double> ode_tol;
  std::optional<double> x1_max;
  std::optional<double> ball;

  std::optional<std::string> sweep;
  std::optional<std::string> values;
  std::optional<std::string> range;
  bool log_range = false;
  std::optional<std::size_t> threads;

  std::optional<std::string> mode;  ///< certify: periodic | solitary
  bool newton = false;
  bool certify = false;
  bool refine = false;
  bool svg = false;
  bool no_field = false;

  std::optional<std::string> out;       ///< --out
  std::optional<std::string> out_file;  ///< "out" key of the config file
  std::optional<std::string> config_path;
};

/// Fill every field that is still unset (or false) from a flat JSON object
/// whose keys are the long flag names. Unknown keys and wrong types throw.
void overlay_file(RunConfig& config, const nlohmann::json& file);

void overlay_file(RunConfig& config, const std::string& path);

/// Parameters of the underlying laminar flow after the b / (s, gamma) rules.
struct ResolvedParams {
  double s = 0.0;
  double gamma = 0.0;
  std::optional<double> b;  ///< absent when gamma = 0
};

/// Exactly one of b or gamma. With b, s is optional (default kDefaultSlip, or
/// -gamma with `diagonal`); with gamma, s is required.
ResolvedParams resolve_params(const RunConfig& config);

inline constexpr double kDefaultSlip = -0.05;

/// Output directory: --out, then CATSEYE_OUTPUT_DIR, then the config file, then ".".
std::string output_dir(const RunConfig& config);

/// Positive tolerances, grid dims >= 16, ell ratio in (0, 1).
void validate(const RunConfig& config);

/// Sweep values from --values "a,b,c" or --range "lo:hi:n" (geometric with --log).
std::vector<double> sweep_values(const RunConfig& config);

}  // namespace catseye::cli
