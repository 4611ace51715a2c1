#pragma once

// Command-line front end: `expbasis gdd|cluster|gram|riesz|a2|observe`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "expbasis/genfun.hpp"
#include "json.hpp"

namespace expbasis {

struct RunConfig {
  std::string command;
  std::string input;          // spectrum JSON path
  std::string nodes;          // gdd: "re,im;re,im;..." alternative to --in
  std::string output = "-";   // report path, "-" for stdout
  std::string csv;            // optional array-data export
  std::optional<double> r;
  std::optional<double> T;    // finite section length; absent means the half-line
  std::optional<double> R;    // product truncation radius
  std::optional<double> h;
  std::optional<GridSpec> grid;
  std::string t_grid;         // gdd: evaluation times "min:max:count"
  std::string method = "residue";
  std::string family = "exp";
  bool raw = false;           // riesz: skip normalization of GDD families
  double gap_floor = 0.0;
  int min_points = 2;
  double A = 1.0, B = 1.0, C = 1.0, D = 1.0;
  int k_max = 25;
  int trials = 100;
  std::uint64_t seed = 1;
  double tol = 1e-7;

  nlohmann::json to_json() const;
};

/// Throws InputError naming the offending flag. Returns nullopt when help
/// was requested (the help text goes to `out`).
std::optional<RunConfig> parse_config(const std::vector<std::string>& args, std::ostream& out);

/// Runs the pipeline and returns the report (config embedded under "config").
nlohmann::json run_report(const RunConfig& cfg);

/// Runs the pipeline and writes the report to cfg.output (or `out` for "-");
/// exit code 0, 1 (numerical degeneracy) or 2 (input error). Diagnostics go
/// to `err`.
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_config + dispatch with exit-code mapping.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// JSON text with every floating-point number printed with 17 significant digits.
std::string dump_report(const nlohmann::json& j);

}  // namespace expbasis
