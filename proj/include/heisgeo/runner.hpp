#pragma once
// Run orchestration: configuration loading, check execution over the gallery
// and user-supplied level sets, canonical report rows, CSV/JSON writers, and
// the run-metadata sidecar (the only place timestamps appear).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "heisgeo/checks.hpp"
#include "heisgeo/gallery.hpp"

namespace heisgeo {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& w) : std::runtime_error(w) {}
};

// A level set supplied through the configuration file.
struct UserSurface {
  std::string id;
  int n = 2;
  int orientation = 1;
  std::string u;               // s-expression for the defining function
  std::vector<double> lo, hi;  // sampling box, 2n+1 entries
  double zmin = 0.0, zmax = 1e300;
};

struct RunConfig {
  uint64_t seed = 20260815;
  int points_per_surface = 6;
  int pivot_variants = 2;
  double tol_scale = 1.0;
  int jobs = 0;  // 0 = library default; 1 = serial; >1 = thread count
  bool suite_structure = true;
  bool suite_pointwise = true;
  bool suite_appendix = true;
  bool suite_integral = true;
  std::vector<std::string> only_checks;  // empty = everything
  std::vector<std::string> gallery;      // empty = all five surfaces
  double catenoid_E = 1.0;
  std::vector<UserSurface> user_surfaces;
};

// Reads a JSON configuration; unknown keys, malformed values, or unknown
// check ids raise ConfigError.
RunConfig load_config(const std::string& path);
RunConfig parse_config_json(const std::string& text);

// Full catalog across all suites (pointwise + appendix + integral +
// structure rows).
std::vector<CheckInfo> full_catalog();

// Throws ConfigError when an id is not in the catalog.
void validate_check_ids(const std::vector<std::string>& ids);

struct RunReport {
  std::vector<CheckResult> rows;  // canonically sorted
  int n_pass = 0, n_fail = 0;
  int n_surfaces = 0, n_points = 0;
};

RunReport run_all(const RunConfig& cfg);

// CSV columns: surface,point,check_id,lhs,rhs,residual,margin,tol,pass,anchor
// (margin empty for equalities; doubles in %.17g).
std::string csv_report(const std::vector<CheckResult>& rows);
void write_text_file(const std::string& path, const std::string& content);

// Versioned JSON summary; no timestamps (reruns are byte-identical).
std::string report_json(const RunConfig& cfg, const RunReport& rep);

// Sidecar with wall-clock data.
std::string run_meta_json(const std::string& started_utc,
                          const std::string& finished_utc, double seconds,
                          int rows);
std::string iso_utc_now();

}  // namespace heisgeo
