#pragma once
// Pointwise verification catalog. Every identity and inequality is evaluated
// at concrete surface points through the jet pipeline; each check yields one
// CheckResult row. Equality checks report a residual; inequality checks also
// report a margin (pass means margin >= -tol). Inapplicable checks (failed
// hypothesis gates) are skipped, and the gates actually verified are recorded
// in the notes field.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "heisgeo/geometry.hpp"

namespace heisgeo {

struct CheckResult {
  std::string id;
  std::string surface;
  std::string point;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double margin = std::numeric_limits<double>::quiet_NaN();  // NaN for equalities
  double tol = 0.0;
  bool pass = false;
  std::string anchor;
  std::string notes;
  std::vector<std::pair<std::string, double>> terms;
};

inline bool is_inequality(const CheckResult& r) { return r.margin == r.margin; }

// Hypothesis gates measured at one point.
struct Gates {
  bool minimal = false;  // H = 0 (and tangential gradient of H = 0)
  bool p1 = false;       // nabla_{J(nu)} nu = ell J(nu)
  bool p2 = false;       // grad^{H,S} alpha parallel to J(nu)
  bool p3 = false;       // J(nu)alpha + alpha^2 >= 0
  double H = 0.0, gradH = 0.0, p1_res = 0.0, p2_res = 0.0, p3_val = 0.0;
};

// Everything the pointwise catalog needs at one (surface, point) pair.
struct CheckCtx {
  const SurfaceDef* def = nullptr;
  std::string surface;   // surface id for report rows
  std::string point;     // point label for report rows
  Point p;
  double tol_scale = 1.0;
  FrameOptions fopts;
  uint64_t field_seed = 0;  // seeds the random test fields of structure checks
  std::string example_kind;  // gallery family for closed-form checks ("" = none)
  double example_E = 1.0;    // catenoid parameter
};

// Runs every applicable pointwise check at ctx.p and appends the rows.
// Throws CharacteristicError if the point is characteristic.
void run_pointwise_checks(const CheckCtx& ctx, std::vector<CheckResult>& out);

// Measures the hypothesis gates at a point (used by the runner's gallery verb).
Gates measure_gates(const SurfaceDef& def, const Point& p, double tol_scale = 1.0);

// Ambient structure suite at `reps` random base points with fresh random
// polynomial fields each time (commutators, torsion, metricity, J-parallelism,
// flatness). Returns the largest residual seen; surfaces are not involved.
double structure_suite_max_residual(int n, int reps, uint64_t seed);

// Catalog description for `list-checks`.
struct CheckInfo {
  std::string id;
  std::string kind;    // equality | inequality | property | example | integral
  std::string gates;   // human-readable gate list
  std::string anchor;  // the formula being checked
};
std::vector<CheckInfo> pointwise_check_infos();

}  // namespace heisgeo
