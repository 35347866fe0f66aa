#pragma once
// σ_H quadrature over parametrized surface patches. Provides composite
// tensor-product Gauss–Legendre integration with a two-mesh error estimate,
// smooth gauge cutoff families, volume-growth fits, the second-variation
// integrals, the curvature-decay experiment, and the integral check rows.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heisgeo/checks.hpp"
#include "heisgeo/gallery.hpp"
#include "heisgeo/geometry.hpp"

namespace heisgeo {

struct QuadratureError : std::runtime_error {
  explicit QuadratureError(const std::string& w) : std::runtime_error(w) {}
};

// Chart of a 2n-dimensional surface patch: parameters w in the box [lo,hi]
// map to an ambient point. `map` returns the 2n+1 coordinate functions as
// order-1 jets in the parameters, which is exactly what the area element
// sqrt(det(DPhi^T DPhi)) needs.
struct PatchChart {
  const SurfaceDef* def = nullptr;  // surface carrying the patch (not owned)
  std::vector<double> lo, hi;
  std::function<std::vector<Jet>(const std::vector<double>&)> map;
  int np() const { return static_cast<int>(lo.size()); }
  Point point_at(const std::vector<double>& w) const;
};

// A chart covering a representative noncharacteristic patch of each gallery
// surface, together with a base point near the middle of the patch.
struct GalleryPatch {
  SurfaceDef def;
  PatchChart chart;  // chart.def points at this->def
  Point base;        // on the surface, interior to the patch
};
// The returned object owns its SurfaceDef; keep it alive while integrating.
std::unique_ptr<GalleryPatch> gallery_patch(const std::string& id, int n,
                                            double E = 1.0);

// Unit parameter box on the vertical hyperplane; sigma_H of its image is
// exactly 1 (unit density, orthonormal embedding).
std::unique_ptr<GalleryPatch> vertical_unit_patch(int n);

// Factory of vertical-hyperplane charts whose box contains the support of a
// gauge cutoff of outer radius 2R centred at the origin.
std::function<PatchChart(double)> vertical_chart_factory(const SurfaceDef& def);

using Integrand = std::function<double(const Point&)>;

struct QuadResult {
  double value = 0.0;      // fine-mesh value
  double error = 0.0;      // |fine - coarse| estimate
  double max_abs_u = 0.0;  // max |u(Phi(w))| over fine nodes (chart sanity)
};

// Integrates f dσ_H over the patch with density |∇^H u|/|∇u|_e ·
// sqrt(det(DPhi^T DPhi)). Composite Gauss–Legendre with `cells` subdivisions
// and `nodes` points per axis; the error estimate compares against a mesh
// with half as many subdivisions. Cell slabs run under OpenMP when
// `parallel`; partial sums are combined by a deterministic pairwise
// reduction, so the parallel result is bit-identical to the serial one.
QuadResult integrate_sigmaH(const PatchChart& chart, const Integrand& f,
                            int cells = 3, int nodes = 6,
                            bool parallel = false);

// Destructive deterministic pairwise reduction (used by the integrator; the
// benchmark reuses it).
double pairwise_sum(std::vector<double>& v);

// phi(p) = psi(‖center⁻¹ p‖/R) where psi is the C² quintic step: 1 on [0,1],
// 0 on [2,∞), and 1 - (6s⁵ - 15s⁴ + 10s³) with s = u-1 in between. Since
// max|psi'| = 15/8 and |∇^H gauge| ≤ 1, the family satisfies
// |∇^H phi| ≤ (15/8)/R.
struct CutoffFamily {
  Point center;
  double R = 1.0;
  double value(const Point& p) const;
  // Horizontal gradient, 2n frame coefficients, in closed form.
  Vec gradH(const Point& p) const;
  // phi as an ambient jet at sp.p (branch selected by the value there).
  Jet jet(const JetSpace& sp) const;
};

// Second-variation integrals for the cutoff test function:
//   lhs = ∫ q phi² dσ_H,   rhs = ∫ |∇^{H,S} phi|² dσ_H.
struct StabilityResult {
  double lhs = 0.0, rhs = 0.0;
  double lhs_err = 0.0, rhs_err = 0.0;
};
StabilityResult stability_ratio(const PatchChart& chart,
                                const CutoffFamily& phi, int cells, int nodes,
                                bool parallel);

// Least-squares slope of log(values) against log(radii); values must be
// positive.
double fit_log_slope(const std::vector<double>& radii,
                     const std::vector<double>& values);

// mass(r) = ∫ psi(‖p₀⁻¹ p‖/r) dσ_H for each radius, and the log-log slope.
struct GrowthFit {
  std::vector<double> radii, mass;
  double slope = 0.0;
  double max_rel_err = 0.0;  // worst relative quadrature error estimate
};
GrowthFit volume_growth_fit(const std::function<PatchChart(double)>& charts,
                            const Point& center,
                            const std::vector<double>& radii, int cells,
                            int nodes, bool parallel);

// Admissibility window of the curvature-decay experiment: k in [0, 9/8]
// and beta in [1 - k/3, 1 + sqrt(k/3)).
bool curvature_window_ok(double beta, double k);

struct DecayRow {
  double R = 0.0;
  double lhs = 0.0, lhs_err = 0.0;  // ∫ |h̃|^{2β+2} phi^{2β+2} dσ_H
  double rhs = 0.0, rhs_err = 0.0;  // ∫ |∇^{H,S} phi|^{2β+2} dσ_H
};
struct CurvatureExperiment {
  double beta = 0.0, k = 0.0;
  std::vector<DecayRow> rows;
  double rhs_exponent = 0.0;  // fitted log-log slope of rhs against R
};
// Throws std::invalid_argument when (beta,k) is outside the window above.
CurvatureExperiment curvature_estimate_experiment(
    const std::function<PatchChart(double)>& charts, const Point& center,
    double beta, double k, const std::vector<double>& radii, int cells,
    int nodes, bool parallel);

// All integral check rows (patch area, mesh refinement, chart consistency,
// partial integration, cutoff bounds, volume growth, stability sign rows,
// curvature decay, experiment window).
void run_integral_checks(double tol_scale, bool parallel,
                         std::vector<CheckResult>& out);
std::vector<CheckInfo> integral_check_infos();

}  // namespace heisgeo
