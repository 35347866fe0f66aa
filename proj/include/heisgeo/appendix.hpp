// Admissibility analysis for the weighted hypothesis family
//   4 J(nu)alpha + (4 + omega) alpha^2 >= 0,  omega in [0,2],
// feeding the curvature-decay exponent window. Everything here is scalar
// arithmetic: the checks compare closed-form predicates against brute-force
// scans, independent of any surface.
#pragma once

#include <vector>

#include "heisgeo/checks.hpp"

namespace heisgeo {

// g_{S,k,omega}(rho) per unit |htilde|^2 with rho = ell^2/|htilde|^2:
//   (6 - 2 omega - 4k) + (3 omega - 2k) rho.
double g_sk_omega(double k, double omega, double rho);

// u(m) = (6 - 3m)/(4 - 6m): the critical omega below which some k in (3/4, 2]
// keeps g_{S,k,omega} >= 0 for all rho in [m, 2/3].
double omega_critical(double m);

// True if there exists k in (3/4, 2] with g_{S,k,omega}(rho) >= 0 for all
// rho in [m, 2/3] (closed form: omega <= 1/2, or m > 2/9, or omega < u(m)).
bool admissible(double omega, double m);

// Exponent window for the curvature estimate at a given k (n = 2):
//   beta in [1 - k/(2n-1), 1 + sqrt(k/(2n-1))).
struct BetaWindow {
  double lo, hi;
};
BetaWindow beta_window(double k, int n);

// P(eps, beta, k) = -beta^2 + (2-eps) beta + k/(2n-1) - 1 + eps  (n = 2).
double stability_P(double eps, double beta, double k, int n);

// The constant of the curvature estimate for beta >= 1 (finite iff P > 0
// at the chosen eps).
double stability_constant(double beta, double k, int n);

// Global (surface-free) checks; surface column reads "global", point "-".
void run_appendix_checks(double tol_scale, std::vector<CheckResult>& out);

std::vector<CheckInfo> appendix_check_infos();

}  // namespace heisgeo
