#include "heisgeo/appendix.hpp"

#include <cmath>
#include <random>

namespace heisgeo {
namespace {

CheckResult global_row(const std::string& id, double lhs, double rhs,
                       double resid, double tol, const std::string& anchor,
                       const std::string& notes = "") {
  CheckResult r;
  r.id = id;
  r.surface = "global";
  r.point = "-";
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = resid;
  r.tol = tol;
  r.pass = resid <= tol;
  r.anchor = anchor;
  r.notes = notes;
  return r;
}

// Brute-force admissibility: scan k over (3/4, 2] on a fine grid and test
// g_{S,k,omega}(rho) >= 0 at both endpoints of [m, 2/3] (g is linear in rho).
// The grid starts just above 3/4 because the feasible k-interval can shrink
// to width ~0.006 when (omega, m) sits near the predicate boundary.
bool admissible_brute(double omega, double m) {
  for (int i = 0; i < 2500; ++i) {
    double k = 0.7501 + 0.0005 * i;
    if (k > 2.0) break;
    if (g_sk_omega(k, omega, m) >= 0.0 &&
        g_sk_omega(k, omega, 2.0 / 3.0) >= 0.0) {
      return true;
    }
  }
  return false;
}

bool near_boundary(double omega, double m) {
  if (std::abs(omega - 0.5) < 0.02) return true;
  if (std::abs(m - 2.0 / 9.0) < 0.02) return true;
  if (m < 2.0 / 3.0 - 1e-9 && std::abs(omega - omega_critical(m)) < 0.02)
    return true;
  return false;
}

}  // namespace

double g_sk_omega(double k, double omega, double rho) {
  return (6.0 - 2.0 * omega - 4.0 * k) + (3.0 * omega - 2.0 * k) * rho;
}

double omega_critical(double m) { return (6.0 - 3.0 * m) / (4.0 - 6.0 * m); }

bool admissible(double omega, double m) {
  if (omega <= 0.5) return true;
  if (m > 2.0 / 9.0) return true;
  return omega < omega_critical(m);
}

BetaWindow beta_window(double k, int n) {
  double s = k / (2.0 * n - 1.0);
  return BetaWindow{1.0 - s, 1.0 + std::sqrt(s)};
}

double stability_P(double eps, double beta, double k, int n) {
  return -beta * beta + (2.0 - eps) * beta + k / (2.0 * n - 1.0) - 1.0 + eps;
}

double stability_constant(double beta, double k, int n) {
  if (beta < 1.0) return 1.0 / (1.0 - beta);
  double p0 = stability_P(0.0, beta, k, n);  // = k/(2n-1) - (beta-1)^2
  double eps = p0 / (2.0 * beta);
  double P = stability_P(eps, beta, k, n);
  double Q = 4.0 + (4.0 * beta - 4.0) / eps;
  return beta * (beta + eps) * Q / (4.0 * P) + 1.0 + beta / eps;
}

void run_appendix_checks(double tol_scale, std::vector<CheckResult>& out) {
  {  // closed-form values and monotonicity of the critical threshold
    double r1 = std::abs(omega_critical(0.0) - 1.5);
    double r2 = std::abs(omega_critical(2.0 / 9.0) - 2.0);
    double mono = 0.0;
    for (int i = 0; i < 22; ++i) {
      double d = omega_critical((i + 1) / 100.0) - omega_critical(i / 100.0);
      mono = std::max(mono, -d);
    }
    out.push_back(global_row(
        "appendix_u_threshold", omega_critical(0.0), 1.5,
        std::max({r1, r2, mono}), 1e-12 * tol_scale,
        "u(m) = (3m-6)/(6m-4): u(0) = 3/2, u(2/9) = 2, u increasing"));
  }

  {  // at omega = 0.4, m = 0 every k in (3/4, 9/8] is admissible
    int bad = 0;
    for (int i = 76; i <= 112; ++i) {
      double k = i / 100.0;
      if (!(g_sk_omega(k, 0.4, 0.0) >= 0.0 &&
            g_sk_omega(k, 0.4, 2.0 / 3.0) >= 0.0))
        ++bad;
    }
    if (!(g_sk_omega(1.125, 0.4, 0.0) >= 0.0 &&
          g_sk_omega(1.125, 0.4, 2.0 / 3.0) >= 0.0))
      ++bad;
    out.push_back(global_row(
        "appendix_k_interval", 1.125, 0.75, static_cast<double>(bad), 0.0,
        "omega = 2/5, m = 0: g_{S,k,omega}(rho) >= 0 on [0, 2/3] for every "
        "k in (3/4, 9/8]"));
  }

  {  // closed-form admissibility vs brute-force scan over k
    int mismatches = 0, tested = 0;
    for (int wi = 0; wi <= 20; ++wi) {
      for (int mi = 0; mi <= 33; ++mi) {
        double omega = wi / 10.0, m = mi / 50.0;
        if (near_boundary(omega, m)) continue;
        ++tested;
        if (admissible(omega, m) != admissible_brute(omega, m)) ++mismatches;
      }
    }
    std::mt19937_64 rng(20260815u);
    std::uniform_real_distribution<double> Uo(0.0, 2.0), Um(0.0, 0.66);
    int rnd = 0;
    while (rnd < 100) {
      double omega = Uo(rng), m = Um(rng);
      if (near_boundary(omega, m)) continue;
      ++rnd;
      ++tested;
      if (admissible(omega, m) != admissible_brute(omega, m)) ++mismatches;
    }
    out.push_back(global_row(
        "appendix_admissibility", static_cast<double>(tested), 0.0,
        static_cast<double>(mismatches), 0.0,
        "exists k in (3/4, 2] with g_{S,k,omega}(rho) >= 0 on [m, 2/3]  <=>  "
        "omega <= 1/2 or m > 2/9 or omega < u(m)",
        "pairs at distance < 0.02 from the predicate boundary are skipped"));
  }

  {  // the exponent window reaches past 3/2 exactly when k > 3/4 (n = 2)
    int mismatches = 0;
    for (int i = 0; i <= 200; ++i) {
      double k = i / 100.0;
      BetaWindow w = beta_window(k, 2);
      bool reaches = w.hi > 1.5;
      if (reaches != (k > 0.75)) ++mismatches;
      // [1 - k/(2n-1), 1 + sqrt(k/(2n-1))) collapses to the empty set exactly
      // at k = 0.
      if ((w.lo < w.hi) != (k > 0.0)) ++mismatches;
    }
    out.push_back(global_row(
        "appendix_beta_window", 201.0, 0.0, static_cast<double>(mismatches),
        0.0,
        "beta in [1 - k/(2n-1), 1 + sqrt(k/(2n-1))) nonempty for k > 0; it "
        "contains exponents beta > 3/2 iff k > 3/4"));
  }

  {  // the curvature-estimate constant is finite and positive on the window
    int bad = 0;
    double cmax = 0.0;
    for (double k : {0.8, 1.0, 1.125}) {
      BetaWindow w = beta_window(k, 2);
      for (int i = 0; i <= 20; ++i) {
        double beta = 1.0 + (w.hi - 1.0 - 0.05) * i / 20.0;
        double p0 = stability_P(0.0, beta, k, 2);
        double eps = p0 / (2.0 * beta);
        double P = stability_P(eps, beta, k, 2);
        double C = stability_constant(beta, k, 2);
        if (!(p0 > 0.0) || !(P > 0.0) || !std::isfinite(C) || !(C > 0.0)) ++bad;
        cmax = std::max(cmax, C);
      }
      for (double beta : {0.5, 0.8}) {
        double C = stability_constant(beta, k, 2);
        if (!std::isfinite(C) || !(C > 0.0)) ++bad;
      }
    }
    out.push_back(global_row(
        "appendix_stability_constant", cmax, 0.0, static_cast<double>(bad),
        0.0,
        "P(eps, beta, k) = -beta^2 + (2-eps) beta + k/(2n-1) - 1 + eps > 0 at "
        "eps = P(0,beta,k)/(2 beta); the resulting constant beta (beta+eps) "
        "Q(eps,beta) / (4 P) + 1 + beta/eps is finite and positive",
        "beta sampled across [1, beta_max - 0.05] for k in {0.8, 1, 1.125}"));
  }
}

std::vector<CheckInfo> appendix_check_infos() {
  return {
      {"appendix_u_threshold", "equality", "-",
       "u(m) = (3m-6)/(6m-4): u(0) = 3/2, u(2/9) = 2, u increasing"},
      {"appendix_k_interval", "equality", "-",
       "omega = 2/5, m = 0: every k in (3/4, 9/8] keeps g_{S,k,omega} >= 0 "
       "on [0, 2/3]"},
      {"appendix_admissibility", "equality", "-",
       "exists k in (3/4, 2] with g_{S,k,omega}(rho) >= 0 on [m, 2/3] <=> "
       "omega <= 1/2 or m > 2/9 or omega < u(m)"},
      {"appendix_beta_window", "equality", "-",
       "beta window [1 - k/(2n-1), 1 + sqrt(k/(2n-1))) contains beta > 3/2 "
       "iff k > 3/4"},
      {"appendix_stability_constant", "equality", "-",
       "the curvature-estimate constant is finite and positive across the "
       "admissible (beta, k) range"},
  };
}

}  // namespace heisgeo
