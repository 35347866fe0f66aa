// ============================================================================
// Ambient structure tests for the group, frame, gauge, and connection.
//
// Group axioms and the dilation homomorphism are checked at random points;
// the Koranyi gauge is checked for delta_lambda homogeneity and left
// invariance; gauge_jet is cross-checked against the closed-form horizontal
// gradient
//   X_j rho = (4|z|^2 x_j + 2 t y_j) / (4 rho^3),
//   Y_j rho = (4|z|^2 y_j - 2 t x_j) / (4 rho^3),
// which also pins |grad^H rho| <= 1. The frame/connection identities
// ([X_j,Y_j] = -2T, metricity, J parallel, zero curvature) run through the
// randomized structure suite.
// ============================================================================

#include <cmath>
#include <random>
#include <vector>

#include "harness.hpp"
#include "heisgeo/heis.hpp"
#include "heisgeo/checks.hpp"

using namespace heisgeo;
using testh::qoi;
using testh::record;

static Point random_point(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  Vec c(2 * n + 1);
  for (int k = 0; k < 2 * n + 1; ++k) c[k] = u(rng);
  return Point(n, c);
}

static double max_abs(const Vec& v) { return v.cwiseAbs().maxCoeff(); }

static void test_group_axioms() {
  std::mt19937_64 rng(31);
  double worst_assoc = 0.0, worst_inv = 0.0, worst_id = 0.0, worst_hom = 0.0;
  for (int n : {1, 2, 3}) {
    Point e(n, Vec::Zero(2 * n + 1));
    for (int rep = 0; rep < 50; ++rep) {
      Point p = random_point(n, rng), q = random_point(n, rng), r = random_point(n, rng);
      worst_assoc = std::fmax(
          worst_assoc,
          max_abs(group_mul(group_mul(p, q), r).c - group_mul(p, group_mul(q, r)).c));
      worst_inv = std::fmax(worst_inv, max_abs(group_mul(p, group_inv(p)).c));
      worst_id = std::fmax(worst_id, max_abs(group_mul(p, e).c - p.c));
      const double lam = 0.3 + 2.0 * std::generate_canonical<double, 53>(rng);
      worst_hom = std::fmax(
          worst_hom,
          max_abs(dilate(group_mul(p, q), lam).c -
                  group_mul(dilate(p, lam), dilate(q, lam)).c));
    }
  }
  record("group associativity", worst_assoc < 1e-12, qoi("max_err", worst_assoc));
  record("p * p^{-1} = e", worst_inv < 1e-12, qoi("max_err", worst_inv));
  record("p * e = p", worst_id == 0.0, qoi("max_err", worst_id));
  record("dilations are homomorphisms", worst_hom < 1e-12, qoi("max_err", worst_hom));
}

static void test_gauge() {
  std::mt19937_64 rng(32);
  double worst_hom = 0.0, worst_linv = 0.0;
  for (int n : {1, 2, 3}) {
    for (int rep = 0; rep < 50; ++rep) {
      Point p = random_point(n, rng), q = random_point(n, rng), g = random_point(n, rng);
      const double lam = 0.3 + 2.0 * std::generate_canonical<double, 53>(rng);
      worst_hom = std::fmax(worst_hom,
                            testh::rel_err(koranyi_gauge(dilate(p, lam)),
                                           lam * koranyi_gauge(p)));
      worst_linv = std::fmax(
          worst_linv, testh::rel_err(koranyi_dist(group_mul(g, p), group_mul(g, q)),
                                     koranyi_dist(p, q)));
    }
  }
  record("gauge delta_lambda homogeneity", worst_hom < 1e-12, qoi("max_err", worst_hom));
  record("gauge distance left invariance", worst_linv < 1e-12, qoi("max_err", worst_linv));
}

static void test_gauge_jet() {
  std::mt19937_64 rng(33);
  const int n = 2;
  double worst_val = 0.0, worst_grad = 0.0, worst_bound = -1e300, worst_linv = 0.0;
  Point origin(n, Vec::Zero(2 * n + 1));
  for (int rep = 0; rep < 40; ++rep) {
    Point p = random_point(n, rng);
    if (koranyi_gauge(p) < 0.3) continue;
    JetSpace sp = JetSpace::at(p);
    Jet rho = gauge_jet(sp, origin);
    worst_val = std::fmax(worst_val, testh::rel_err(rho.value(), koranyi_dist(origin, p)));

    // closed-form horizontal gradient at p (offset p0 = 0)
    const double z2 = p.c.head(2 * n).squaredNorm();
    const double t = p.t(), r = koranyi_gauge(p), r3 = r * r * r;
    double g2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double gx = (4.0 * z2 * p.x(j) + 2.0 * t * p.y(j)) / (4.0 * r3);
      const double gy = (4.0 * z2 * p.y(j) - 2.0 * t * p.x(j)) / (4.0 * r3);
      worst_grad = std::fmax(worst_grad, std::fabs(sp.Z(j, rho).value() - gx));
      worst_grad = std::fmax(worst_grad, std::fabs(sp.Z(n + j, rho).value() - gy));
      g2 += gx * gx + gy * gy;
    }
    worst_bound = std::fmax(worst_bound, g2 - 1.0);

    // left invariance of the differential: frame coefficients of grad rho(g^{-1} p)
    // computed at p with offset g match those computed at g^{-1} p with offset 0.
    Point g = random_point(n, rng);
    Point q = group_mul(group_inv(g), p);
    if (koranyi_gauge(q) < 0.3) continue;
    JetSpace spq = JetSpace::at(q);
    Jet rho_off = gauge_jet(sp, g);
    Jet rho_q = gauge_jet(spq, origin);
    for (int k = 0; k < 2 * n; ++k)
      worst_linv = std::fmax(
          worst_linv, std::fabs(sp.Z(k, rho_off).value() - spq.Z(k, rho_q).value()));
  }
  record("gauge_jet value = gauge distance", worst_val < 1e-12, qoi("max_err", worst_val));
  record("gauge_jet gradient matches closed form", worst_grad < 1e-11,
         qoi("max_err", worst_grad));
  record("|grad^H rho| <= 1", worst_bound <= 1e-12, qoi("max_excess", worst_bound));
  record("gauge gradient is left invariant", worst_linv < 1e-11, qoi("max_err", worst_linv));
}

static void test_frame_and_J() {
  std::mt19937_64 rng(34);
  const int n = 3;
  Point p = random_point(n, rng);
  Eigen::MatrixXd F = frame_at(p);
  bool shape_ok = F.rows() == 2 * n + 1 && F.cols() == 2 * n + 1;
  double worst = 0.0;
  if (shape_ok) {
    for (int j = 0; j < n; ++j) {
      Vec xrow = Vec::Zero(2 * n + 1);
      xrow[j] = 1.0;
      xrow[2 * n] = p.y(j);  // X_j = dx_j + y_j dt
      Vec yrow = Vec::Zero(2 * n + 1);
      yrow[n + j] = 1.0;
      yrow[2 * n] = -p.x(j);  // Y_j = dy_j - x_j dt
      worst = std::fmax(worst, max_abs(Vec(F.row(j).transpose()) - xrow));
      worst = std::fmax(worst, max_abs(Vec(F.row(n + j).transpose()) - yrow));
    }
    Vec trow = Vec::Zero(2 * n + 1);
    trow[2 * n] = 1.0;
    worst = std::fmax(worst, max_abs(Vec(F.row(2 * n).transpose()) - trow));
  }
  record("frame_at rows are X_j = dx_j + y_j dt, Y_j = dy_j - x_j dt, T = dt",
         shape_ok && worst == 0.0, qoi("max_err", worst));

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_j = 0.0, worst_norm = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    Vec h(2 * n);
    for (int k = 0; k < 2 * n; ++k) h[k] = u(rng);
    Vec jj = apply_J(apply_J(h));
    worst_j = std::fmax(worst_j, max_abs(jj + h));
    worst_norm = std::fmax(worst_norm, std::fabs(apply_J(h).norm() - h.norm()));
  }
  record("J^2 = -Id on horizontal coefficients", worst_j == 0.0);
  record("J is an isometry", worst_norm < 1e-15);
}

static void test_brackets() {
  std::mt19937_64 rng(35);
  const int n = 2;
  Point p = random_point(n, rng);
  JetSpace sp = JetSpace::at(p);
  auto unit = [&](int k) {
    Vec e = Vec::Zero(2 * n);
    e[k] = 1.0;
    return as_tfield(sp, hconst(sp, e));
  };

  // [X_1, Y_1] = -2T
  TField b = bracket(sp, unit(0), unit(n));
  double worst = std::fabs(b.tau.value() + 2.0);
  for (int k = 0; k < 2 * n; ++k) worst = std::fmax(worst, std::fabs(b.h[k].value()));
  record("[X_1, Y_1] = -2T", worst < 1e-15, qoi("max_err", worst));

  // [X_1, X_2] = 0 and [X_1, Y_2] = 0
  double worst0 = 0.0;
  for (const TField& bb : {bracket(sp, unit(0), unit(1)), bracket(sp, unit(0), unit(n + 1))}) {
    worst0 = std::fmax(worst0, std::fabs(bb.tau.value()));
    for (int k = 0; k < 2 * n; ++k) worst0 = std::fmax(worst0, std::fabs(bb.h[k].value()));
  }
  record("[X_1, X_2] = [X_1, Y_2] = 0", worst0 == 0.0, qoi("max_err", worst0));

  // hgrad components are the frame derivatives
  Jet f = sin(sp.coord(0)) * sp.coord(n) + 0.5 * sp.coord(2 * n) * sp.coord(1);
  HField gf = hgrad(sp, f);
  double worst_g = 0.0;
  for (int k = 0; k < 2 * n; ++k)
    worst_g = std::fmax(worst_g, std::fabs(gf[k].value() - sp.Z(k, f).value()));
  record("hgrad components = Z_k f", worst_g == 0.0);
}

static void test_structure_suite() {
  for (int n : {1, 2, 3}) {
    const double worst = structure_suite_max_residual(n, 200, 9000 + n);
    char name[96];
    std::snprintf(name, sizeof(name),
                  "randomized structure suite n=%d (200 reps) below 1e-10", n);
    record(name, worst < 1e-10, qoi("max_residual", worst));
  }
}

int main() {
  std::printf("== heis: group and gauge ==\n");
  test_group_axioms();
  test_gauge();
  test_gauge_jet();

  std::printf("\n== heis: frame, J, brackets ==\n");
  test_frame_and_J();
  test_brackets();

  std::printf("\n== heis: randomized structure suite ==\n");
  test_structure_suite();

  return testh::summary("test_heis");
}
