// ============================================================================
// Extrinsic-geometry tests.
//
// The adapted frame must be orthonormal as a field (all low-order Taylor
// coefficients of the Gram matrix vanish, not just the values), the scalar
// invariants must not depend on pivoting or on a random orthogonal remix of
// the tangent frame, and on each gallery surface the computed invariants must
// reproduce the closed forms:
//   vertical     W = 1, alpha = 0, h = 0
//   horizontal   alpha = 1/|z|, J(nu) = z/|z|, H = 0, J(nu)alpha + alpha^2 = 0
//   paraboloid   alpha = 1/(2|xbar|), H = 0, J(nu)alpha + alpha^2 = -1/(4|xbar|^2)
//   catenoid     ell = -2E/|z|^4, |htilde|^2 = 6E^2/|z|^8, J(nu)alpha + alpha^2
//                = 3E^2/|z|^8, grad_{J(nu)} nu = ell J(nu)
//   helicoid     |grad^H u|^2 = (1+s^2)^2 + s^2 sum_{j>=2}(x_j^2+y_j^2),
//                J(nu)alpha + alpha^2 = ((1+s^2)/|grad^H u|^2)^2, H = 0
// ============================================================================

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "harness.hpp"
#include "heisgeo/geometry.hpp"
#include "heisgeo/sampling.hpp"

using namespace heisgeo;
using testh::qoi;
using testh::record;

static std::vector<Point> points_on(const std::string& id, int count, uint64_t seed,
                                    double E = 1.0) {
  return sample_points(gallery_entry(id, 2, E), count, seed);
}

// All Taylor coefficients of f up to total degree <= deg (capped by order).
static double max_low_coeff(const Jet& f, int deg) {
  const int dims = f.dims();
  const int cap = std::min(deg, f.order());
  double worst = 0.0;
  std::vector<int> e(dims, 0);
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == dims) {
      worst = std::fmax(worst, std::fabs(f.coeff(e)));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[v] = k;
      rec(v + 1, left - k);
    }
    e[v] = 0;
  };
  rec(0, cap);
  return worst;
}

static void test_frame_orthonormal(uint64_t remix_seed, const char* label) {
  double worst = 0.0;
  for (const std::string& id : gallery_ids()) {
    for (const Point& p : points_on(id, 3, 555)) {
      FrameOptions fo;
      fo.remix_seed = remix_seed;
      SurfaceJets sj = surface_jets(gallery_entry(id, 2).def, p, 3, fo);
      worst = std::fmax(worst, max_low_coeff(ip(sj.nu, sj.nu) - 1.0, 2));
      for (int i = 0; i < sj.ns; ++i) {
        worst = std::fmax(worst, max_low_coeff(ip(sj.E[i], sj.nu), 2));
        for (int j = i; j < sj.ns; ++j) {
          Jet g = ip(sj.E[i], sj.E[j]);
          if (i == j) g -= 1.0;
          worst = std::fmax(worst, max_low_coeff(g, 2));
        }
      }
    }
  }
  char name[128];
  std::snprintf(name, sizeof(name),
                "frame Gram is identically orthonormal through degree 2 (%s)", label);
  record(name, worst < 1e-12, qoi("max_coeff", worst));
}

static void test_state_basics() {
  double worst = 0.0;
  for (const std::string& id : gallery_ids()) {
    for (const Point& p : points_on(id, 3, 556)) {
      GeometryState gs = geometry_state(gallery_entry(id, 2).def, p);
      worst = std::fmax(worst, std::fabs(gs.nu.norm() - 1.0));
      worst = std::fmax(worst, (gs.Jnu - apply_J(gs.nu)).norm());
      worst = std::fmax(worst, std::fabs(gs.N.norm() - 1.0));
      // Svec = T - alpha nu in (2n+1)-frame coefficients
      Vec sref(5);
      sref.head(4) = -gs.alpha * gs.nu;
      sref[4] = 1.0;
      worst = std::fmax(worst, (gs.Svec - sref).norm());
      // |h|^2 - |htilde|^2 = 2(n-1) alpha^2
      const double h2 = gs.h.squaredNorm();
      worst = std::fmax(worst, std::fabs(h2 - gs.norm2_htilde - 2.0 * gs.alpha * gs.alpha));
      // trace of htilde = trace of h = H
      worst = std::fmax(worst, std::fabs(gs.htilde.trace() - gs.Hmean));
      worst = std::fmax(worst, std::fabs(gs.h.trace() - gs.Hmean));
    }
  }
  record("state assembly: |nu|=1, Jnu, |N|=1, S = T - alpha nu, norms, traces",
         worst < 1e-10, qoi("max_err", worst));
}

// ----------------------------------------------------------------------------
// Closed forms per gallery surface.
// ----------------------------------------------------------------------------
static void test_vertical() {
  double worst = 0.0;
  for (const Point& p : points_on("vertical", 6, 600)) {
    GeometryState gs = geometry_state(gallery_entry("vertical", 2).def, p);
    worst = std::fmax(worst, std::fabs(gs.nH_norm - 1.0));
    worst = std::fmax(worst, std::fabs(gs.alpha));
    worst = std::fmax(worst, gs.h.norm());
    worst = std::fmax(worst, std::fabs(gs.q));
    worst = std::fmax(worst, std::fabs(gs.p3_value()));
  }
  record("vertical: W = 1, alpha = 0, h = 0, q = 0", worst < 1e-12,
         qoi("max_err", worst));
}

static void test_horizontal() {
  double worst = 0.0;
  for (const Point& p : points_on("horizontal", 6, 601)) {
    GeometryState gs = geometry_state(gallery_entry("horizontal", 2).def, p);
    const double z = p.c.head(4).norm();
    worst = std::fmax(worst, testh::rel_err(gs.alpha, 1.0 / z));
    worst = std::fmax(worst, (gs.Jnu - Vec(p.c.head(4) / z)).norm());
    worst = std::fmax(worst, std::fabs(gs.Hmean));
    worst = std::fmax(worst, gs.DJnu.norm());
    worst = std::fmax(worst, std::fabs(gs.p3_value()));
  }
  record("horizontal: alpha = 1/|z|, J(nu) = z/|z|, H = 0, grad_{J(nu)}nu = 0, "
         "J(nu)alpha + alpha^2 = 0",
         worst < 1e-10, qoi("max_err", worst));
}

static void test_paraboloid() {
  double worst = 0.0;
  for (const Point& p : points_on("paraboloid", 6, 602)) {
    GeometryState gs = geometry_state(gallery_entry("paraboloid", 2).def, p);
    const double xb2 = p.x(0) * p.x(0) + p.x(1) * p.x(1);
    worst = std::fmax(worst, testh::rel_err(gs.alpha, 0.5 / std::sqrt(xb2)));
    worst = std::fmax(worst, std::fabs(gs.Hmean));
    worst = std::fmax(worst, gs.DJnu.norm());
    worst = std::fmax(worst, testh::rel_err(gs.p3_value(), -0.25 / xb2));
  }
  record("paraboloid: alpha = 1/(2|xbar|), H = 0, grad_{J(nu)}nu = 0, "
         "J(nu)alpha + alpha^2 = -1/(4|xbar|^2)",
         worst < 1e-10, qoi("max_err", worst));
}

static void test_catenoid() {
  double worst = 0.0, worst_p1 = 0.0;
  for (double E : {0.5, 1.0, 2.0}) {
    for (const Point& p : points_on("catenoid", 5, 603, E)) {
      GeometryState gs = geometry_state(gallery_entry("catenoid", 2, E).def, p);
      const double z4 = std::pow(p.c.head(4).squaredNorm(), 2.0);
      const double z8 = z4 * z4;
      worst = std::fmax(worst, testh::rel_err(gs.ell, -2.0 * E / z4));
      worst = std::fmax(worst, testh::rel_err(gs.norm2_htilde, 6.0 * E * E / z8));
      worst = std::fmax(worst, testh::rel_err(gs.p3_value(), 3.0 * E * E / z8));
      worst = std::fmax(worst, std::fabs(gs.Hmean));
      worst_p1 = std::fmax(worst_p1, (gs.DJnu - gs.ell * gs.Jnu).norm());
    }
  }
  record("catenoid: ell = -2E/|z|^4, |htilde|^2 = 6E^2/|z|^8, "
         "J(nu)alpha + alpha^2 = 3E^2/|z|^8, H = 0",
         worst < 1e-8, qoi("max_err", worst));
  record("catenoid: grad_{J(nu)}nu = ell J(nu)", worst_p1 < 1e-8,
         qoi("max_err", worst_p1));
}

static void test_helicoid() {
  double worst = 0.0;
  for (const Point& p : points_on("helicoid", 6, 604)) {
    GeometryState gs = geometry_state(gallery_entry("helicoid", 2).def, p);
    const double s2 = p.x(0) * p.x(0) + p.y(0) * p.y(0);
    const double rest = p.x(1) * p.x(1) + p.y(1) * p.y(1);
    const double W2 = (1.0 + s2) * (1.0 + s2) + s2 * rest;
    worst = std::fmax(worst, testh::rel_err(gs.nH_norm * gs.nH_norm, W2));
    worst = std::fmax(worst, testh::rel_err(gs.p3_value(),
                                            (1.0 + s2) * (1.0 + s2) / (W2 * W2)));
    worst = std::fmax(worst, std::fabs(gs.Hmean));
  }
  record("helicoid: |grad^H u|^2 = (1+s^2)^2 + s^2(x_2^2+y_2^2), "
         "J(nu)alpha + alpha^2 = ((1+s^2)/|grad^H u|^2)^2, H = 0",
         worst < 1e-10, qoi("max_err", worst));
}

// ----------------------------------------------------------------------------
// Frame-choice invariance and error handling.
// ----------------------------------------------------------------------------
static void test_frame_invariance() {
  double worst = 0.0;
  for (const std::string& id : gallery_ids()) {
    for (const Point& p : points_on(id, 3, 557)) {
      const SurfaceDef def = gallery_entry(id, 2).def;
      auto scalars = [&](FrameOptions fo) {
        GeometryState gs = geometry_state(surface_jets(def, p, 2, fo));
        return std::vector<double>{gs.alpha,        gs.Hmean,       gs.ell,
                                   gs.q,            gs.norm2_htilde, gs.norm2_DJnu,
                                   gs.p1_residual(), gs.p2_residual(), gs.p3_value()};
      };
      FrameOptions base;
      FrameOptions piv;
      piv.pivot_variant = 1;
      FrameOptions rmx;
      rmx.remix_seed = 7;
      const auto s0 = scalars(base), s1 = scalars(piv), s2 = scalars(rmx);
      for (size_t k = 0; k < s0.size(); ++k) {
        const double scale = 1.0 + std::fabs(s0[k]);
        worst = std::fmax(worst, std::fabs(s0[k] - s1[k]) / scale);
        worst = std::fmax(worst, std::fabs(s0[k] - s2[k]) / scale);
      }
    }
  }
  record("scalar invariants agree across pivoting and frame remix", worst < 1e-10,
         qoi("max_scaled_err", worst));
}

static void test_characteristic_error() {
  GalleryEntry par = gallery_entry("paraboloid", 2);
  Vec c(5);
  c << 0.0, 0.0, 1.0, 0.5, 0.0;  // on {u=0} with xbar = 0: characteristic
  bool on_surface = std::fabs(par.def.value(c)) < 1e-14;
  bool threw = false;
  try {
    (void)geometry_state(par.def, Point(2, c));
  } catch (const CharacteristicError&) {
    threw = true;
  }
  record("characteristic point raises CharacteristicError", on_surface && threw);
}

static void test_order_consistency() {
  double worst = 0.0;
  for (const std::string& id : gallery_ids()) {
    for (const Point& p : points_on(id, 2, 558)) {
      const SurfaceDef def = gallery_entry(id, 2).def;
      GeometryState a = geometry_state(def, p);
      GeometryState b = geometry_state(surface_jets(def, p, kJetDeg));
      worst = std::fmax(worst, std::fabs(a.alpha - b.alpha));
      worst = std::fmax(worst, std::fabs(a.Hmean - b.Hmean));
      worst = std::fmax(worst, std::fabs(a.ell - b.ell));
      worst = std::fmax(worst, std::fabs(a.q - b.q));
      worst = std::fmax(worst, std::fabs(a.norm2_htilde - b.norm2_htilde));
    }
  }
  record("low-order and full-order jets give identical invariants", worst < 1e-12,
         qoi("max_err", worst));
}

int main() {
  std::printf("== geometry: frames ==\n");
  test_frame_orthonormal(0, "adapted");
  test_frame_orthonormal(7, "remixed");
  test_state_basics();

  std::printf("\n== geometry: gallery closed forms ==\n");
  test_vertical();
  test_horizontal();
  test_paraboloid();
  test_catenoid();
  test_helicoid();

  std::printf("\n== geometry: invariance and guards ==\n");
  test_frame_invariance();
  test_characteristic_error();
  test_order_consistency();

  return testh::summary("test_geometry");
}
