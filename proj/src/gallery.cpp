#include "heisgeo/gallery.hpp"

#include <cmath>

namespace heisgeo {

namespace {

ExprPtr znorm_expr(int n) {  // |z| = sqrt(Σ x_j² + y_j²)
  ExprPtr s = ex_pow(ex_x(0), 2.0);
  for (int j = 1; j < n; ++j) s = ex_add(s, ex_pow(ex_x(j), 2.0));
  for (int j = 0; j < n; ++j) s = ex_add(s, ex_pow(ex_y(j), 2.0));
  return ex_sqrt(s);
}

Vec filled(int d, double v) { return Vec::Constant(d, v); }

}  // namespace

std::vector<std::string> gallery_ids() {
  return {"vertical", "horizontal", "paraboloid", "catenoid", "helicoid"};
}

GalleryEntry gallery_entry(const std::string& id, int n, double E) {
  const int d = 2 * n + 1;
  GalleryEntry g;
  g.def.n = n;
  g.def.id = id;

  if (id == "vertical") {
    // u = x_1: non-characteristic everywhere, α ≡ 0, h ≡ 0, q ≡ 0.
    g.def.u = ex_x(0);
    g.region = Region{filled(d, -2.0), filled(d, 2.0)};
    g.region.lo[2 * n] = -4.0;
    g.region.hi[2 * n] = 4.0;
    g.notes = "vertical hyperplane; totally geodesic, alpha=0, stability with equality";
    return g;
  }

  if (id == "horizontal") {
    // u = t: characteristic exactly at z = 0; α = 1/|z| on the chosen side.
    g.def.u = ex_t();
    g.region = Region{filled(d, -2.0), filled(d, 2.0)};
    g.region.lo[2 * n] = -0.5;
    g.region.hi[2 * n] = 0.5;
    g.region.zmin = 0.6;
    g.notes = "horizontal plane t=0; single characteristic point at the origin";
    return g;
  }

  if (id == "paraboloid") {
    // u = t − Σ_j x_j y_j: characteristic locus {x̄ = 0}, minimal elsewhere.
    ExprPtr s = ex_mul(ex_x(0), ex_y(0));
    for (int j = 1; j < n; ++j) s = ex_add(s, ex_mul(ex_x(j), ex_y(j)));
    g.def.u = ex_sub(ex_t(), s);
    g.region = Region{filled(d, -2.0), filled(d, 2.0)};
    g.region.lo[2 * n] = -7.0;  // contains t = <xbar, ybar> over the draw box
    g.region.hi[2 * n] = 7.0;
    // keep |x̄| bounded below so the characteristic set stays at arm's length
    g.draw = [n](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> ux(0.35, 1.8), uy(-1.8, 1.8), usign(0, 1);
      Vec c(2 * n + 1);
      double t = 0.0;
      for (int j = 0; j < n; ++j) {
        double xj = ux(rng) * (usign(rng) < 0.5 ? -1.0 : 1.0);
        double yj = uy(rng);
        c[j] = xj;
        c[n + j] = yj;
        t += xj * yj;
      }
      c[2 * n] = t;
      return c;
    };
    g.notes = "hyperbolic paraboloid t=<x,y>; minimal, P1+P2 hold, P3 fails";
    return g;
  }

  if (id == "catenoid") {
    CatenoidProfile prof{n, E};
    const double a = prof.throat();
    g.def.u = ex_sub(ex_t(), ex_profile(prof, znorm_expr(n)));
    // The inward-tilted normal carries the signed curvature of the rotational
    // surface: with it the umbilic slope is ell = -2E|z|^{-4} on the upper
    // branch.  The +1 orientation of u = t - f(|z|) gives the opposite sign,
    // so flip.
    g.def.orientation = -1;
    const double r0 = 1.25 * a, r1 = 3.0 * a;
    g.region = Region{filled(d, -r1), filled(d, r1)};
    g.region.lo[2 * n] = 0.0;
    g.region.hi[2 * n] = prof.value(r1) + 1.0;
    g.region.zmin = r0;
    g.region.zmax = r1;
    g.draw = [n, prof, r0, r1](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> ur(r0, r1);
      std::normal_distribution<double> un(0.0, 1.0);
      Vec dir(2 * n);
      do {
        for (int k = 0; k < 2 * n; ++k) dir[k] = un(rng);
      } while (dir.norm() < 1e-8);
      dir.normalize();
      double r = ur(rng);
      Vec c(2 * n + 1);
      c.head(2 * n) = r * dir;
      c[2 * n] = prof.value(r);  // upper branch
      return c;
    };
    g.notes = "rotational catenoid (upper branch); minimal, horizontally umbilic";
    return g;
  }

  if (id == "helicoid") {
    // u = x_1 sin t − y_1 cos t; ruled, non-characteristic everywhere.
    g.def.u = ex_sub(ex_mul(ex_x(0), ex_sin(ex_t())), ex_mul(ex_y(0), ex_cos(ex_t())));
    g.region = Region{filled(d, -3.0), filled(d, 3.0)};
    g.draw = [n](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> us(0.4, 2.2), uth(-2.0, 2.0), uxi(-1.5, 1.5);
      double s = us(rng), th = uth(rng);
      Vec c = Vec::Zero(2 * n + 1);
      c[0] = s * std::cos(th);
      c[n] = s * std::sin(th);
      for (int j = 1; j < n; ++j) {
        c[j] = uxi(rng);
        c[n + j] = uxi(rng);
      }
      c[2 * n] = th;
      return c;
    };
    g.notes = "helicoid x1 sin t = y1 cos t; minimal, non-characteristic";
    return g;
  }

  throw SurfaceError("unknown gallery id '" + id + "'");
}

}  // namespace heisgeo
