// Timing comparison of the OpenMP quadrature kernels against the serial
// reference path. Both paths share the deterministic pairwise reduction, so
// the values must agree bit for bit.

#include <chrono>
#include <cstdio>

#include "heisgeo/gallery.hpp"
#include "heisgeo/geometry.hpp"
#include "heisgeo/quadrature.hpp"

using namespace heisgeo;

namespace {

double seconds(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void report(const char* name, double serial_s, double parallel_s,
            double serial_v, double parallel_v) {
  std::printf("%-34s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n",
              name, serial_s, parallel_s, serial_s / parallel_s,
              serial_v == parallel_v ? "values identical"
                                     : "VALUES DIFFER");
}

}  // namespace

int main() {
  // 1. density-only kernel: smoothed-indicator mass on a vertical patch
  {
    auto gp = gallery_patch("vertical", 2);
    const Point origin(2, Vec::Zero(5));
    const PatchChart ch = vertical_chart_factory(gp->def)(2.0);
    const CutoffFamily cf{origin, 2.0};
    Integrand f = [&](const Point& p) { return cf.value(p); };
    QuadResult qs, qp;
    const double ts = seconds([&] { qs = integrate_sigmaH(ch, f, 4, 8, false); });
    const double tp = seconds([&] { qp = integrate_sigmaH(ch, f, 4, 8, true); });
    report("volume mass (1M nodes, density)", ts, tp, qs.value, qp.value);
  }

  // 2. geometry-heavy kernel: second-variation integrand on a catenoid patch
  {
    auto gp = gallery_patch("catenoid", 2, 1.0);
    const SurfaceDef& def = gp->def;
    const CutoffFamily cf{gp->base, 0.25};
    Integrand f = [&](const Point& p) {
      const double pv = cf.value(p);
      if (pv == 0.0) return 0.0;
      const GeometryState gs = geometry_state(def, p);
      return gs.q * pv * pv;
    };
    QuadResult qs, qp;
    const double ts = seconds([&] { qs = integrate_sigmaH(gp->chart, f, 3, 5, false); });
    const double tp = seconds([&] { qp = integrate_sigmaH(gp->chart, f, 3, 5, true); });
    report("stability integrand (jet geometry)", ts, tp, qs.value, qp.value);
  }

  return 0;
}
