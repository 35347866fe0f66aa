#include "heisgeo/sampling.hpp"

#include <cmath>

namespace heisgeo {

double horizontal_grad_norm(const Point& p, const Vec& egrad) {
  const int n = p.n;
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    double xj = egrad[j] + p.y(j) * egrad[2 * n];      // X_j u
    double yj = egrad[n + j] - p.x(j) * egrad[2 * n];  // Y_j u
    s += xj * xj + yj * yj;
  }
  return std::sqrt(s);
}

bool project_to_surface(const SurfaceDef& s, Vec& coords) {
  try {
    double uv = s.value(coords);
    for (int iter = 0; iter < 50; ++iter) {
      if (std::abs(uv) < kNewtonTol) return true;
      Vec g = s.egrad(coords);
      double g2 = g.squaredNorm();
      if (g2 < 1e-30) return false;
      Vec step = -(uv / g2) * g;
      double lam = 1.0;
      while (lam > 1.0 / 1024) {
        double unew;
        bool ok = true;
        try {
          unew = s.value(coords + lam * step);
        } catch (const JetDomainError&) {
          ok = false;
          unew = 0.0;
        }
        if (ok && std::abs(unew) <= (1.0 - 0.25 * lam) * std::abs(uv)) {
          coords += lam * step;
          uv = unew;
          break;
        }
        lam *= 0.5;
      }
      if (lam <= 1.0 / 1024) return false;
    }
    return std::abs(uv) < kNewtonTol;
  } catch (const JetDomainError&) {
    return false;
  }
}

std::vector<Point> sample_points(const GalleryEntry& entry, int count, uint64_t seed) {
  const SurfaceDef& s = entry.def;
  const Region& reg = entry.region;
  const int d = 2 * s.n + 1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  auto box_draw = [&]() {
    Vec c(d);
    for (int k = 0; k < d; ++k) c[k] = reg.lo[k] + (reg.hi[k] - reg.lo[k]) * uni(rng);
    return c;
  };

  std::vector<Point> out;
  out.reserve(count);
  long attempts = 0, budget = 1000L * count;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > budget)
      throw SamplingError("sample_points: attempt budget exhausted on '" + s.id + "'");
    Vec c = entry.draw ? entry.draw(rng) : box_draw();
    double zn = c.head(2 * s.n).norm();
    if (zn < reg.zmin || zn > reg.zmax) continue;
    if (!project_to_surface(s, c)) continue;
    zn = c.head(2 * s.n).norm();
    if (zn < reg.zmin || zn > reg.zmax) continue;
    bool in_box = true;
    for (int k = 0; k < d; ++k) in_box = in_box && c[k] >= reg.lo[k] && c[k] <= reg.hi[k];
    if (!in_box) continue;
    Point p{s.n, c};
    Vec g;
    try {
      g = s.egrad(c);
    } catch (const JetDomainError&) {
      continue;
    }
    if (horizontal_grad_norm(p, g) < kCharGuard * g.norm()) continue;  // characteristic
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace heisgeo
