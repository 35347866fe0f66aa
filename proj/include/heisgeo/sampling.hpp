#pragma once
// Deterministic sampling of points on a level set: seeded draws from a region,
// damped Newton projection along the Euclidean gradient of u, and rejection of
// near-characteristic points.

#include <random>

#include "heisgeo/gallery.hpp"

namespace heisgeo {

struct SamplingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kNewtonTol = 1e-12;
inline constexpr double kCharGuard = 1e-8;  // reject |∇^H u| < guard · |∇u|

// Horizontal norm of the gradient from the Euclidean coordinate gradient.
double horizontal_grad_norm(const Point& p, const Vec& egrad);

// Project a coordinate draw onto {u = 0}. Returns false when Newton stalls or
// the expression leaves its domain.
bool project_to_surface(const SurfaceDef& s, Vec& coords);

// Draw `count` points on the surface. Draws come from `entry.draw` when set,
// otherwise uniformly from the region box (honoring the |z| annulus). Points
// failing projection, the characteristic guard, or the region predicate are
// rejected and redrawn; more than 1000·count attempts is an error.
std::vector<Point> sample_points(const GalleryEntry& entry, int count, uint64_t seed);

}  // namespace heisgeo
