#pragma once
// Built-in reference surfaces. Each entry carries the level-set definition, a
// sampling region that stays clear of characteristic points and domain
// boundaries, and (where a closed form exists) the expected values used by the
// example checks.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "heisgeo/surface.hpp"

namespace heisgeo {

struct Region {
  Vec lo, hi;            // coordinate box, size 2n+1
  double zmin = 0.0;     // optional |z| annulus constraint
  double zmax = 1e300;
};

struct GalleryEntry {
  SurfaceDef def;
  Region region;
  // Optional replacement for the raw box draw (used where the surface has a
  // natural parametrization that the sampler should respect).
  std::function<Vec(std::mt19937_64&)> draw;
  std::string notes;
};

// ids: vertical, horizontal, paraboloid, catenoid, helicoid
GalleryEntry gallery_entry(const std::string& id, int n, double E = 1.0);
std::vector<std::string> gallery_ids();

}  // namespace heisgeo
