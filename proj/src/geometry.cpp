#include "heisgeo/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace heisgeo {

namespace {

Vec values_of(const HField& f) {
  Vec v(f.size());
  for (size_t k = 0; k < f.size(); ++k) v[k] = f[k].value();
  return v;
}

// Orthonormalize the horizontal tangent space HTS = ν^⊥ ∩ H in jet arithmetic.
// Pivots (which coordinate frame vector seeds which slot) are frozen from the
// values at p; the Gram–Schmidt arithmetic itself stays in jets so the frame
// fields are differentiable.
std::vector<HField> build_frame(const JetSpace& sp, const HField& nu, const HField& Jnu,
                                const FrameOptions& opts) {
  const int n = sp.n, ns = 2 * n - 1;
  std::vector<HField> E(ns);
  std::vector<HField> used;  // fields already orthonormalized against (excl. ν)
  used.reserve(ns);

  auto project = [&](HField c) {
    c = c - ip(c, nu) * nu;
    for (const auto& g : used) c = c - ip(c, g) * g;
    return c;
  };

  std::vector<int> remaining(2 * n);
  for (int k = 0; k < 2 * n; ++k) remaining[k] = k;

  auto pick = [&]() -> HField {
    // residual norms of the remaining coordinate candidates, values at p
    std::vector<double> rn(remaining.size());
    double rmax = 0.0;
    std::vector<HField> proj(remaining.size());
    for (size_t i = 0; i < remaining.size(); ++i) {
      Vec e = Vec::Zero(2 * n);
      e[remaining[i]] = 1.0;
      proj[i] = project(hconst(sp, e));
      rn[i] = values_of(proj[i]).norm();
      rmax = std::max(rmax, rn[i]);
    }
    if (rmax < 1e-10) throw SurfaceError("tangent frame: candidates degenerate");
    // deterministic pivot: first candidate (in rotated order) within 1/2 of max
    size_t m = remaining.size();
    size_t start = static_cast<size_t>(opts.pivot_variant) % m;
    size_t chosen = 0;
    for (size_t j = 0; j < m; ++j) {
      size_t i = (start + j) % m;
      if (rn[i] >= 0.5 * rmax) {
        chosen = i;
        break;
      }
    }
    HField g = proj[chosen];
    remaining.erase(remaining.begin() + chosen);
    Jet nrm = sqrt(ip(g, g));
    for (auto& c : g) c = c / nrm;
    return g;
  };

  if (opts.adapt) {
    // slots: E_1..E_{n−1}, E_n = J(ν), E_{n+i} = J(E_i)  (1-based slots)
    E[n - 1] = Jnu;
    used.push_back(Jnu);
    for (int i = 0; i < n - 1; ++i) {
      HField g = pick();
      E[i] = g;
      used.push_back(g);
      HField jg = applyJ(g);
      E[n + i] = jg;
      used.push_back(jg);
    }
  } else {
    used.clear();
    for (int i = 0; i < ns; ++i) {
      HField g = pick();
      E[i] = g;
      used.push_back(g);
    }
  }
  if (opts.remix_seed != 0) {
    // Re-mix the HTS slots by a random orthogonal matrix (constant
    // coefficients, so orthonormality and tangency are preserved exactly).
    std::mt19937_64 rng(opts.remix_seed);
    std::normal_distribution<double> N(0.0, 1.0);
    Eigen::MatrixXd G(ns, ns);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j) G(i, j) = N(rng);
    Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(G).householderQ();
    std::vector<HField> mixed(ns);
    for (int i = 0; i < ns; ++i) {
      HField acc = Q(i, 0) * E[0];
      for (int j = 1; j < ns; ++j) acc = acc + Q(i, j) * E[j];
      mixed[i] = acc;
    }
    E = std::move(mixed);
  }
  return E;
}

}  // namespace

SurfaceJets surface_jets(const SurfaceDef& s, const Point& p, int order, FrameOptions opts) {
  SurfaceJets sj;
  sj.sp = JetSpace::at(p, order);
  sj.n = p.n;
  sj.ns = 2 * p.n - 1;
  sj.opts = opts;
  const JetSpace& sp = sj.sp;

  sj.u = s.jet(sp);
  sj.Zu = hgrad(sp, sj.u);
  sj.Tu = sp.T(sj.u);

  // characteristic guard on values
  Vec zu = values_of(sj.Zu);
  double hnorm = zu.norm();
  double enorm = std::sqrt(zu.squaredNorm() + std::pow(sj.Tu.value(), 2));
  // |∇u|_euclidean and the frame gradient norm differ by bounded factors here;
  // the guard uses the frame gradient, consistent with the sampler.
  if (hnorm < 1e-8 * enorm)
    throw CharacteristicError("characteristic point: |grad_H u| too small");

  sj.W = sqrt(ip(sj.Zu, sj.Zu));
  Jet winv = 1.0 / sj.W;
  sj.nu = winv * sj.Zu;
  sj.alpha = sj.Tu * winv;
  sj.Jnu = applyJ(sj.nu);
  sj.S = TField{-1.0 * (sj.alpha * sj.nu), sp.constant(1.0)};

  sj.E = build_frame(sp, sj.nu, sj.Jnu, opts);

  const int ns = sj.ns;
  sj.dnu.resize(ns);
  for (int i = 0; i < ns; ++i) sj.dnu[i] = nabla(sp, sj.E[i], sj.nu);

  sj.h.assign(ns, std::vector<Jet>(ns));
  sj.C.assign(ns, std::vector<Jet>(ns));
  sj.ht.assign(ns, std::vector<Jet>(ns));
  for (int i = 0; i < ns; ++i) {
    HField JEi = applyJ(sj.E[i]);
    for (int j = 0; j < ns; ++j) {
      sj.h[i][j] = ip(sj.dnu[i], sj.E[j]);
      sj.C[i][j] = ip(JEi, sj.E[j]);
      sj.ht[i][j] = sj.h[i][j] + sj.alpha * sj.C[i][j];
    }
  }

  sj.Hmean = sj.h[0][0];
  for (int i = 1; i < ns; ++i) sj.Hmean += sj.h[i][i];

  sj.DJnu = nabla(sp, sj.Jnu, sj.nu);
  sj.ell = ip(sj.DJnu, sj.Jnu);
  sj.Xdev = sj.DJnu - sj.ell * sj.Jnu;
  sj.Jnua = dirderiv(sp, sj.Jnu, sj.alpha);

  sj.norm2_ht = sj.ht[0][0] * sj.ht[0][0];
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j) {
      if (i == 0 && j == 0) continue;
      sj.norm2_ht += sj.ht[i][j] * sj.ht[i][j];
    }

  sj.q = sj.norm2_ht + 4.0 * sj.Jnua + (2.0 * sj.n + 2.0) * (sj.alpha * sj.alpha);
  return sj;
}

GeometryState geometry_state(const SurfaceJets& sj) {
  GeometryState g;
  g.n = sj.n;
  g.p = sj.sp.p;
  g.nH_norm = sj.W.value();
  g.nu = values_of(sj.nu);
  g.Jnu = values_of(sj.Jnu);
  g.alpha = sj.alpha.value();

  const int n2 = 2 * sj.n;
  double root = std::sqrt(1.0 + g.alpha * g.alpha);
  g.N = Vec::Zero(n2 + 1);
  g.N.head(n2) = g.nu / root;
  g.N[n2] = g.alpha / root;
  g.Svec = Vec::Zero(n2 + 1);
  g.Svec.head(n2) = -g.alpha * g.nu;
  g.Svec[n2] = 1.0;

  g.frame.resize(sj.ns, n2);
  for (int i = 0; i < sj.ns; ++i) g.frame.row(i) = values_of(sj.E[i]).transpose();

  g.h.resize(sj.ns, sj.ns);
  g.htilde.resize(sj.ns, sj.ns);
  g.C.resize(sj.ns, sj.ns);
  for (int i = 0; i < sj.ns; ++i)
    for (int j = 0; j < sj.ns; ++j) {
      g.h(i, j) = sj.h[i][j].value();
      g.htilde(i, j) = sj.ht[i][j].value();
      g.C(i, j) = sj.C[i][j].value();
    }

  g.Hmean = sj.Hmean.value();
  g.ell = sj.ell.value();
  g.q = sj.q.value();
  g.Xdev = values_of(sj.Xdev);
  g.DJnu = values_of(sj.DJnu);
  g.Jnu_alpha = sj.Jnua.value();
  g.norm2_htilde = sj.norm2_ht.value();
  g.norm2_DJnu = values_of(sj.DJnu).squaredNorm();

  // tangential horizontal gradient of α: ∇^H α − ⟨∇^H α, ν⟩ν
  HField ga = hgrad(sj.sp, sj.alpha);
  Vec gav = values_of(ga);
  g.gradHS_alpha = gav - gav.dot(g.nu) * g.nu;
  return g;
}

GeometryState geometry_state(const SurfaceDef& s, const Point& p) {
  return geometry_state(surface_jets(s, p, 2));
}

}  // namespace heisgeo
