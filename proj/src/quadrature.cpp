#include "heisgeo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "heisgeo/appendix.hpp"
#include "heisgeo/surface.hpp"

namespace heisgeo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Gauss–Legendre rules (boost stores the nonnegative half of the abscissas).
// ---------------------------------------------------------------------------

template <unsigned N>
void fill_rule(std::vector<double>& x, std::vector<double>& w) {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& a = G::abscissa();
  const auto& wt = G::weights();
  std::vector<std::pair<double, double>> nodes;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      nodes.emplace_back(0.0, wt[i]);
    } else {
      nodes.emplace_back(-a[i], wt[i]);
      nodes.emplace_back(a[i], wt[i]);
    }
  }
  std::sort(nodes.begin(), nodes.end());
  x.clear();
  w.clear();
  for (auto& nw : nodes) {
    x.push_back(nw.first);
    w.push_back(nw.second);
  }
}

void gauss_rule(int nodes, std::vector<double>& x, std::vector<double>& w) {
  switch (nodes) {
    case 2: fill_rule<2>(x, w); break;
    case 3: fill_rule<3>(x, w); break;
    case 4: fill_rule<4>(x, w); break;
    case 5: fill_rule<5>(x, w); break;
    case 6: fill_rule<6>(x, w); break;
    case 7: fill_rule<7>(x, w); break;
    case 8: fill_rule<8>(x, w); break;
    case 9: fill_rule<9>(x, w); break;
    case 10: fill_rule<10>(x, w); break;
    default: throw QuadratureError("unsupported Gauss node count");
  }
}

struct AxisGrid {
  std::vector<double> pos, wt;
};

std::vector<AxisGrid> build_grid(const PatchChart& chart, int cells, int nodes) {
  if (cells < 1) throw QuadratureError("cells must be >= 1");
  std::vector<double> gx, gw;
  gauss_rule(nodes, gx, gw);
  std::vector<AxisGrid> grid(chart.np());
  for (int a = 0; a < chart.np(); ++a) {
    const double hcell = (chart.hi[a] - chart.lo[a]) / cells;
    if (!(hcell > 0.0)) throw QuadratureError("empty parameter box");
    for (int c = 0; c < cells; ++c) {
      const double mid = chart.lo[a] + (c + 0.5) * hcell;
      for (int m = 0; m < nodes; ++m) {
        grid[a].pos.push_back(mid + 0.5 * hcell * gx[m]);
        grid[a].wt.push_back(0.5 * hcell * gw[m]);
      }
    }
  }
  return grid;
}

// σ_H density against the parameter measure: |∇^H u|/|∇u|_e · √det(DΦᵀDΦ).
double density_at(const SurfaceDef& def, const std::vector<Jet>& coords,
                  Vec& c_out, double& u_abs) {
  const int dim = static_cast<int>(coords.size());
  const int np = coords.front().dims();
  const int n = (dim - 1) / 2;
  Eigen::MatrixXd D(dim, np);
  Vec c(dim);
  for (int i = 0; i < dim; ++i) {
    c[i] = coords[i].value();
    for (int j = 0; j < np; ++j) D(i, j) = coords[i].partial(j).value();
  }
  const Vec g = def.egrad(c);
  double nh2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double Xu = g[j] + c[n + j] * g[2 * n];
    const double Yu = g[n + j] - c[j] * g[2 * n];
    nh2 += Xu * Xu + Yu * Yu;
  }
  const double ne = g.norm();
  const double gram = (D.transpose() * D).determinant();
  if (!(ne > 0.0) || !(gram > 0.0))
    throw QuadratureError("degenerate chart node on " + def.id);
  u_abs = std::abs(def.value(c));
  c_out = std::move(c);
  return std::sqrt(nh2) / ne * std::sqrt(gram);
}

// One full composite sweep; deterministic for any thread count because each
// outer slab is accumulated by a single thread in index order and the slab
// sums are combined by a fixed pairwise tree.
double sweep(const PatchChart& chart, const Integrand& f, int cells, int nodes,
             bool parallel, double* umax_out) {
  const std::vector<AxisGrid> grid = build_grid(chart, cells, nodes);
  const int np = chart.np();
  const int n = chart.def->n;
  const int M = static_cast<int>(grid[0].pos.size());
  long rest = 1;
  for (int a = 1; a < np; ++a) rest *= static_cast<long>(grid[a].pos.size());

  std::vector<double> slab(M, 0.0), slab_umax(M, 0.0);
  std::vector<std::string> slab_err(M);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i0 = 0; i0 < M; ++i0) {
    try {
      std::vector<double> w(np);
      w[0] = grid[0].pos[i0];
      double acc = 0.0, um = 0.0;
      Vec c;
      for (long r = 0; r < rest; ++r) {
        long t = r;
        double wt = grid[0].wt[i0];
        for (int a = 1; a < np; ++a) {
          const long Ma = static_cast<long>(grid[a].pos.size());
          const long ia = t % Ma;
          t /= Ma;
          w[a] = grid[a].pos[ia];
          wt *= grid[a].wt[ia];
        }
        const std::vector<Jet> coords = chart.map(w);
        double u_abs = 0.0;
        const double dens = density_at(*chart.def, coords, c, u_abs);
        um = std::max(um, u_abs);
        acc += wt * dens * f(Point(n, c));
      }
      slab[i0] = acc;
      slab_umax[i0] = um;
    } catch (const std::exception& e) {
      slab_err[i0] = e.what();
    }
  }
  for (int i0 = 0; i0 < M; ++i0)
    if (!slab_err[i0].empty())
      throw QuadratureError("integrand failure: " + slab_err[i0]);
  if (umax_out)
    *umax_out = *std::max_element(slab_umax.begin(), slab_umax.end());
  return pairwise_sum(slab);
}

std::vector<Jet> param_vars(const std::vector<double>& w) {
  const int np = static_cast<int>(w.size());
  std::vector<Jet> v(np);
  for (int i = 0; i < np; ++i) v[i] = Jet::variable(np, i, w[i], 1);
  return v;
}

// Parameters (x_2..x_n, y_1..y_n, t) on the vertical hyperplane x_1 = 0.
std::function<std::vector<Jet>(const std::vector<double>&)> vertical_map(int n) {
  return [n](const std::vector<double>& w) {
    const int np = 2 * n;
    std::vector<Jet> pv = param_vars(w);
    std::vector<Jet> c(2 * n + 1);
    c[0] = Jet::constant(np, 0.0, 1);
    int k = 0;
    for (int j = 1; j < n; ++j) c[j] = pv[k++];
    for (int j = 0; j < n; ++j) c[n + j] = pv[k++];
    c[2 * n] = pv[k++];
    return c;
  };
}

const double kQuinticSlopeMax = 15.0 / 8.0;

double quintic_step(double u) {
  if (u <= 1.0) return 1.0;
  if (u >= 2.0) return 0.0;
  const double s = u - 1.0;
  return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double quintic_step_d(double u) {
  if (u <= 1.0 || u >= 2.0) return 0.0;
  const double s = u - 1.0;
  const double t = s * (1.0 - s);
  return -30.0 * t * t;
}

Vec gradHS_values(const GeometryState& gs, const Vec& gradH_values) {
  return gradH_values - gradH_values.dot(gs.nu) * gs.nu;
}

// Horizontal frame components (Z_k f)(p) of an ambient jet, values only.
Vec hgrad_values(const JetSpace& sp, const Jet& f) {
  Vec g(2 * sp.n);
  for (int k = 0; k < 2 * sp.n; ++k) g[k] = sp.Z(k, f).value();
  return g;
}

// Δ̂^{H,S} f = Σ (δ_kl − ν_kν_l) Z_kZ_l f − H⟨∇^H f, ν⟩ + 2α⟨∇^H f, J(ν)⟩,
// evaluated on values; f must carry at least an order-2 jet.
double lap_hat_value(const GeometryState& gs, const JetSpace& sp, const Jet& f) {
  const int m = 2 * sp.n;
  std::vector<Jet> Zf(m);
  Vec gf(m);
  for (int k = 0; k < m; ++k) {
    Zf[k] = sp.Z(k, f);
    gf[k] = Zf[k].value();
  }
  double lap = 0.0;
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      const double pr = (k == l ? 1.0 : 0.0) - gs.nu[k] * gs.nu[l];
      if (pr != 0.0) lap += pr * sp.Z(k, Zf[l]).value();
    }
  lap -= gs.Hmean * gf.dot(gs.nu);
  lap += 2.0 * gs.alpha * gf.dot(gs.Jnu);
  return lap;
}

// Smooth ambient scalar used as the partial-integration test function.
Jet test_scalar(const JetSpace& sp) {
  return sin(sp.coord(0)) * (1.0 + 0.5 * sp.coord(sp.n)) +
         0.25 * sp.coord(2 * sp.n);
}

// Shrinks the cutoff radius until the support {gauge <= 2R} stays strictly
// inside the patch, measured by the gauge distance from the base point to a
// grid on each boundary face.
CutoffFamily fitted_cutoff(const GalleryPatch& gp, double R0) {
  const PatchChart& ch = gp.chart;
  const int np = ch.np();
  const int G = 6;
  double dmin = std::numeric_limits<double>::infinity();
  std::vector<double> w(np);
  long facecount = 1;
  for (int b = 0; b < np - 1; ++b) facecount *= G;
  std::vector<Point> facepts;
  for (int a = 0; a < np; ++a)
    for (int side = 0; side < 2; ++side)
      for (long r = 0; r < facecount; ++r) {
        long t = r;
        for (int b = 0; b < np; ++b) {
          if (b == a) {
            w[b] = side ? ch.hi[b] : ch.lo[b];
          } else {
            const long ib = t % G;
            t /= G;
            w[b] = ch.lo[b] + (ch.hi[b] - ch.lo[b]) * (ib + 0.5) / G;
          }
        }
        facepts.push_back(ch.point_at(w));
        dmin = std::min(dmin, koranyi_dist(gp.base, facepts.back()));
      }
  CutoffFamily cf{gp.base, std::min(R0, dmin / 2.4)};
  for (const Point& fp : facepts)
    if (cf.value(fp) != 0.0)
      throw QuadratureError("cutoff support leaves the patch on " + gp.def.id);
  return cf;
}

struct IbpOutcome {
  QuadResult i1, i2;
  double R = 0.0;
};

IbpOutcome ibp_run(const GalleryPatch& gp, double R0, int cells, int nodes,
                   bool parallel) {
  const SurfaceDef& def = gp.def;
  const CutoffFamily phi = fitted_cutoff(gp, R0);
  Integrand f1 = [&](const Point& p) {
    const double pv = phi.value(p);
    if (pv == 0.0) return 0.0;
    const JetSpace sp = JetSpace::at(p, 2);
    const GeometryState gs = geometry_state(def, p);
    return pv * lap_hat_value(gs, sp, test_scalar(sp));
  };
  Integrand f2 = [&](const Point& p) {
    const Vec gphi = phi.gradH(p);
    if (gphi.squaredNorm() == 0.0) return 0.0;
    const JetSpace sp = JetSpace::at(p, 1);
    const GeometryState gs = geometry_state(def, p);
    const Vec gpsi = hgrad_values(sp, test_scalar(sp));
    return gradHS_values(gs, gphi).dot(gradHS_values(gs, gpsi));
  };
  IbpOutcome out;
  out.R = phi.R;
  out.i1 = integrate_sigmaH(gp.chart, f1, cells, nodes, parallel);
  out.i2 = integrate_sigmaH(gp.chart, f2, cells, nodes, parallel);
  return out;
}

// Row constructors mirroring the pointwise report conventions.
CheckResult eq_row(const std::string& id, const std::string& surface,
                   const std::string& point, double lhs, double rhs, double tol,
                   const std::string& anchor, const std::string& notes) {
  CheckResult r;
  r.id = id;
  r.surface = surface;
  r.point = point;
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = std::abs(lhs - rhs);
  r.margin = kNaN;
  r.tol = tol;
  r.pass = r.residual <= tol;
  r.anchor = anchor;
  r.notes = notes;
  return r;
}

CheckResult margin_row(const std::string& id, const std::string& surface,
                       const std::string& point, double lhs, double rhs,
                       double margin, double tol, const std::string& anchor,
                       const std::string& notes) {
  CheckResult r;
  r.id = id;
  r.surface = surface;
  r.point = point;
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = std::max(0.0, -margin);
  r.margin = margin;
  r.tol = tol;
  r.pass = margin >= -tol;
  r.anchor = anchor;
  r.notes = notes;
  return r;
}

std::string fmtg(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

Point PatchChart::point_at(const std::vector<double>& w) const {
  const std::vector<Jet> coords = map(w);
  Vec c(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) c[i] = coords[i].value();
  return Point(def->n, c);
}

double pairwise_sum(std::vector<double>& v) {
  if (v.empty()) return 0.0;
  std::size_t m = v.size();
  while (m > 1) {
    std::size_t w = 0;
    for (std::size_t i = 0; i + 1 < m; i += 2) v[w++] = v[i] + v[i + 1];
    if (m % 2) v[w++] = v[m - 1];
    m = w;
  }
  return v[0];
}

QuadResult integrate_sigmaH(const PatchChart& chart, const Integrand& f,
                            int cells, int nodes, bool parallel) {
  if (!chart.def) throw QuadratureError("chart has no surface");
  QuadResult out;
  out.value = sweep(chart, f, cells, nodes, parallel, &out.max_abs_u);
  double coarse;
  if (cells > 1)
    coarse = sweep(chart, f, std::max(1, cells / 2), nodes, parallel, nullptr);
  else
    coarse = sweep(chart, f, 1, std::max(2, nodes - 2), parallel, nullptr);
  out.error = std::abs(out.value - coarse);
  return out;
}

std::unique_ptr<GalleryPatch> gallery_patch(const std::string& id, int n,
                                            double E) {
  auto gp = std::make_unique<GalleryPatch>();
  gp->def = gallery_entry(id, n, E).def;
  PatchChart& ch = gp->chart;
  ch.def = &gp->def;
  if (id == "vertical") {
    // IBP patch: z-parameters within ±1.8, |t| ≤ 3.4
    ch.lo.assign(2 * n, -1.8);
    ch.hi.assign(2 * n, 1.8);
    ch.lo[2 * n - 1] = -3.4;
    ch.hi[2 * n - 1] = 3.4;
    ch.map = vertical_map(n);
  } else if (id == "horizontal") {
    // patch of t = 0 around z0 = (1.5, 0, ..., 0), clear of the
    // characteristic point z = 0
    std::vector<double> z0(2 * n, 0.0);
    z0[0] = 1.5;
    for (int k = 0; k < 2 * n; ++k) {
      ch.lo.push_back(z0[k] - 1.0);
      ch.hi.push_back(z0[k] + 1.0);
    }
    ch.map = [n](const std::vector<double>& w) {
      std::vector<Jet> c = param_vars(w);
      c.push_back(Jet::constant(2 * n, 0.0, 1));
      return c;
    };
  } else if (id == "paraboloid") {
    // graph t = Σ x_j y_j over a z-box with |x̄| bounded away from 0
    std::vector<double> z0(2 * n, 0.0);
    z0[0] = 1.2;
    z0[n] = 0.8;
    for (int k = 0; k < 2 * n; ++k) {
      ch.lo.push_back(z0[k] - 0.8);
      ch.hi.push_back(z0[k] + 0.8);
    }
    ch.map = [n](const std::vector<double>& w) {
      std::vector<Jet> c = param_vars(w);
      Jet t = c[0] * c[n];
      for (int j = 1; j < n; ++j) t += c[j] * c[n + j];
      c.push_back(t);
      return c;
    };
  } else if (id == "catenoid") {
    if (n != 2) throw QuadratureError("catenoid chart implemented for n = 2");
    auto prof = std::make_shared<CatenoidProfile>();
    prof->n = n;
    prof->E = E;
    const double a = prof->throat();
    ch.lo = {1.15 * a, 0.5, 0.5, 0.4};
    ch.hi = {2.40 * a, 2.6, 2.6, 5.9};
    ch.map = [prof](const std::vector<double>& w) {
      std::vector<Jet> pv = param_vars(w);
      const Jet& r = pv[0];
      const Jet st = sin(pv[1]), ct = cos(pv[1]);
      const Jet sf = sin(pv[2]), cf = cos(pv[2]);
      const Jet sq = sin(pv[3]), cq = cos(pv[3]);
      std::vector<Jet> c(5);
      c[0] = r * ct;
      c[1] = r * (st * cf);
      c[2] = r * (st * (sf * cq));
      c[3] = r * (st * (sf * sq));
      const std::array<double, 5> d = prof->derivs(w[0]);
      c[4] = r.compose(d.data(), 2);  // t = t_E(r) on the upper branch
      return c;
    };
  } else if (id == "helicoid") {
    if (n != 2) throw QuadratureError("helicoid chart implemented for n = 2");
    const std::vector<double> mid = {1.2, 0.5, 0.3, -0.2};
    for (double m : mid) {
      ch.lo.push_back(m - 0.55);
      ch.hi.push_back(m + 0.55);
    }
    ch.map = [](const std::vector<double>& w) {
      std::vector<Jet> pv = param_vars(w);
      const Jet& s = pv[0];
      const Jet& th = pv[1];
      std::vector<Jet> c(5);
      c[0] = s * cos(th);
      c[1] = pv[2];
      c[2] = s * sin(th);
      c[3] = pv[3];
      c[4] = th;
      return c;
    };
  } else {
    throw QuadratureError("no chart for surface id: " + id);
  }
  std::vector<double> mid(ch.np());
  for (int a = 0; a < ch.np(); ++a) mid[a] = 0.5 * (ch.lo[a] + ch.hi[a]);
  gp->base = ch.point_at(mid);
  return gp;
}

std::unique_ptr<GalleryPatch> vertical_unit_patch(int n) {
  auto gp = gallery_patch("vertical", n);
  gp->chart.lo.assign(2 * n, 0.0);
  gp->chart.hi.assign(2 * n, 1.0);
  std::vector<double> mid(2 * n, 0.5);
  gp->base = gp->chart.point_at(mid);
  return gp;
}

std::function<PatchChart(double)> vertical_chart_factory(const SurfaceDef& def) {
  const SurfaceDef* dp = &def;
  return [dp](double R) {
    const int n = dp->n;
    PatchChart ch;
    ch.def = dp;
    ch.lo.assign(2 * n, -2.2 * R);
    ch.hi.assign(2 * n, 2.2 * R);
    ch.lo[2 * n - 1] = -4.84 * R * R;
    ch.hi[2 * n - 1] = 4.84 * R * R;
    ch.map = vertical_map(n);
    return ch;
  };
}

double CutoffFamily::value(const Point& p) const {
  return quintic_step(koranyi_dist(center, p) / R);
}

Vec CutoffFamily::gradH(const Point& p) const {
  const int n = p.n;
  Vec g = Vec::Zero(2 * n);
  const Point q = group_mul(group_inv(center), p);
  const double N = koranyi_gauge(q);
  const double u = N / R;
  if (u <= 1.0 || u >= 2.0) return g;
  double z2 = 0.0;
  for (int k = 0; k < 2 * n; ++k) z2 += q.c[k] * q.c[k];
  const double t = q.t();
  const double N3 = N * N * N;
  for (int j = 0; j < n; ++j) {
    g[j] = (4.0 * z2 * q.x(j) + 2.0 * t * q.y(j)) / (4.0 * N3);
    g[n + j] = (4.0 * z2 * q.y(j) - 2.0 * t * q.x(j)) / (4.0 * N3);
  }
  return (quintic_step_d(u) / R) * g;
}

Jet CutoffFamily::jet(const JetSpace& sp) const {
  const double u = koranyi_dist(center, sp.p) / R;
  if (u <= 1.0) return sp.constant(1.0);
  if (u >= 2.0) return sp.constant(0.0);
  const Jet s = gauge_jet(sp, center) * (1.0 / R) - 1.0;
  return 1.0 - (s * s) * (s * (10.0 + s * (-15.0 + 6.0 * s)));
}

StabilityResult stability_ratio(const PatchChart& chart,
                                const CutoffFamily& phi, int cells, int nodes,
                                bool parallel) {
  const SurfaceDef& def = *chart.def;
  Integrand fq = [&](const Point& p) {
    const double pv = phi.value(p);
    if (pv == 0.0) return 0.0;
    const GeometryState gs = geometry_state(def, p);
    return gs.q * pv * pv;
  };
  Integrand fg = [&](const Point& p) {
    const Vec g = phi.gradH(p);
    if (g.squaredNorm() == 0.0) return 0.0;
    const GeometryState gs = geometry_state(def, p);
    return gradHS_values(gs, g).squaredNorm();
  };
  const QuadResult r1 = integrate_sigmaH(chart, fq, cells, nodes, parallel);
  const QuadResult r2 = integrate_sigmaH(chart, fg, cells, nodes, parallel);
  return {r1.value, r2.value, r1.error, r2.error};
}

double fit_log_slope(const std::vector<double>& radii,
                     const std::vector<double>& values) {
  if (radii.size() != values.size() || radii.size() < 2)
    throw QuadratureError("log fit needs at least two radii");
  const int m = static_cast<int>(radii.size());
  Eigen::MatrixXd A(m, 2);
  Vec b(m);
  for (int i = 0; i < m; ++i) {
    if (!(radii[i] > 0.0) || !(values[i] > 0.0))
      throw QuadratureError("log fit needs positive radii and values");
    A(i, 0) = std::log(radii[i]);
    A(i, 1) = 1.0;
    b[i] = std::log(values[i]);
  }
  const Vec sol = A.colPivHouseholderQr().solve(b);
  return sol[0];
}

GrowthFit volume_growth_fit(const std::function<PatchChart(double)>& charts,
                            const Point& center,
                            const std::vector<double>& radii, int cells,
                            int nodes, bool parallel) {
  GrowthFit out;
  out.radii = radii;
  for (double r : radii) {
    const PatchChart ch = charts(r);
    const CutoffFamily cf{center, r};
    Integrand f = [&](const Point& p) { return cf.value(p); };
    const QuadResult q = integrate_sigmaH(ch, f, cells, nodes, parallel);
    out.mass.push_back(q.value);
    if (q.value > 0.0)
      out.max_rel_err = std::max(out.max_rel_err, q.error / q.value);
  }
  out.slope = fit_log_slope(out.radii, out.mass);
  return out;
}

bool curvature_window_ok(double beta, double k) {
  if (!(k >= 0.0) || !(k <= 9.0 / 8.0)) return false;
  return beta >= 1.0 - k / 3.0 && beta < 1.0 + std::sqrt(k / 3.0);
}

CurvatureExperiment curvature_estimate_experiment(
    const std::function<PatchChart(double)>& charts, const Point& center,
    double beta, double k, const std::vector<double>& radii, int cells,
    int nodes, bool parallel) {
  if (!curvature_window_ok(beta, k))
    throw std::invalid_argument(
        "(beta,k) outside the window: need 0 <= k <= 9/8 and "
        "1 - k/3 <= beta < 1 + sqrt(k/3)");
  CurvatureExperiment ex;
  ex.beta = beta;
  ex.k = k;
  const double e = 2.0 * beta + 2.0;
  std::vector<double> rs, vs;
  for (double R : radii) {
    const PatchChart ch = charts(R);
    const SurfaceDef& def = *ch.def;
    const CutoffFamily cf{center, R};
    Integrand fl = [&](const Point& p) {
      const double pv = cf.value(p);
      if (pv == 0.0) return 0.0;
      const GeometryState gs = geometry_state(def, p);
      return std::pow(gs.norm2_htilde, 0.5 * e) * std::pow(pv, e);
    };
    Integrand fr = [&](const Point& p) {
      const Vec g = cf.gradH(p);
      if (g.squaredNorm() == 0.0) return 0.0;
      const GeometryState gs = geometry_state(def, p);
      return std::pow(gradHS_values(gs, g).squaredNorm(), 0.5 * e);
    };
    const QuadResult ql = integrate_sigmaH(ch, fl, cells, nodes, parallel);
    const QuadResult qr = integrate_sigmaH(ch, fr, cells, nodes, parallel);
    ex.rows.push_back({R, ql.value, ql.error, qr.value, qr.error});
    rs.push_back(R);
    vs.push_back(qr.value);
  }
  if (rs.size() >= 2) ex.rhs_exponent = fit_log_slope(rs, vs);
  return ex;
}

void run_integral_checks(double tol_scale, bool parallel,
                         std::vector<CheckResult>& out) {
  const double ts = tol_scale;

  // --- patch area and mesh refinement -------------------------------------
  {
    auto gp = vertical_unit_patch(2);
    Integrand one = [](const Point&) { return 1.0; };
    const QuadResult q = integrate_sigmaH(gp->chart, one, 2, 4, parallel);
    out.push_back(eq_row(
        "area_vertical_patch", "vertical", "patch", q.value, 1.0, 1e-12 * ts,
        "dsigma_H = (|grad^H u| / |grad u|) dH^{2n}; a unit coordinate patch "
        "of the vertical hyperplane has sigma_H measure exactly 1",
        "composite Gauss, 2 cells x 4 nodes per axis"));
  }
  {
    auto gp = gallery_patch("catenoid", 2, 1.0);
    Integrand one = [](const Point&) { return 1.0; };
    const double q1 = sweep(gp->chart, one, 1, 5, parallel, nullptr);
    const double q2 = sweep(gp->chart, one, 2, 5, parallel, nullptr);
    const double q3 = sweep(gp->chart, one, 3, 5, parallel, nullptr);
    const double tol =
        std::max(std::abs(q2 - q1), 1e-12 * (1.0 + std::abs(q3))) * ts;
    out.push_back(eq_row(
        "quad_mesh_refinement", "catenoid", "patch", q3, q2, tol,
        "mesh refinement changes the composite Gauss value by less than the "
        "previous two-mesh error estimate",
        "sigma_H(patch) at 1/2/3 cells per axis: " + fmtg(q1) + ", " +
            fmtg(q2) + ", " + fmtg(q3) +
            "; relative change " + fmtg(std::abs(q3 - q2) / std::abs(q3))));
  }

  // --- chart consistency and partial integration on every gallery patch ---
  const char* ids[] = {"vertical", "horizontal", "paraboloid", "catenoid",
                       "helicoid"};
  const double R0[] = {0.8, 0.35, 0.3, 0.35, 0.3};
  for (int s = 0; s < 5; ++s) {
    auto gp = gallery_patch(ids[s], 2, 1.0);
    const IbpOutcome ib = ibp_run(*gp, R0[s], 2, 5, parallel);
    out.push_back(eq_row(
        std::string("chart_on_surface_") + ids[s], ids[s], "patch",
        ib.i1.max_abs_u, 0.0, 1e-8 * ts,
        "patch charts parametrize {u = 0}: max |u(Phi(w))| over quadrature "
        "nodes vanishes",
        ""));
    const double tol =
        2.0 * (ib.i1.error + ib.i2.error) +
        1e-6 * (1.0 + std::abs(ib.i2.value)) * ts;
    out.push_back(eq_row(
        std::string("integral_ibp_") + ids[s], ids[s], "patch", ib.i1.value,
        -ib.i2.value, tol,
        "int_S phi hat-Delta^{H,S} psi dsigma_H = - int_S <grad^{H,S} phi, "
        "grad^{H,S} psi> dsigma_H for compactly supported phi",
        "gauge cutoff radius R = " + fmtg(ib.R) + "; quadrature errors " +
            fmtg(ib.i1.error) + ", " + fmtg(ib.i2.error)));
  }

  // --- cutoff family: plateau/decay profile and gradient bound ------------
  {
    const int n = 2;
    double grad_worst = 0.0, profile_viol = 0.0;
    for (double R : {1.0, 2.0, 4.0, 8.0}) {
      const CutoffFamily cf{Point(n, Vec::Zero(2 * n + 1)), R};
      const int G = 7;
      std::vector<double> lo(2 * n + 1, -2.2 * R), hi(2 * n + 1, 2.2 * R);
      lo[2 * n] = -4.84 * R * R;
      hi[2 * n] = 4.84 * R * R;
      std::vector<int> ix(2 * n + 1, 0);
      long total = 1;
      for (int a = 0; a < 2 * n + 1; ++a) total *= G;
      for (long r = 0; r < total; ++r) {
        long t = r;
        Vec c(2 * n + 1);
        for (int a = 0; a < 2 * n + 1; ++a) {
          const long ia = t % G;
          t /= G;
          c[a] = lo[a] + (hi[a] - lo[a]) * (ia + 0.5) / G;
        }
        const Point p(n, c);
        const double rho = koranyi_gauge(p);
        const double pv = cf.value(p);
        if (rho <= R) profile_viol = std::max(profile_viol, std::abs(pv - 1.0));
        if (rho >= 2.0 * R) profile_viol = std::max(profile_viol, std::abs(pv));
        grad_worst = std::max(grad_worst, cf.gradH(p).norm() * R);
      }
    }
    out.push_back(eq_row(
        "cutoff_profile", "gauge", "-", profile_viol, 0.0, 1e-12 * ts,
        "phi = psi(gauge/R) with psi = 1 on [0,1] and psi = 0 on [2,oo)",
        "sampled on R in {1,2,4,8}"));
    out.push_back(margin_row(
        "cutoff_gradient_bound", "gauge", "-", grad_worst, kQuinticSlopeMax,
        kQuinticSlopeMax - grad_worst, 1e-9 * ts,
        "|grad^H phi| <= (15/8)/R, since max|psi'| = 15/8 and |grad^H gauge| "
        "= |z|/gauge <= 1",
        "max over sampled points of |grad^H phi| * R"));
  }

  // --- volume growth on the vertical hyperplane ---------------------------
  {
    const std::vector<double> radii = {0.6, 1.2, 2.4, 4.8};
    std::vector<double> doubled;
    for (double r : radii) doubled.push_back(2.0 * r);
    double slope_n2 = 0.0;
    for (int n : {1, 2}) {
      auto gp = gallery_patch("vertical", n);
      const Point origin(n, Vec::Zero(2 * n + 1));
      const GrowthFit fit =
          volume_growth_fit(vertical_chart_factory(gp->def), origin, radii,
                            n == 2 ? 3 : 6, 6, parallel);
      if (n == 2) slope_n2 = fit.slope;
      std::string masses;
      for (std::size_t i = 0; i < fit.mass.size(); ++i)
        masses += (i ? ", " : "") + fmtg(fit.mass[i]);
      out.push_back(eq_row(
          "volume_growth_vertical_n" + std::to_string(n), "vertical", "global",
          fit.slope, 2.0 * n + 1.0, 0.2 * ts,
          "sigma_H(S cap B_r) ~ r^{Q-1} with Q - 1 = 2n + 1 on a vertical "
          "hyperplane through the centre",
          "smoothed-indicator masses at r in {0.6,1.2,2.4,4.8}: " + masses +
              "; worst relative quadrature error " + fmtg(fit.max_rel_err)));
    }
    auto gp = gallery_patch("vertical", 2);
    const Point origin(2, Vec::Zero(5));
    const GrowthFit fit2 = volume_growth_fit(vertical_chart_factory(gp->def),
                                             origin, doubled, 3, 6, parallel);
    out.push_back(eq_row(
        "volume_growth_scale_invariance", "vertical", "global", fit2.slope,
        slope_n2, 0.05 * ts,
        "the fitted growth exponent is invariant under doubling every radius",
        "radii {1.2,2.4,4.8,9.6} against {0.6,1.2,2.4,4.8}"));
  }

  // --- stability integrals -------------------------------------------------
  {
    auto gp = gallery_patch("vertical", 2);
    const CutoffFamily phi = fitted_cutoff(*gp, 0.8);
    const StabilityResult st = stability_ratio(gp->chart, phi, 2, 5, parallel);
    out.push_back(margin_row(
        "stability_vertical", "vertical", "patch", st.lhs, st.rhs,
        st.rhs - st.lhs, 1e-8 * (1.0 + std::abs(st.rhs)) * ts,
        "int_S q xi^2 dsigma_H <= int_S |grad^{H,S} xi|^2 dsigma_H for the "
        "cutoff test function",
        "vertical hyperplane: q vanishes identically, lhs is quadrature "
        "noise; R = " + fmtg(phi.R)));
  }
  {
    auto gp = gallery_patch("catenoid", 2, 1.0);
    const CutoffFamily phi = fitted_cutoff(*gp, 0.5);
    const StabilityResult st = stability_ratio(gp->chart, phi, 2, 5, parallel);
    CheckResult r = margin_row(
        "stability_catenoid", "catenoid", "patch", st.lhs, st.rhs,
        st.rhs - st.lhs, 0.0,
        "second-variation sign for the cutoff test function: int_S (q xi^2 - "
        "|grad^{H,S} xi|^2) dsigma_H recorded",
        "exploratory: margin recorded, not asserted; R = " + fmtg(phi.R) +
            "; quadrature errors " + fmtg(st.lhs_err) + ", " +
            fmtg(st.rhs_err));
    r.pass = true;
    r.residual = 0.0;
    out.push_back(r);
  }

  // --- curvature-decay experiment on the vertical hyperplane --------------
  {
    const double beta = 1.6, k = 1.125;
    auto gp = gallery_patch("vertical", 2);
    const Point origin(2, Vec::Zero(5));
    const CurvatureExperiment ex = curvature_estimate_experiment(
        vertical_chart_factory(gp->def), origin, beta, k, {1.0, 2.0, 4.0, 8.0},
        2, 6, parallel);
    const double C = stability_constant(beta, k, 2);
    double margin = std::numeric_limits<double>::infinity();
    double lhs_worst = 0.0, err_worst = 0.0;
    for (const DecayRow& row : ex.rows) {
      margin = std::min(margin, C * row.rhs - row.lhs);
      lhs_worst = std::max(lhs_worst, std::abs(row.lhs));
      err_worst = std::max(err_worst, row.lhs_err + C * row.rhs_err);
    }
    out.push_back(margin_row(
        "curvature_decay_vertical", "vertical", "global", lhs_worst,
        C * ex.rows.back().rhs, margin, err_worst + 1e-10 * ts,
        "int_S |htilde|^{2beta+2} xi^{2beta+2} dsigma_H <= C(beta,k) int_S "
        "|grad^{H,S} xi|^{2beta+2} dsigma_H",
        "beta = " + fmtg(beta) + ", k = " + fmtg(k) + ", C = " + fmtg(C) +
            "; |htilde| vanishes on the vertical hyperplane"));
    out.push_back(eq_row(
        "curvature_decay_vertical_exponent", "vertical", "global",
        ex.rhs_exponent, 3.0 - 2.0 * beta, 0.05 * ts,
        "int_S |grad^{H,S} xi_R|^{2beta+2} dsigma_H ~ R^{3 - 2beta} on a "
        "dilation-invariant surface (Q - 1 = 5, n = 2)",
        "fitted over R in {1,2,4,8}; decay needs beta > 3/2, reachable only "
        "for k > 3/4"));
  }

  // --- admissibility window of the experiment ------------------------------
  {
    int mism = 0;
    if (!curvature_window_ok(1.0, 1.0)) ++mism;
    if (curvature_window_ok(1.6, 0.7)) ++mism;
    if (!curvature_window_ok(1.6, 1.125)) ++mism;
    if (curvature_window_ok(1.0, 1.2)) ++mism;
    if (curvature_window_ok(0.6, 1.0)) ++mism;
    for (double k = 0.0; k <= 1.1251; k += 0.025) {
      const double kk = std::min(k, 9.0 / 8.0);
      const BetaWindow bw = beta_window(kk, 2);
      if (std::abs(bw.lo - (1.0 - kk / 3.0)) > 1e-12) ++mism;
      if (std::abs(bw.hi - (1.0 + std::sqrt(kk / 3.0))) > 1e-12) ++mism;
      // At k = 0 the window [1, 1) is empty, so membership is only testable
      // for k > 0.
      if (kk > 0.0 && !curvature_window_ok(0.5 * (bw.lo + bw.hi), kk)) ++mism;
      if (curvature_window_ok(bw.hi + 1e-9, kk)) ++mism;
    }
    bool threw = false;
    try {
      auto gp = gallery_patch("vertical", 2);
      curvature_estimate_experiment(vertical_chart_factory(gp->def),
                                    Point(2, Vec::Zero(5)), 1.6, 0.7, {}, 1, 2,
                                    false);
    } catch (const std::invalid_argument&) {
      threw = true;
    }
    if (!threw) ++mism;
    out.push_back(eq_row(
        "quad_experiment_window", "global", "-", static_cast<double>(mism),
        0.0, 0.0,
        "the experiment accepts exactly beta in [1 - k/3, 1 + sqrt(k/3)) "
        "with 0 <= k <= 9/8; (beta,k) = (1,1) accepted, (1.6,0.7) rejected",
        "window grid cross-checked against the stability beta-window"));
  }
}

std::vector<CheckInfo> integral_check_infos() {
  std::vector<CheckInfo> v;
  auto add = [&](const std::string& id, const std::string& anchor) {
    v.push_back({id, "integral", "", anchor});
  };
  add("area_vertical_patch",
      "dsigma_H = (|grad^H u| / |grad u|) dH^{2n}; unit vertical patch has "
      "sigma_H = 1");
  add("quad_mesh_refinement",
      "mesh refinement changes the composite Gauss value by less than the "
      "previous error estimate");
  for (const char* id : {"vertical", "horizontal", "paraboloid", "catenoid",
                         "helicoid"}) {
    add(std::string("chart_on_surface_") + id,
        "patch charts parametrize {u = 0}");
    add(std::string("integral_ibp_") + id,
        "int_S phi hat-Delta^{H,S} psi dsigma_H = - int_S <grad^{H,S} phi, "
        "grad^{H,S} psi> dsigma_H");
  }
  add("cutoff_profile",
      "phi = psi(gauge/R), psi = 1 on [0,1], psi = 0 on [2,oo)");
  add("cutoff_gradient_bound", "|grad^H phi| <= (15/8)/R");
  add("volume_growth_vertical_n1", "sigma_H(S cap B_r) ~ r^{Q-1}, Q - 1 = 3");
  add("volume_growth_vertical_n2", "sigma_H(S cap B_r) ~ r^{Q-1}, Q - 1 = 5");
  add("volume_growth_scale_invariance",
      "growth exponent invariant under doubling the radii");
  add("stability_vertical",
      "int_S q xi^2 dsigma_H <= int_S |grad^{H,S} xi|^2 dsigma_H");
  add("stability_catenoid",
      "second-variation sign recorded for a catenoid patch (exploratory)");
  add("curvature_decay_vertical",
      "int_S |htilde|^{2beta+2} xi^{2beta+2} dsigma_H <= C(beta,k) int_S "
      "|grad^{H,S} xi|^{2beta+2} dsigma_H");
  add("curvature_decay_vertical_exponent",
      "int_S |grad^{H,S} xi_R|^{2beta+2} dsigma_H ~ R^{3-2beta}");
  add("quad_experiment_window",
      "experiment window beta in [1 - k/3, 1 + sqrt(k/3)), 0 <= k <= 9/8");
  return v;
}

}  // namespace heisgeo
