#include "heisgeo/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "heisgeo/tensor.hpp"

namespace heisgeo {
namespace {

// ============================================================================
// helpers
// ============================================================================

constexpr double kBaseStructure = 1e-10;
constexpr double kBaseIdentity = 1e-8;
constexpr double kBaseTensor = 1e-8;
constexpr double kBaseSimons = 1e-6;
constexpr double kBaseMargin = 1e-8;
constexpr double kBaseExample = 1e-8;

// Largest trusted Taylor coefficient of a jet (all orders it still carries).
double jet_maxabs(const Jet& f) {
  const JetTables& tab = jet_tables(f.dims());
  double m = 0.0;
  std::vector<int> e(f.dims());
  for (int i = 0; i < tab.deg_end[f.order() + 1]; ++i) {
    for (int v = 0; v < f.dims(); ++v) e[v] = tab.expo[i * f.dims() + v];
    m = std::max(m, std::abs(f.coeff(e)));
  }
  return m;
}

Jet rand_poly(const JetSpace& sp, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Jet f = sp.constant(U(rng));
  for (int k = 0; k < sp.dims; ++k) f = f + sp.coord(k) * U(rng);
  for (int k = 0; k < sp.dims; ++k) {
    for (int l = k; l < sp.dims; ++l) {
      f = f + (sp.coord(k) * sp.coord(l)) * U(rng);
    }
  }
  return f;
}

TField rand_tfield(const JetSpace& sp, std::mt19937_64& rng) {
  HField h;
  h.reserve(2 * sp.n);
  for (int k = 0; k < 2 * sp.n; ++k) h.push_back(rand_poly(sp, rng));
  return TField{std::move(h), rand_poly(sp, rng)};
}

// Shared gate measurement (also used standalone by measure_gates).
Gates compute_gates(const SurfaceJets& sj, const GeometryState& gs,
                    double ts) {
  Gates g;
  const JetSpace& sp = sj.sp;
  const int n = sj.n;
  const double nht = gs.norm2_htilde;
  HField gh = hgrad(sp, sj.Hmean);
  Jet ghn = ip(gh, sj.nu);
  double s = 0.0;
  for (int k = 0; k < 2 * n; ++k) {
    double v = gh[k].value() - ghn.value() * sj.nu[k].value();
    s += v * v;
  }
  g.H = gs.Hmean;
  g.gradH = std::sqrt(s);
  g.p1_res = gs.p1_residual();
  g.p2_res = gs.p2_residual();
  g.p3_val = gs.p3_value();
  g.minimal = std::abs(g.H) <= 1e-8 * (1.0 + std::sqrt(nht)) * ts &&
              g.gradH <= 1e-6 * (1.0 + nht) * ts;
  g.p1 = g.p1_res <= 1e-7 * (1.0 + std::sqrt(nht)) * ts;
  g.p2 = g.p2_res <= 1e-7 * (1.0 + gs.gradHS_alpha.norm()) * ts;
  g.p3 = g.p3_val >= -1e-9 * (1.0 + gs.alpha * gs.alpha + nht) * ts;
  return g;
}

struct Emitter {
  std::vector<CheckResult>* out = nullptr;
  std::string surface, point;
  double ts = 1.0;

  CheckResult& eq(const std::string& id, double lhs, double rhs, double resid,
                  double base, const std::string& anchor,
                  const std::string& notes = "", double extra_scale = 0.0) {
    CheckResult r;
    r.id = id;
    r.surface = surface;
    r.point = point;
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = resid;
    r.tol = base *
            (1.0 + std::max({std::abs(lhs), std::abs(rhs), extra_scale})) * ts;
    r.pass = resid <= r.tol;
    r.anchor = anchor;
    r.notes = notes;
    out->push_back(std::move(r));
    return out->back();
  }

  // Inequalities are always recorded with margin >= 0 expected.
  CheckResult& ineq(const std::string& id, double lhs, double rhs, double margin,
                    double base, const std::string& anchor,
                    const std::string& notes = "") {
    CheckResult r;
    r.id = id;
    r.surface = surface;
    r.point = point;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = margin;
    r.residual = std::max(0.0, -margin);
    r.tol = base * (1.0 + std::max(std::abs(lhs), std::abs(rhs))) * ts;
    r.pass = margin >= -r.tol;
    r.anchor = anchor;
    r.notes = notes;
    out->push_back(std::move(r));
    return out->back();
  }
};

double maxabs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

// ============================================================================
// the engine: shared geometry evaluated once per (surface, point)
// ============================================================================

struct Engine {
  const CheckCtx& ctx;
  Emitter em;

  SurfaceJets sj;
  FrameCalc fc;
  GeometryState gs;
  int n, ns;

  double alpha, nht, ell, q, Jnua, nDJnu2, Hval;
  Mat hv, htv, Cv;           // frame components (values)
  Vec JnuE;                  // <J(nu), E_a>
  Vec Ealpha;                // E_a(alpha)
  Vec hS;                    // h(S, E_c) = <nabla_S nu, E_c>
  Vec hJn;                   // h(E_i, J(nu))
  Vec dnua;                  // (nabla_{E_i} nu) alpha
  Vec piJa;                  // pi(J(E_i)) alpha
  Mat Halpha;                // Hess^{H,S} alpha (values)
  Mat DX;                    // <nabla_{E_i} nabla_{J(nu)} nu, E_j>
  Mat hWW;                   // <nabla_{E_i} nu, nabla_{E_j} nu>
  Mat Jdnu;                  // <J(nabla_{E_i} nu), nabla_{E_j} nu>
  std::vector<Mat> Dh, Dt;   // covariant derivatives of h, htilde (values)
  Jet3 Dt_jets;              // covariant derivative of htilde (jets)
  Mat DtS;                   // (nablaS_S htilde) (values)
  std::vector<std::vector<Mat>> RS;  // RS[a][b](c,d) = <R^S(E_a,E_b)E_c, E_d>
  double n2cov;              // |nabla^{H,S} htilde|^2
  double gnorm2;             // |grad^{H,S} |htilde|^2|^2
  double JnuN2;              // J(nu)(|htilde|^2)
  double hhJ;                // <htilde, htilde_J>
  double lap_hat_nht;        // hatDelta |htilde|^2
  Gates gates;

  explicit Engine(const CheckCtx& c)
      : ctx(c),
        sj(surface_jets(*c.def, c.p, kJetDeg, c.fopts)),
        fc(sj),
        gs(geometry_state(sj)),
        n(sj.n),
        ns(sj.ns) {
    em.surface = c.surface;
    em.point = c.point;
    em.ts = c.tol_scale;

    alpha = gs.alpha;
    nht = gs.norm2_htilde;
    ell = gs.ell;
    q = gs.q;
    Jnua = gs.Jnu_alpha;
    nDJnu2 = gs.norm2_DJnu;
    Hval = gs.Hmean;
    hv = gs.h;
    htv = gs.htilde;
    Cv = gs.C;

    const JetSpace& sp = sj.sp;
    JnuE = Vec::Zero(ns);
    Ealpha = Vec::Zero(ns);
    hS = Vec::Zero(ns);
    hJn = Vec::Zero(ns);
    dnua = Vec::Zero(ns);
    HField dSnu = nabla(sp, sj.S, sj.nu);
    for (int a = 0; a < ns; ++a) {
      JnuE[a] = ip(sj.Jnu, sj.E[a]).value();
      Ealpha[a] = fc.dirE(a, sj.alpha).value();
      hS[a] = ip(dSnu, sj.E[a]).value();
      hJn[a] = ip(sj.dnu[a], sj.Jnu).value();
      dnua[a] = dirderiv(sp, sj.dnu[a], sj.alpha).value();
    }
    piJa = Cv * Ealpha;
    Halpha = fc.hess_scalar(sj.alpha);

    DX = Mat::Zero(ns, ns);
    hWW = Mat::Zero(ns, ns);
    Jdnu = Mat::Zero(ns, ns);
    for (int i = 0; i < ns; ++i) {
      HField di = nabla(sp, sj.E[i], sj.DJnu);
      HField Jdi = applyJ(sj.dnu[i]);
      for (int j = 0; j < ns; ++j) {
        DX(i, j) = ip(di, sj.E[j]).value();
        hWW(i, j) = ip(sj.dnu[i], sj.dnu[j]).value();
        Jdnu(i, j) = ip(Jdi, sj.dnu[j]).value();
      }
    }

    Dh = values_of(fc.covS(sj.h));
    Dt_jets = fc.covS(sj.ht);
    Dt = values_of(Dt_jets);
    DtS = values_of(fc.covS_S(sj.ht));

    RS.assign(ns, std::vector<Mat>(ns));
    for (int a = 0; a < ns; ++a)
      for (int b = 0; b < ns; ++b) RS[a][b] = fc.curvature_RS(a, b);

    n2cov = 0.0;
    for (int m = 0; m < ns; ++m) n2cov += Dt[m].squaredNorm();

    HField g = fc.gradHS(sj.norm2_ht);
    gnorm2 = 0.0;
    for (int k = 0; k < 2 * n; ++k) gnorm2 += g[k].value() * g[k].value();
    JnuN2 = dirderiv(sp, sj.Jnu, sj.norm2_ht).value();

    hhJ = 0.0;
    Mat htJ = Cv * htv * Cv.transpose();  // htilde(pi J E_i, pi J E_j)
    hhJ = (htv.array() * htJ.array()).sum();

    lap_hat_nht = fc.lap_hat_scalar(sj.norm2_ht);

    measure();
  }

  void measure() { gates = compute_gates(sj, gs, ctx.tol_scale); }

  std::string gate_note() const {
    std::string s = "gates[";
    bool first = true;
    auto add = [&](bool on, const char* name) {
      if (!on) return;
      if (!first) s += ",";
      s += name;
      first = false;
    };
    add(gates.minimal, "minimal");
    add(gates.p1, "P1");
    add(gates.p2, "P2");
    add(gates.p3, "P3");
    s += "]";
    return s;
  }

  // --------------------------------------------------------------------------
  // structural identities of the ambient group and connection
  // --------------------------------------------------------------------------

  void structure() {
    const JetSpace& sp = sj.sp;
    std::mt19937_64 rng(ctx.field_seed);

    {  // frame_commutators
      std::vector<TField> F;
      for (int k = 0; k < 2 * n; ++k) {
        Vec e = Vec::Zero(2 * n);
        e[k] = 1.0;
        F.push_back(TField{hconst(sp, e), sp.constant(0.0)});
      }
      F.push_back(TField{hzero(sp), sp.constant(1.0)});
      double resid = 0.0, mag = 0.0;
      for (int a = 0; a < 2 * n + 1; ++a) {
        for (int b = 0; b < 2 * n + 1; ++b) {
          TField br = bracket(sp, F[a], F[b]);
          double expect_tau = 0.0;
          if (a < n && b == a + n) expect_tau = -2.0;
          if (b < n && a == b + n) expect_tau = 2.0;
          for (int k = 0; k < 2 * n; ++k)
            resid = std::max(resid, jet_maxabs(br.h[k]));
          resid = std::max(resid, jet_maxabs(br.tau - expect_tau));
          mag = std::max(mag, std::abs(expect_tau));
        }
      }
      em.eq("frame_commutators", mag, mag, resid, kBaseStructure,
            "[X_j, Y_j] = -2T, all other frame brackets vanish");
    }

    {  // connection_torsion
      double resid = 0.0, mag = 0.0;
      for (int rep = 0; rep < 3; ++rep) {
        TField X = rand_tfield(sp, rng), Y = rand_tfield(sp, rng);
        TField br = bracket(sp, X, Y);
        TField nXY = nabla(sp, X, Y), nYX = nabla(sp, Y, X);
        Jet tw = ip(applyJ(X.h), Y.h);
        for (int k = 0; k < 2 * n; ++k) {
          resid = std::max(resid, jet_maxabs(br.h[k] - (nXY.h[k] - nYX.h[k])));
          mag = std::max(mag, jet_maxabs(nXY.h[k]));
        }
        resid = std::max(resid,
                         jet_maxabs(br.tau - (nXY.tau - nYX.tau - 2.0 * tw)));
        mag = std::max(mag, jet_maxabs(tw));
      }
      em.eq("connection_torsion", mag, mag, resid, kBaseStructure,
            "[X,Y] = nabla_X Y - nabla_Y X - 2<J(X_H),Y_H> T");
    }

    {  // connection_metric
      double resid = 0.0, mag = 0.0;
      for (int rep = 0; rep < 3; ++rep) {
        TField X = rand_tfield(sp, rng), Y = rand_tfield(sp, rng),
               W = rand_tfield(sp, rng);
        Jet lhs = dirderiv(sp, X, ip(Y, W));
        Jet rhs = ip(nabla(sp, X, Y), W) + ip(Y, nabla(sp, X, W));
        resid = std::max(resid, jet_maxabs(lhs - rhs));
        mag = std::max(mag, jet_maxabs(lhs));
      }
      em.eq("connection_metric", mag, mag, resid, kBaseStructure,
            "X<Y,W> = <nabla_X Y, W> + <Y, nabla_X W>");
    }

    {  // connection_J_parallel
      double resid = 0.0, mag = 0.0;
      for (int rep = 0; rep < 3; ++rep) {
        TField X = rand_tfield(sp, rng);
        HField Y;
        for (int k = 0; k < 2 * n; ++k) Y.push_back(rand_poly(sp, rng));
        HField d1 = nabla(sp, X, applyJ(Y));
        HField d2 = applyJ(nabla(sp, X, Y));
        for (int k = 0; k < 2 * n; ++k) {
          resid = std::max(resid, jet_maxabs(d1[k] - d2[k]));
          mag = std::max(mag, jet_maxabs(d1[k]));
        }
      }
      em.eq("connection_J_parallel", mag, mag, resid, kBaseStructure,
            "nabla_X (J(Y)) = J(nabla_X Y)");
    }

    {  // connection_curvature_flat
      double resid = 0.0, mag = 0.0;
      for (int rep = 0; rep < 2; ++rep) {
        TField X = rand_tfield(sp, rng), Y = rand_tfield(sp, rng),
               Z = rand_tfield(sp, rng);
        TField a = nabla(sp, X, nabla(sp, Y, Z));
        TField b = nabla(sp, Y, nabla(sp, X, Z));
        TField c = nabla(sp, bracket(sp, X, Y), Z);
        for (int k = 0; k < 2 * n; ++k) {
          resid = std::max(resid, jet_maxabs(a.h[k] - b.h[k] - c.h[k]));
          mag = std::max(mag, jet_maxabs(a.h[k]));
        }
        resid = std::max(resid, jet_maxabs(a.tau - b.tau - c.tau));
      }
      em.eq("connection_curvature_flat", mag, mag, resid, kBaseStructure,
            "nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z = 0");
    }
  }

  // --------------------------------------------------------------------------
  // first-order surface identities
  // --------------------------------------------------------------------------

  void first_order() {
    const JetSpace& sp = sj.sp;

    {  // normal_S_evolution (tangential projection; extension independent)
      HField W = nabla(sp, sj.S, sj.nu);
      HField lhs = W - ip(W, sj.nu) * sj.nu;
      HField ga = fc.gradHS(sj.alpha);
      Jet a2 = sj.alpha * sj.alpha;
      HField rhs = ga + (2.0 * a2.value()) * sj.Jnu;
      double resid = 0.0, lm = 0.0, rm = 0.0;
      for (int k = 0; k < 2 * n; ++k) {
        resid = std::max(resid, std::abs(lhs[k].value() - rhs[k].value()));
        lm = std::max(lm, std::abs(lhs[k].value()));
        rm = std::max(rm, std::abs(rhs[k].value()));
      }
      em.eq("normal_S_evolution", lm, rm, resid, kBaseIdentity,
            "pi(nabla_S nu) = grad^{H,S} alpha + 2 alpha^2 J(nu)");
    }

    {  // nu_geodesic_unit — only meaningful when u is a CC distance,
       // i.e. |grad^H u| = 1 identically near the point.
      Jet d = sj.W - 1.0;
      if (jet_maxabs(d) <= 1e-10) {
        HField dn = nabla(sp, sj.nu, sj.nu);
        double resid = 0.0;
        for (int k = 0; k < 2 * n; ++k) {
          resid = std::max(resid, std::abs(dn[k].value() +
                                           2.0 * alpha * sj.Jnu[k].value()));
        }
        em.eq("nu_geodesic_unit", 2.0 * std::abs(alpha), 2.0 * std::abs(alpha),
              resid, kBaseIdentity, "nabla_nu nu = -2 alpha J(nu)",
              "|grad^H u| = 1 verified to jet order");
      }
    }

    {  // shape_symmetry
      double r1 = maxabs(Mat(htv - htv.transpose()));
      double r2 = 0.0;
      for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j)
          r2 = std::max(r2, std::abs(hv(j, i) - hv(i, j) - 2.0 * alpha * Cv(i, j)));
      em.eq("shape_symmetry", maxabs(htv), maxabs(htv), std::max(r1, r2),
            kBaseIdentity,
            "h(Y,X) = h(X,Y) + 2 alpha C(X,Y); htilde = h + alpha C symmetric");
    }

    {  // shape_norms
      double nh2 = hv.squaredNorm();
      double rhs = nht + 2.0 * (n - 1) * alpha * alpha;
      em.eq("shape_norms", nh2, rhs, std::abs(nh2 - rhs), kBaseIdentity,
            "|h|^2 = |htilde|^2 + 2(n-1) alpha^2");
    }

    {  // mean_curvature_forms
      double trh = hv.trace(), trht = htv.trace(), trC = Cv.trace();
      double resid = std::max({std::abs(trh - trht), std::abs(trC),
                               std::abs(trh - Hval)});
      em.eq("mean_curvature_forms", trh, trht, resid, kBaseIdentity,
            "H = tr h = tr htilde, tr(C restricted to HTS) = 0");
    }

    {  // q_forms
      double q1 = nht + 4.0 * Jnua + 2.0 * (n + 1) * alpha * alpha;
      double q2 = hv.squaredNorm() + 4.0 * Jnua + 4.0 * alpha * alpha;
      double dsum = 0.0;
      for (int h = 0; h < 2 * n; ++h) {
        for (int k = 0; k < 2 * n; ++k) {
          dsum += sp.Z(h, sj.nu[k]).value() * sp.Z(k, sj.nu[h]).value();
        }
      }
      double q3 = dsum + 4.0 * Jnua + 4.0 * n * alpha * alpha;
      double resid = std::max({std::abs(q1 - q2), std::abs(q1 - q3),
                               std::abs(q1 - q)});
      em.eq("q_forms", q1, q3, resid, kBaseIdentity,
            "q = |htilde|^2 + 4<grad alpha,J(nu)> + 2(n+1) alpha^2 = |h|^2 + "
            "4<grad alpha,J(nu)> + 4 alpha^2 = sum_hk Z_h(nu_k) Z_k(nu_h) + "
            "4<grad alpha,J(nu)> + 4n alpha^2");
    }

    {  // laplacian_cross_check on alpha and on |htilde|^2
      double l1 = fc.lap_scalar(sj.alpha);
      double l1f = fc.lap_scalar_frame(sj.alpha);
      double l2 = fc.lap_scalar(sj.norm2_ht);
      double l2f = fc.lap_scalar_frame(sj.norm2_ht);
      double resid = std::max(std::abs(l1 - l1f), std::abs(l2 - l2f));
      em.eq("laplacian_cross_check", std::max(std::abs(l1), std::abs(l2)),
            std::max(std::abs(l1f), std::abs(l2f)), resid, kBaseIdentity,
            "Delta^{H,S} f = sum_kl (delta_kl - nu_k nu_l) Z_k Z_l f - "
            "H <grad^H f, nu> = sum_m [E_m E_m f - (nablaS_{E_m} E_m) f]");
    }

    {  // laplacian_chain_rule with F = sin on f = alpha
      Jet f = sj.alpha;
      Jet Ff = sin(f);
      double lhs = fc.lap_hat_scalar(Ff);
      HField gf = fc.gradHS(f);
      double g2 = 0.0;
      for (int k = 0; k < 2 * n; ++k) g2 += gf[k].value() * gf[k].value();
      double rhs = -std::sin(alpha) * g2 + std::cos(alpha) * fc.lap_hat_scalar(f);
      em.eq("laplacian_chain_rule", lhs, rhs, std::abs(lhs - rhs), kBaseIdentity,
            "hatDelta^{H,S}(F(u)) = F''(u) |grad^{H,S} u|^2 + F'(u) "
            "hatDelta^{H,S} u");
    }

    {  // grad_htilde_Jnu
      double lhs = JnuN2;
      double sum = 0.0;
      for (int j = 0; j < ns; ++j)
        for (int k = 0; k < ns; ++k) sum += htv(j, k) * DX(j, k);
      double rhs = 4.0 * alpha * nDJnu2 - 4.0 * alpha * nht + 2.0 * sum;
      em.eq("grad_htilde_Jnu", lhs, rhs, std::abs(lhs - rhs), kBaseTensor,
            "<grad^S |htilde|^2, J(nu)> = 4 alpha |nabla_{J(nu)} nu|^2 - "
            "4 alpha |htilde|^2 + 2 sum_jk htilde(E_j,E_k) "
            "<nabla_{E_j} nabla_{J(nu)} nu, E_k>");
    }
  }

  // --------------------------------------------------------------------------
  // tensor suite: Gauss, Codazzi, commutation
  // --------------------------------------------------------------------------

  void tensor_suite() {
    {  // gauss_equation
      double resid = 0.0, lm = 0.0, rm = 0.0;
      for (int a = 0; a < ns; ++a) {
        for (int b = 0; b < ns; ++b) {
          for (int c = 0; c < ns; ++c) {
            for (int d = 0; d < ns; ++d) {
              double lhs = RS[a][b](c, d);
              double rhs = hv(b, c) * hv(a, d) - hv(a, c) * hv(b, d);
              resid = std::max(resid, std::abs(lhs - rhs));
              lm = std::max(lm, std::abs(lhs));
              rm = std::max(rm, std::abs(rhs));
            }
          }
        }
      }
      em.eq("gauss_equation", lm, rm, resid, kBaseTensor,
            "R^S(X,Y,Z,W) = h(Y,Z)h(X,W) - h(X,Z)h(Y,W)");
    }

    {  // codazzi_h
      double resid = 0.0, lm = 0.0;
      for (int a = 0; a < ns; ++a) {
        for (int b = 0; b < ns; ++b) {
          for (int c = 0; c < ns; ++c) {
            double lhs = Dh[b](a, c);
            double rhs = Dh[a](b, c) + 2.0 * Cv(a, b) * hS[c];
            resid = std::max(resid, std::abs(lhs - rhs));
            lm = std::max(lm, std::abs(lhs));
          }
        }
      }
      em.eq("codazzi_h", lm, lm, resid, kBaseTensor,
            "nablaS_Y h(X,Z) = nablaS_X h(Y,Z) + 2 C(X,Y) h(S,Z)");
    }

    {  // codazzi_hS
      double resid = 0.0, lm = 0.0;
      for (int c = 0; c < ns; ++c) {
        double rhs = Ealpha[c] + 2.0 * alpha * alpha * JnuE[c];
        resid = std::max(resid, std::abs(hS[c] - rhs));
        lm = std::max(lm, std::abs(hS[c]));
      }
      em.eq("codazzi_hS", lm, lm, resid, kBaseIdentity,
            "h(S,Z) = Z(alpha) + 2 alpha^2 <J(nu),Z>");
    }

    {  // codazzi_htilde
      double resid = 0.0, lm = 0.0;
      for (int a = 0; a < ns; ++a) {
        for (int b = 0; b < ns; ++b) {
          for (int c = 0; c < ns; ++c) {
            double lhs = Dt[b](a, c) - Dt[a](b, c);
            double rhs = 2.0 * Ealpha[c] * Cv(a, b) + Ealpha[b] * Cv(a, c) -
                         Ealpha[a] * Cv(b, c) +
                         2.0 * alpha * alpha * JnuE[c] * Cv(a, b) +
                         alpha * JnuE[a] * hv(b, c) - alpha * JnuE[b] * hv(a, c);
            resid = std::max(resid, std::abs(lhs - rhs));
            lm = std::max(lm, std::abs(lhs));
          }
        }
      }
      em.eq("codazzi_htilde", lm, lm, resid, kBaseTensor,
            "nablaS_Y htilde(X,Z) - nablaS_X htilde(Y,Z) = 2 Z(alpha) C(X,Y) + "
            "Y(alpha) C(X,Z) - X(alpha) C(Y,Z) + 2 alpha^2 C(nu,Z) C(X,Y) + "
            "alpha C(nu,X) h(Y,Z) - alpha C(nu,Y) h(X,Z)");
    }

    {  // codazzi_htilde_traced
      double resid = 0.0, lm = 0.0;
      for (int a = 0; a < ns; ++a) {
        for (int b = 0; b < ns; ++b) {
          double lhs = Dt[a](b, b);
          double rhs = Dt[b](a, b) + 3.0 * Ealpha[b] * Cv(b, a) +
                       3.0 * alpha * alpha * JnuE[b] * Cv(b, a) +
                       alpha * JnuE[b] * htv(b, a) - alpha * JnuE[a] * htv(b, b);
          resid = std::max(resid, std::abs(lhs - rhs));
          lm = std::max(lm, std::abs(lhs));
        }
      }
      em.eq("codazzi_htilde_traced", lm, lm, resid, kBaseTensor,
            "nablaS_X htilde(Y,Y) = nablaS_Y htilde(X,Y) + 3 Y(alpha) C(Y,X) + "
            "3 alpha^2 <J(nu),Y> C(Y,X) + alpha <J(nu),Y> htilde(Y,X) - "
            "alpha <J(nu),X> htilde(Y,Y)");
    }

    {  // nablaS_C
      std::vector<Mat> Dc = values_of(fc.covS(sj.C));
      double resid = 0.0, lm = 0.0;
      for (int m = 0; m < ns; ++m) {
        for (int a = 0; a < ns; ++a) {
          for (int c = 0; c < ns; ++c) {
            double lhs = Dc[m](a, c);
            double rhs = -JnuE[c] * hv(m, a) + JnuE[a] * hv(m, c);
            resid = std::max(resid, std::abs(lhs - rhs));
            lm = std::max(lm, std::abs(lhs));
          }
        }
      }
      em.eq("nablaS_C", lm, lm, resid, kBaseTensor,
            "(nablaS_X C)(Y,Z) = C(Z,nu) h(X,Y) - C(Y,nu) h(X,Z)");
    }

    {  // hessian_commutation on htilde
      Jet4 Hj = fc.hess(sj.ht);
      double resid = 0.0, lm = 0.0;
      for (int a = 0; a < ns; ++a) {
        for (int b = 0; b < ns; ++b) {
          for (int c = 0; c < ns; ++c) {
            for (int d = 0; d < ns; ++d) {
              double lhs = Hj[b][a][c][d].value();
              double curv = 0.0;
              for (int k = 0; k < ns; ++k) {
                curv += RS[a][b](c, k) * htv(k, d) + RS[a][b](d, k) * htv(c, k);
              }
              double rhs = Hj[a][b][c][d].value() + curv +
                           2.0 * Cv(a, b) * DtS(c, d);
              resid = std::max(resid, std::abs(lhs - rhs));
              lm = std::max(lm, std::abs(lhs));
            }
          }
        }
      }
      em.eq("hessian_commutation", lm, lm, resid, kBaseSimons,
            "Hess T(Y,X,Z,W) = Hess T(X,Y,Z,W) + T(R^S(X,Y)Z,W) + "
            "T(Z,R^S(X,Y)W) + 2<J(X),Y> (nablaS_S T)(Z,W)");
    }

    {  // nablahtrace (no minimality needed)
      double resid = 0.0, lm = 0.0;
      for (int x = 0; x < ns; ++x) {
        double tr = 0.0;
        for (int i = 0; i < ns; ++i) tr += Dh[x](i, i);
        double xh = fc.dirE(x, sj.Hmean).value();
        resid = std::max(resid, std::abs(tr - xh));
        lm = std::max(lm, std::abs(tr));
      }
      em.eq("nablahtrace", lm, lm, resid, kBaseTensor,
            "trace nablaS_X h(.,.) = X(H)", "", nht * std::sqrt(nht));
    }

    {  // hesshtrace
      Jet4 Hh = fc.hess(sj.h);
      Mat HessH = fc.hess_scalar(sj.Hmean);
      double resid = 0.0, lm = 0.0;
      for (int x = 0; x < ns; ++x) {
        for (int y = 0; y < ns; ++y) {
          double tr = 0.0;
          for (int k = 0; k < ns; ++k) tr += Hh[x][y][k][k].value();
          resid = std::max(resid, std::abs(tr - HessH(x, y)));
          lm = std::max(lm, std::abs(tr));
        }
      }
      em.eq("hesshtrace", lm, lm, resid, kBaseTensor,
            "trace Hess^{H,S} h(X,Y,.,.) = Hess^{H,S} H(X,Y)", "",
            nht * std::sqrt(nht));
    }

    {  // primaconsdisimonsform
      double lhs = 0.5 * fc.lap_scalar(sj.norm2_ht);
      Mat Lht = fc.laplacian(sj.ht);
      double rhs = n2cov + (htv.array() * Lht.array()).sum();
      em.eq("primaconsdisimonsform", lhs, rhs, std::abs(lhs - rhs), kBaseTensor,
            "(1/2) Delta^{H,S} |htilde|^2 = |nabla^{H,S} htilde|^2 + <htilde, "
            "Delta^{H,S} htilde>",
            "", nht * std::sqrt(nht));
    }
  }

  // --------------------------------------------------------------------------
  // Simons formulas
  // --------------------------------------------------------------------------

  void simons_suite() {
    if (gates.minimal) {  // simons_full, term by term
      Mat L = fc.laplacian(sj.h);
      Mat t1 = -q * hv;
      Mat t2 = 8.0 * alpha * alpha * hv;
      Mat t3 = 4.0 * Cv * Halpha;                  // 4 Hess a(pi J E_i, E_j)
      Mat t4 = 4.0 * Halpha * Cv.transpose();      // 4 Hess a(E_i, pi J E_j)
      Mat t5 = (16.0 * alpha * piJa - 8.0 * alpha * alpha * hJn + 4.0 * dnua) *
               JnuE.transpose();
      Mat t6 = -2.0 * (Ealpha * hJn.transpose() + hJn * Ealpha.transpose());
      Mat t7 = 2.0 * alpha * Cv * hWW.transpose();  // 2a h(E_j, nabla_{piJE_i} nu)
      Mat t8 = -2.0 * alpha * DX;
      Mat t9 = -4.0 * alpha * alpha * Cv * hv * Cv.transpose();
      Mat t10 = 2.0 * alpha * Jdnu;
      Mat R = t1 + t2 + t3 + t4 + t5 + t6 + t7 + t8 + t9 + t10;
      CheckResult& r = em.eq(
          "simons_full", maxabs(L), maxabs(R), maxabs(Mat(L - R)), kBaseSimons,
          "Delta^{H,S} h(X,Y) = -q h(X,Y) + 8 alpha^2 h(X,Y) + 4 Hess "
          "alpha(piJX,Y) + 4 Hess alpha(X,piJY) + (16 alpha piJX(alpha) - 8 "
          "alpha^2 h(X,Jnu) + 4 (nabla_X nu)(alpha)) <Y,Jnu> - 2 X(alpha) "
          "h(Y,Jnu) - 2 Y(alpha) h(X,Jnu) + 2 alpha h(Y, nabla_piJX nu) - 2 "
          "alpha <nabla_X nabla_Jnu nu, Y> - 4 alpha^2 h(piJX,piJY) + 2 alpha "
          "<J(nabla_X nu), nabla_Y nu>",
          gate_note());
      r.terms = {{"lap_h", L.norm()},
                 {"t01_minus_q_h", t1.norm()},
                 {"t02_8a2_h", t2.norm()},
                 {"t03_hess_piJX_Y", t3.norm()},
                 {"t04_hess_X_piJY", t4.norm()},
                 {"t05_Jnu_row", t5.norm()},
                 {"t06_Xa_hJnu", t6.norm()},
                 {"t07_h_nabla_piJX_nu", t7.norm()},
                 {"t08_nabla_nablaJnu_nu", t8.norm()},
                 {"t09_4a2_h_piJ", t9.norm()},
                 {"t10_J_dnu_dnu", t10.norm()}};
    }

    if (gates.minimal && gates.p2) {  // simons_contracted
      double lhs = 0.5 * lap_hat_nht;
      double rhs = n2cov - q * nht + 6.0 * alpha * alpha * nht -
                   6.0 * alpha * alpha * nDJnu2 + 4.0 * Jnua * nht -
                   4.0 * Jnua * ell * ell -
                   (4.0 * Jnua + 6.0 * alpha * alpha) * hhJ;
      CheckResult& r = em.eq(
          "simons_contracted", lhs, rhs, std::abs(lhs - rhs), kBaseSimons,
          "(1/2) hatDelta |htilde|^2 = |nabla^{H,S} htilde|^2 - q |htilde|^2 + "
          "6 alpha^2 |htilde|^2 - 6 alpha^2 |nabla_Jnu nu|^2 + 4 Jnu(alpha) "
          "|htilde|^2 - 4 Jnu(alpha) ell^2 - (4 Jnu(alpha) + 6 alpha^2) "
          "<htilde, htilde_J>",
          gate_note());
      r.terms = {{"cov2", n2cov}, {"q", q},           {"hhJ", hhJ},
                 {"ell2", ell * ell}, {"nDJnu2", nDJnu2}, {"Jnua", Jnua}};
    }

    if (n == 2 && gates.minimal) {  // hhJ_identity
      double rhs = 2.0 * nDJnu2 - nht;
      em.eq("hhJ_identity", hhJ, rhs, std::abs(hhJ - rhs), kBaseTensor,
            "<htilde, htilde_J> = 2 |nabla_{J(nu)} nu|^2 - |htilde|^2",
            gate_note());
    }

    {  // hhJ_cauchy_schwarz (no hypotheses)
      double bound = nht - 2.0 * nDJnu2 + ell * ell;
      em.ineq("hhJ_cauchy_schwarz", std::abs(hhJ), bound, bound - std::abs(hhJ),
              kBaseMargin,
              "|<htilde,htilde_J>| <= |htilde|^2 - 2 |nabla_{J(nu)} nu|^2 + "
              "ell^2");
    }

    if (n == 2 && gates.minimal) {  // hhJ_bound
      double expr = 2.0 * nht - 4.0 * nDJnu2 + ell * ell;
      em.ineq("hhJ_bound", expr, 0.0, expr, kBaseMargin,
              "2 |htilde|^2 - 4 |nabla_{J(nu)} nu|^2 + ell^2 >= 0", gate_note());
    }

    if (n == 2 && gates.minimal && gates.p2) {  // simons_H2_eq
      double lhs = 0.5 * lap_hat_nht;
      double bnd = 2.0 * nht - 4.0 * nDJnu2 + ell * ell;
      double rhs = n2cov - q * nht + 4.0 * alpha * alpha * nht -
                   8.0 * alpha * alpha * nDJnu2 + 2.0 * alpha * alpha * ell * ell +
                   4.0 * (Jnua + alpha * alpha) * bnd +
                   (8.0 * Jnua + 6.0 * alpha * alpha) * (nDJnu2 - ell * ell);
      em.eq("simons_H2_eq", lhs, rhs, std::abs(lhs - rhs), kBaseSimons,
            "(1/2) hatDelta |htilde|^2 = |nabla^{H,S} htilde|^2 - q |htilde|^2 "
            "+ 4 alpha^2 |htilde|^2 - 8 alpha^2 |nabla_Jnu nu|^2 + 2 alpha^2 "
            "ell^2 + 4 (Jnu(alpha) + alpha^2)(2|htilde|^2 - 4 |nabla_Jnu nu|^2 "
            "+ ell^2) + (8 Jnu(alpha) + 6 alpha^2)(|nabla_Jnu nu|^2 - ell^2)",
            gate_note());
    }

    if (n == 2 && gates.minimal && gates.p1 && gates.p2 && gates.p3) {
      // simons_H2_ineq
      double lhs = 0.5 * lap_hat_nht;
      double rhs = n2cov - q * nht + 4.0 * alpha * alpha * nht -
                   6.0 * alpha * alpha * ell * ell;
      em.ineq("simons_H2_ineq", lhs, rhs, lhs - rhs, kBaseMargin,
              "(1/2) hatDelta |htilde|^2 >= |nabla^{H,S} htilde|^2 - q "
              "|htilde|^2 + 4 alpha^2 |htilde|^2 - 6 alpha^2 ell^2",
              gate_note());
    }

    if (gates.p3) {  // segnodiq
      double rhs = nht + (2.0 * n - 2.0) * alpha * alpha;
      em.ineq("segnodiq", q, rhs, q - rhs, kBaseMargin,
              "q >= |htilde|^2 + (2n-2) alpha^2 when J(nu)alpha + alpha^2 >= 0",
              gate_note());
    }
  }

  // --------------------------------------------------------------------------
  // Kato and Simons–Kato
  // --------------------------------------------------------------------------

  static std::string ktag(double k) {
    if (k == 0.0) return "k000";
    if (k == 0.5) return "k050";
    if (k == 0.8) return "k080";
    if (k == 1.0) return "k100";
    if (k == 1.125) return "k1125";
    if (k == 1.5) return "k150";
    return "k200";
  }

  void kato_suite() {
    {  // kato_trivial
      double rhs = 4.0 * nht * n2cov;
      em.ineq("kato_trivial", gnorm2, rhs, rhs - gnorm2, kBaseMargin,
              "|grad^{H,S} |htilde|^2|^2 <= 4 |htilde|^2 |nabla^{H,S} "
              "htilde|^2");
    }

    if (gates.minimal && gates.p1 && gates.p2) {
      for (double k : {0.0, 0.5, 1.0, 1.5, 2.0}) {  // kato_improved
        double lhs = (1.0 + k / (2.0 * n - 1.0)) * gnorm2;
        double rhs = 4.0 * nht * n2cov +
                     4.0 * alpha * alpha * nht *
                         ((4.0 * k - 2.0) * nht +
                          (2.0 + 2.0 * k * n - 2.0 * k - 4.0 * n) * ell * ell);
        em.ineq("kato_improved_" + ktag(k), lhs, rhs, rhs - lhs, kBaseMargin,
                "(1 + k/(2n-1)) |grad^{H,S} |htilde|^2|^2 <= 4 |htilde|^2 "
                "|nabla^{H,S} htilde|^2 + 4 alpha^2 |htilde|^2 ((4k-2) "
                "|htilde|^2 + (2 + 2kn - 2k - 4n) ell^2)",
                gate_note());
      }
      for (double del : {1e-3, 1.0}) {  // kato with the A(delta) slack
        double k = 1.0;
        double A2 = nht + del;
        double lhs = (1.0 + k / (2.0 * n - 1.0)) * gnorm2;
        double rhs = 4.0 * A2 * n2cov +
                     4.0 * alpha * alpha * nht *
                         ((4.0 * k - 2.0) * nht +
                          (2.0 + 2.0 * k * n - 2.0 * k - 4.0 * n) * ell * ell);
        em.ineq("kato_delta_k100_d" + std::string(del < 1e-2 ? "0001" : "1"),
                lhs, rhs, rhs - lhs, kBaseMargin,
                "(1 + k/(2n-1)) |grad^{H,S} |htilde|^2|^2 <= 4 A(delta)^2 "
                "|nabla^{H,S} htilde|^2 + 4 alpha^2 |htilde|^2 ((4k-2) "
                "|htilde|^2 + (2 + 2kn - 2k - 4n) ell^2)",
                gate_note());
      }
    }

    if (n == 2 && gates.minimal && gates.p1 && gates.p2 && gates.p3) {
      for (double k : {0.8, 1.0, 1.125}) {  // simons_kato
        for (double del : {0.0, 1e-3, 1.0}) {
          double A2 = nht + del;
          double g = (6.0 - 4.0 * k) * nht - 2.0 * k * ell * ell;
          double lhs = 2.0 * A2 * lap_hat_nht;
          double rhs = (1.0 + k / 3.0) * gnorm2 - 4.0 * q * A2 * A2 +
                       4.0 * alpha * alpha * nht * g;
          std::string dt = del == 0.0 ? "d0" : (del < 1e-2 ? "d0001" : "d1");
          em.ineq("simons_kato_" + ktag(k) + "_" + dt, lhs, rhs, lhs - rhs,
                  kBaseMargin,
                  "2 A(delta)^2 hatDelta |htilde|^2 >= (1 + k/3) |grad^{H,S} "
                  "|htilde|^2|^2 - 4 q A(delta)^4 + 4 alpha^2 |htilde|^2 "
                  "g_{S,k},  g_{S,k} = (6-4k)|htilde|^2 - 2k ell^2",
                  gate_note());
        }
      }
    }

    if (n == 2 && gates.minimal && gates.p1) {
      for (double k : {0.8, 1.0, 1.125}) {  // g_{S,k} lower bound
        double g = (6.0 - 4.0 * k) * nht - 2.0 * k * ell * ell;
        double low = (6.0 - 16.0 * k / 3.0) * nht;
        double margin = std::min(g - low, low);
        em.ineq("simons_kato_g_lower_" + ktag(k), g, low, margin, kBaseMargin,
                "g_{S,k} = (6-4k)|htilde|^2 - 2k ell^2 >= (6 - 16k/3) "
                "|htilde|^2 >= 0 for k <= 9/8",
                gate_note());
      }
    }
  }

  // --------------------------------------------------------------------------
  // property verdicts against the frozen expectations of the gallery
  // --------------------------------------------------------------------------

  void properties() {
    // expected[kind] = {P1, P2, P3}; -1 = no frozen expectation (observational)
    int e1 = -1, e2 = -1, e3 = -1;
    const std::string& kind = ctx.example_kind;
    if (kind == "vertical") e1 = 1, e2 = 1, e3 = 1;
    if (kind == "horizontal") e1 = 1, e2 = 1, e3 = 1;
    if (kind == "paraboloid") e1 = 1, e2 = 1, e3 = 0;
    if (kind == "catenoid") e1 = 1, e2 = 1, e3 = 1;
    if (kind == "helicoid") e3 = 1;  // P1/P2 observational for the helicoid

    auto prop = [&](const char* id, bool got, int want, double val,
                    const char* anchor) {
      CheckResult r;
      r.id = id;
      r.surface = em.surface;
      r.point = em.point;
      r.lhs = val;
      r.rhs = want < 0 ? std::numeric_limits<double>::quiet_NaN()
                       : static_cast<double>(want);
      r.residual = 0.0;
      r.tol = 0.0;
      r.pass = want < 0 ? true : (got == (want == 1));
      r.anchor = anchor;
      r.notes = want < 0 ? (got ? "observational: holds" : "observational: fails")
                         : (got ? "holds" : "fails");
      em.out->push_back(std::move(r));
    };
    prop("property_P1", gates.p1, e1, gates.p1_res,
         "P1: J(nu) is an eigenvector of htilde (equivalently nabla_{J(nu)} nu "
         "= ell J(nu))");
    prop("property_P2", gates.p2, e2, gates.p2_res,
         "P2: grad^{H,S} alpha = <grad alpha, J(nu)> J(nu)");
    prop("property_P3", gates.p3, e3, gates.p3_val,
         "P3: J(nu)alpha + alpha^2 >= 0");
  }

  // --------------------------------------------------------------------------
  // closed-form example values
  // --------------------------------------------------------------------------

  void examples() {
    const std::string& kind = ctx.example_kind;
    const Point& p = ctx.p;
    if (kind == "vertical") {
      double resid = std::max({std::abs(alpha), maxabs(hv), std::abs(q),
                               std::abs(Hval)});
      em.eq("example_vertical", 0.0, 0.0, resid, kBaseExample,
            "vertical hyperplane: alpha = 0, h = 0, q = 0, H = 0");
    } else if (kind == "horizontal") {
      double r2 = 0.0;
      for (int k = 0; k < 2 * n; ++k) r2 += p.c[k] * p.c[k];
      double r = std::sqrt(r2);
      double resid = std::abs(alpha - 1.0 / r);
      // J(nu) is the outward radial direction z/|z|
      for (int k = 0; k < 2 * n; ++k)
        resid = std::max(resid, std::abs(gs.Jnu[k] - p.c[k] / r));
      resid = std::max({resid, std::abs(Hval), std::abs(gates.p3_val),
                        std::sqrt(nDJnu2)});
      em.eq("example_horizontal", 1.0 / r, alpha, resid, kBaseExample,
            "horizontal hyperplane: alpha = 1/|z|, J(nu) = z/|z|, H = 0, "
            "J(nu)alpha + alpha^2 = 0");
    } else if (kind == "paraboloid") {
      double x2 = 0.0;
      for (int j = 0; j < n; ++j) x2 += p.x(j) * p.x(j);
      double resid = std::abs(alpha - 1.0 / (2.0 * std::sqrt(x2)));
      resid = std::max(resid, std::abs(gates.p3_val + 1.0 / (4.0 * x2)));
      resid = std::max({resid, std::abs(Hval), std::sqrt(nDJnu2)});
      if (n == 2) resid = std::max(resid, std::abs(hhJ + nht));
      em.eq("example_paraboloid", -1.0 / (4.0 * x2), gates.p3_val, resid,
            kBaseExample,
            "t = sum x_j y_j: alpha = 1/(2|x|), J(nu)alpha + alpha^2 = "
            "-1/(4 sum x_j^2), nabla_{J(nu)} nu = 0, H = 0, <htilde,htilde_J> "
            "= -|htilde|^2");
    } else if (kind == "catenoid") {
      double z2 = 0.0;
      for (int k = 0; k < 2 * n; ++k) z2 += p.c[k] * p.c[k];
      double E = ctx.example_E;
      double z4 = z2 * z2, z8 = z4 * z4;
      double resid = std::abs(nht - 6.0 * E * E / z8);
      resid = std::max(resid, std::abs(ell * ell - 4.0 * E * E / z8));
      resid = std::max(resid, std::abs(ell + 2.0 * E / z4));  // signed form
      resid = std::max(resid, std::abs(nDJnu2 - 4.0 * E * E / z8));
      resid = std::max(resid, std::abs(gates.p3_val - 3.0 * E * E / z8));
      resid = std::max(resid, std::abs(2.0 * nht - 3.0 * ell * ell));
      resid = std::max(resid, std::abs(Hval));
      // nabla_{J(nu)} nu + 2E|z|^{-4} J(nu) = 0 componentwise
      for (int k = 0; k < 2 * n; ++k)
        resid = std::max(resid,
                         std::abs(gs.DJnu[k] + 2.0 * E / z4 * gs.Jnu[k]));
      em.eq("example_catenoid", nht, 6.0 * E * E / z8, resid, kBaseExample,
            "catenoid: nabla_{J(nu)} nu = -2E|z|^{-4} J(nu), ell^2 = "
            "4E^2|z|^{-8}, |htilde|^2 = 6E^2|z|^{-8}, J(nu)alpha + alpha^2 = "
            "3E^2|z|^{-8}, 2|htilde|^2 = 3 ell^2, H = 0");
    } else if (kind == "helicoid") {
      double s2 = p.x(0) * p.x(0) + p.y(0) * p.y(0);
      double tail = 0.0;
      for (int j = 1; j < n; ++j) tail += p.x(j) * p.x(j) + p.y(j) * p.y(j);
      double w2 = (1.0 + s2) * (1.0 + s2) + s2 * tail;
      double expect_p3 = ((1.0 + s2) / w2) * ((1.0 + s2) / w2);
      double W2 = gs.nH_norm * gs.nH_norm;
      double resid = std::abs(W2 - w2) / (1.0 + w2);
      resid = std::max(resid, std::abs(gates.p3_val - expect_p3));
      resid = std::max(resid, std::abs(Hval));
      em.eq("example_helicoid", expect_p3, gates.p3_val, resid, kBaseExample,
            "helicoid: |grad^H u|^2 = (1+s^2)^2 + s^2 sum_{j>=2}(xi_j^2 + "
            "eta_j^2), J(nu)alpha + alpha^2 = ((1+s^2)/|grad^H u|^2)^2, "
            "H = 0");
    }
  }

  void run() {
    structure();
    first_order();
    tensor_suite();
    simons_suite();
    kato_suite();
    properties();
    examples();
  }
};

}  // namespace

void run_pointwise_checks(const CheckCtx& ctx, std::vector<CheckResult>& out) {
  Engine eng(ctx);
  eng.em.out = &out;
  eng.run();
}

double structure_suite_max_residual(int n, int reps, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  double worst = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    Vec c(2 * n + 1);
    for (int k = 0; k < 2 * n + 1; ++k) c[k] = U(rng);
    JetSpace sp = JetSpace::at(Point(n, c));

    // frame commutators
    std::vector<TField> F;
    for (int k = 0; k < 2 * n; ++k) {
      Vec e = Vec::Zero(2 * n);
      e[k] = 1.0;
      F.push_back(TField{hconst(sp, e), sp.constant(0.0)});
    }
    F.push_back(TField{hzero(sp), sp.constant(1.0)});
    for (int a = 0; a < 2 * n + 1; ++a) {
      for (int b = 0; b < 2 * n + 1; ++b) {
        TField br = bracket(sp, F[a], F[b]);
        double expect_tau = 0.0;
        if (a < n && b == a + n) expect_tau = -2.0;
        if (b < n && a == b + n) expect_tau = 2.0;
        for (int k = 0; k < 2 * n; ++k)
          worst = std::max(worst, jet_maxabs(br.h[k]));
        worst = std::max(worst, jet_maxabs(br.tau - expect_tau));
      }
    }

    TField X = rand_tfield(sp, rng), Y = rand_tfield(sp, rng),
           Z = rand_tfield(sp, rng);

    // torsion
    {
      TField br = bracket(sp, X, Y);
      TField nXY = nabla(sp, X, Y), nYX = nabla(sp, Y, X);
      Jet tw = ip(applyJ(X.h), Y.h);
      for (int k = 0; k < 2 * n; ++k)
        worst = std::max(worst, jet_maxabs(br.h[k] - (nXY.h[k] - nYX.h[k])));
      worst = std::max(worst,
                       jet_maxabs(br.tau - (nXY.tau - nYX.tau - 2.0 * tw)));
    }
    // metric compatibility
    {
      Jet lhs = dirderiv(sp, X, ip(Y, Z));
      Jet rhs = ip(nabla(sp, X, Y), Z) + ip(Y, nabla(sp, X, Z));
      worst = std::max(worst, jet_maxabs(lhs - rhs));
    }
    // J parallel
    {
      HField d1 = nabla(sp, X, applyJ(Y.h));
      HField d2 = applyJ(nabla(sp, X, Y.h));
      for (int k = 0; k < 2 * n; ++k)
        worst = std::max(worst, jet_maxabs(d1[k] - d2[k]));
    }
    // flatness
    {
      TField a = nabla(sp, X, nabla(sp, Y, Z));
      TField b = nabla(sp, Y, nabla(sp, X, Z));
      TField d = nabla(sp, bracket(sp, X, Y), Z);
      for (int k = 0; k < 2 * n; ++k)
        worst = std::max(worst, jet_maxabs(a.h[k] - b.h[k] - d.h[k]));
      worst = std::max(worst, jet_maxabs(a.tau - b.tau - d.tau));
    }
  }
  return worst;
}

Gates measure_gates(const SurfaceDef& def, const Point& p, double tol_scale) {
  SurfaceJets sj = surface_jets(def, p);
  GeometryState gs = geometry_state(sj);
  return compute_gates(sj, gs, tol_scale);
}

std::vector<CheckInfo> pointwise_check_infos() {
  std::vector<CheckInfo> v;
  auto add = [&](const char* id, const char* kind, const char* gates,
                 const char* anchor) {
    v.push_back(CheckInfo{id, kind, gates, anchor});
  };
  add("frame_commutators", "equality", "-",
      "[X_j, Y_j] = -2T, all other frame brackets vanish");
  add("connection_torsion", "equality", "-",
      "[X,Y] = nabla_X Y - nabla_Y X - 2<J(X_H),Y_H> T");
  add("connection_metric", "equality", "-",
      "X<Y,W> = <nabla_X Y, W> + <Y, nabla_X W>");
  add("connection_J_parallel", "equality", "-",
      "nabla_X (J(Y)) = J(nabla_X Y)");
  add("connection_curvature_flat", "equality", "-",
      "nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z = 0");
  add("normal_S_evolution", "equality", "-",
      "pi(nabla_S nu) = grad^{H,S} alpha + 2 alpha^2 J(nu)");
  add("nu_geodesic_unit", "equality", "|grad^H u| = 1",
      "nabla_nu nu = -2 alpha J(nu)");
  add("shape_symmetry", "equality", "-",
      "h(Y,X) = h(X,Y) + 2 alpha C(X,Y); htilde = h + alpha C symmetric");
  add("shape_norms", "equality", "-", "|h|^2 = |htilde|^2 + 2(n-1) alpha^2");
  add("mean_curvature_forms", "equality", "-",
      "H = tr h = tr htilde, tr(C restricted to HTS) = 0");
  add("q_forms", "equality", "-",
      "q = |htilde|^2 + 4<grad alpha,J(nu)> + 2(n+1) alpha^2 = |h|^2 + 4<grad "
      "alpha,J(nu)> + 4 alpha^2 = sum_hk Z_h(nu_k) Z_k(nu_h) + 4<grad "
      "alpha,J(nu)> + 4n alpha^2");
  add("laplacian_cross_check", "equality", "-",
      "Delta^{H,S} f = sum_kl (delta_kl - nu_k nu_l) Z_k Z_l f - H <grad^H f, "
      "nu> = sum_m [E_m E_m f - (nablaS_{E_m} E_m) f]");
  add("laplacian_chain_rule", "equality", "-",
      "hatDelta^{H,S}(F(u)) = F''(u) |grad^{H,S} u|^2 + F'(u) hatDelta^{H,S} "
      "u");
  add("grad_htilde_Jnu", "equality", "-",
      "<grad^S |htilde|^2, J(nu)> = 4 alpha |nabla_{J(nu)} nu|^2 - 4 alpha "
      "|htilde|^2 + 2 sum_jk htilde(E_j,E_k) <nabla_{E_j} nabla_{J(nu)} nu, "
      "E_k>");
  add("gauss_equation", "equality", "-",
      "R^S(X,Y,Z,W) = h(Y,Z)h(X,W) - h(X,Z)h(Y,W)");
  add("codazzi_h", "equality", "-",
      "nablaS_Y h(X,Z) = nablaS_X h(Y,Z) + 2 C(X,Y) h(S,Z)");
  add("codazzi_hS", "equality", "-",
      "h(S,Z) = Z(alpha) + 2 alpha^2 <J(nu),Z>");
  add("codazzi_htilde", "equality", "-",
      "nablaS_Y htilde(X,Z) - nablaS_X htilde(Y,Z) = 2 Z(alpha) C(X,Y) + "
      "Y(alpha) C(X,Z) - X(alpha) C(Y,Z) + 2 alpha^2 C(nu,Z) C(X,Y) + alpha "
      "C(nu,X) h(Y,Z) - alpha C(nu,Y) h(X,Z)");
  add("codazzi_htilde_traced", "equality", "-",
      "nablaS_X htilde(Y,Y) = nablaS_Y htilde(X,Y) + 3 Y(alpha) C(Y,X) + 3 "
      "alpha^2 <J(nu),Y> C(Y,X) + alpha <J(nu),Y> htilde(Y,X) - alpha "
      "<J(nu),X> htilde(Y,Y)");
  add("nablaS_C", "equality", "-",
      "(nablaS_X C)(Y,Z) = C(Z,nu) h(X,Y) - C(Y,nu) h(X,Z)");
  add("hessian_commutation", "equality", "-",
      "Hess T(Y,X,Z,W) = Hess T(X,Y,Z,W) + T(R^S(X,Y)Z,W) + T(Z,R^S(X,Y)W) + "
      "2<J(X),Y> (nablaS_S T)(Z,W)");
  add("nablahtrace", "equality", "-", "trace nablaS_X h(.,.) = X(H)");
  add("hesshtrace", "equality", "-",
      "trace Hess^{H,S} h(X,Y,.,.) = Hess^{H,S} H(X,Y)");
  add("primaconsdisimonsform", "equality", "-",
      "(1/2) Delta^{H,S} |htilde|^2 = |nabla^{H,S} htilde|^2 + <htilde, "
      "Delta^{H,S} htilde>");
  add("simons_full", "equality", "minimal",
      "Delta^{H,S} h = -q h + 8 alpha^2 h + 4 Hess alpha(piJX,Y) + 4 Hess "
      "alpha(X,piJY) + (...)<Y,Jnu> - 2 Xa h(Y,Jnu) - 2 Ya h(X,Jnu) + 2a h(Y, "
      "nabla_piJX nu) - 2a <nabla_X nabla_Jnu nu, Y> - 4a^2 h(piJX,piJY) + 2a "
      "<J(nabla_X nu), nabla_Y nu>");
  add("simons_contracted", "equality", "minimal, P2",
      "(1/2) hatDelta |htilde|^2 = |nabla^{H,S} htilde|^2 - q |htilde|^2 + 6 "
      "alpha^2 |htilde|^2 - 6 alpha^2 |nabla_Jnu nu|^2 + 4 Jnu(alpha) "
      "|htilde|^2 - 4 Jnu(alpha) ell^2 - (4 Jnu(alpha) + 6 alpha^2) <htilde, "
      "htilde_J>");
  add("hhJ_identity", "equality", "n = 2, minimal",
      "<htilde, htilde_J> = 2 |nabla_{J(nu)} nu|^2 - |htilde|^2");
  add("hhJ_cauchy_schwarz", "inequality", "-",
      "|<htilde,htilde_J>| <= |htilde|^2 - 2 |nabla_{J(nu)} nu|^2 + ell^2");
  add("hhJ_bound", "inequality", "n = 2, minimal",
      "2 |htilde|^2 - 4 |nabla_{J(nu)} nu|^2 + ell^2 >= 0");
  add("simons_H2_eq", "equality", "n = 2, minimal, P2",
      "(1/2) hatDelta |htilde|^2 = |nabla^{H,S} htilde|^2 - q |htilde|^2 + 4 "
      "alpha^2 |htilde|^2 - 8 alpha^2 |nabla_Jnu nu|^2 + 2 alpha^2 ell^2 + 4 "
      "(Jnu(alpha)+alpha^2)(2|htilde|^2-4|nabla_Jnu nu|^2+ell^2) + (8 "
      "Jnu(alpha)+6 alpha^2)(|nabla_Jnu nu|^2-ell^2)");
  add("simons_H2_ineq", "inequality", "n = 2, minimal, P1, P2, P3",
      "(1/2) hatDelta |htilde|^2 >= |nabla^{H,S} htilde|^2 - q |htilde|^2 + 4 "
      "alpha^2 |htilde|^2 - 6 alpha^2 ell^2");
  add("segnodiq", "inequality", "P3",
      "q >= |htilde|^2 + (2n-2) alpha^2 when J(nu)alpha + alpha^2 >= 0");
  add("kato_trivial", "inequality", "-",
      "|grad^{H,S} |htilde|^2|^2 <= 4 |htilde|^2 |nabla^{H,S} htilde|^2");
  for (const char* k : {"k000", "k050", "k100", "k150", "k200"}) {
    add((std::string("kato_improved_") + k).c_str(), "inequality",
        "minimal, P1, P2",
        "(1 + k/(2n-1)) |grad^{H,S} |htilde|^2|^2 <= 4 |htilde|^2 |nabla^{H,S} "
        "htilde|^2 + 4 alpha^2 |htilde|^2 ((4k-2)|htilde|^2 + "
        "(2+2kn-2k-4n) ell^2)");
  }
  for (const char* d : {"d0001", "d1"}) {
    add((std::string("kato_delta_k100_") + d).c_str(), "inequality",
        "minimal, P1, P2",
        "(1 + k/(2n-1)) |grad^{H,S} |htilde|^2|^2 <= 4 A(delta)^2 |nabla^{H,S} "
        "htilde|^2 + 4 alpha^2 |htilde|^2 ((4k-2)|htilde|^2 + (2+2kn-2k-4n) "
        "ell^2)");
  }
  for (const char* k : {"k080", "k100", "k1125"}) {
    for (const char* d : {"d0", "d0001", "d1"}) {
      add((std::string("simons_kato_") + k + "_" + d).c_str(), "inequality",
          "n = 2, minimal, P1, P2, P3",
          "2 A(delta)^2 hatDelta |htilde|^2 >= (1 + k/3) |grad^{H,S} "
          "|htilde|^2|^2 - 4 q A(delta)^4 + 4 alpha^2 |htilde|^2 g_{S,k}");
    }
  }
  for (const char* k : {"k080", "k100", "k1125"}) {
    add((std::string("simons_kato_g_lower_") + k).c_str(), "inequality",
        "n = 2, minimal, P1",
        "g_{S,k} = (6-4k)|htilde|^2 - 2k ell^2 >= (6-16k/3)|htilde|^2 >= 0 for "
        "k <= 9/8");
  }
  add("property_P1", "property", "frozen per gallery surface",
      "P1: J(nu) is an eigenvector of htilde");
  add("property_P2", "property", "frozen per gallery surface",
      "P2: grad^{H,S} alpha = <grad alpha, J(nu)> J(nu)");
  add("property_P3", "property", "frozen per gallery surface",
      "P3: J(nu)alpha + alpha^2 >= 0");
  add("example_vertical", "example", "gallery: vertical",
      "alpha = 0, h = 0, q = 0, H = 0");
  add("example_horizontal", "example", "gallery: horizontal",
      "alpha = 1/|z|, J(nu) = z/|z|, H = 0, J(nu)alpha + alpha^2 = 0");
  add("example_paraboloid", "example", "gallery: paraboloid",
      "alpha = 1/(2|x|), J(nu)alpha + alpha^2 = -1/(4 sum x_j^2), "
      "nabla_{J(nu)} nu = 0, H = 0");
  add("example_catenoid", "example", "gallery: catenoid",
      "nabla_{J(nu)} nu = -2E|z|^{-4} J(nu), ell^2 = 4E^2|z|^{-8}, |htilde|^2 "
      "= 6E^2|z|^{-8}, J(nu)alpha + alpha^2 = 3E^2|z|^{-8}, H = 0");
  add("example_helicoid", "example", "gallery: helicoid",
      "|grad^H u|^2 = (1+s^2)^2 + s^2 sum_{j>=2}(xi_j^2+eta_j^2), "
      "J(nu)alpha + alpha^2 = ((1+s^2)/|grad^H u|^2)^2, H = 0");
  return v;
}

}  // namespace heisgeo
