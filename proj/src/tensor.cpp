#include "heisgeo/tensor.hpp"

namespace heisgeo {

// ============================================================================
// construction: Christoffel symbols of the restricted connection
// ============================================================================

FrameCalc::FrameCalc(const SurfaceJets& s) : sj(&s), ns(s.ns) {
  const JetSpace& sp = s.sp;
  Gamma.assign(ns, JetMat(ns, std::vector<Jet>(ns, sp.constant(0.0))));
  GammaS.assign(ns, std::vector<Jet>(ns, sp.constant(0.0)));
  for (int m = 0; m < ns; ++m) {
    for (int i = 0; i < ns; ++i) {
      HField d = nabla(sp, s.E[m], s.E[i]);
      for (int k = 0; k < ns; ++k) Gamma[m][i][k] = ip(d, s.E[k]);
    }
  }
  for (int i = 0; i < ns; ++i) {
    HField d = nabla(sp, s.S, s.E[i]);
    for (int k = 0; k < ns; ++k) GammaS[i][k] = ip(d, s.E[k]);
  }
}

Jet FrameCalc::dirE(int m, const Jet& f) const {
  return dirderiv(sj->sp, sj->E[m], f);
}

Jet FrameCalc::dirS(const Jet& f) const { return dirderiv(sj->sp, sj->S, f); }

// ============================================================================
// covariant derivatives of (0,2)-tensors
// ============================================================================

Jet3 FrameCalc::covS(const JetMat& T) const {
  const JetSpace& sp = sj->sp;
  Jet3 D(ns, JetMat(ns, std::vector<Jet>(ns, sp.constant(0.0))));
  for (int m = 0; m < ns; ++m) {
    for (int i = 0; i < ns; ++i) {
      for (int j = 0; j < ns; ++j) {
        Jet v = dirE(m, T[i][j]);
        for (int k = 0; k < ns; ++k) {
          v = v - Gamma[m][i][k] * T[k][j] - Gamma[m][j][k] * T[i][k];
        }
        D[m][i][j] = v;
      }
    }
  }
  return D;
}

JetMat FrameCalc::covS_S(const JetMat& T) const {
  const JetSpace& sp = sj->sp;
  JetMat D(ns, std::vector<Jet>(ns, sp.constant(0.0)));
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < ns; ++j) {
      Jet v = dirS(T[i][j]);
      for (int k = 0; k < ns; ++k) {
        v = v - GammaS[i][k] * T[k][j] - GammaS[j][k] * T[i][k];
      }
      D[i][j] = v;
    }
  }
  return D;
}

Jet4 FrameCalc::hess(const JetMat& T) const {
  const JetSpace& sp = sj->sp;
  Jet3 D = covS(T);
  Jet4 H(ns, Jet3(ns, JetMat(ns, std::vector<Jet>(ns, sp.constant(0.0)))));
  for (int m = 0; m < ns; ++m) {
    for (int l = 0; l < ns; ++l) {
      for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < ns; ++j) {
          Jet v = dirE(m, D[l][i][j]);
          for (int k = 0; k < ns; ++k) {
            v = v - Gamma[m][l][k] * D[k][i][j] - Gamma[m][i][k] * D[l][k][j] -
                Gamma[m][j][k] * D[l][i][k];
          }
          H[m][l][i][j] = v;
        }
      }
    }
  }
  return H;
}

Mat FrameCalc::laplacian(const JetMat& T) const {
  Jet4 H = hess(T);
  Mat L = Mat::Zero(ns, ns);
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < ns; ++j) {
      double v = 0.0;
      for (int m = 0; m < ns; ++m) v += H[m][m][i][j].value();
      L(i, j) = v;
    }
  }
  return L;
}

// ============================================================================
// tangent vector fields and curvature
// ============================================================================

HField FrameCalc::covS_dir(const TField& X, const HField& V) const {
  const JetSpace& sp = sj->sp;
  HField W = nabla(sp, X, V);
  return W - ip(W, sj->nu) * sj->nu;
}

HField FrameCalc::covS_frame(int m, const HField& V) const {
  const JetSpace& sp = sj->sp;
  HField W = nabla(sp, sj->E[m], V);
  return W - ip(W, sj->nu) * sj->nu;
}

Mat FrameCalc::curvature_RS(int a, int b) const {
  const JetSpace& sp = sj->sp;
  TField ab = bracket(sp, as_tfield(sp, sj->E[a]), as_tfield(sp, sj->E[b]));
  Mat R = Mat::Zero(ns, ns);
  for (int c = 0; c < ns; ++c) {
    HField ba = covS_frame(a, covS_frame(b, sj->E[c]));
    HField bb = covS_frame(b, covS_frame(a, sj->E[c]));
    HField bc = covS_dir(ab, sj->E[c]);
    for (int d = 0; d < ns; ++d) {
      R(c, d) = ip(ba, sj->E[d]).value() - ip(bb, sj->E[d]).value() -
                ip(bc, sj->E[d]).value();
    }
  }
  return R;
}

// ============================================================================
// scalar calculus
// ============================================================================

HField FrameCalc::gradHS(const Jet& f) const {
  const JetSpace& sp = sj->sp;
  HField g = hgrad(sp, f);
  return g - ip(g, sj->nu) * sj->nu;
}

Mat FrameCalc::hess_scalar(const Jet& f) const {
  std::vector<Jet> Ef;
  Ef.reserve(ns);
  for (int k = 0; k < ns; ++k) Ef.push_back(dirE(k, f));
  Mat H(ns, ns);
  for (int a = 0; a < ns; ++a) {
    for (int b = 0; b < ns; ++b) {
      Jet v = dirE(a, Ef[b]);
      for (int k = 0; k < ns; ++k) v = v - Gamma[a][b][k] * Ef[k];
      H(a, b) = v.value();
    }
  }
  return H;
}

double FrameCalc::lap_scalar(const Jet& f) const {
  const JetSpace& sp = sj->sp;
  const int tn = 2 * sj->n;
  std::vector<Jet> Zf;
  Zf.reserve(tn);
  for (int k = 0; k < tn; ++k) Zf.push_back(sp.Z(k, f));
  double acc = 0.0;
  for (int k = 0; k < tn; ++k) {
    for (int l = 0; l < tn; ++l) {
      double g = (k == l ? 1.0 : 0.0) - sj->nu[k].value() * sj->nu[l].value();
      if (g != 0.0) acc += g * sp.Z(k, Zf[l]).value();
    }
  }
  double dn = 0.0;  // ⟨∇^H f, ν⟩
  for (int k = 0; k < tn; ++k) dn += Zf[k].value() * sj->nu[k].value();
  return acc - sj->Hmean.value() * dn;
}

double FrameCalc::lap_scalar_frame(const Jet& f) const {
  double acc = 0.0;
  for (int m = 0; m < ns; ++m) {
    Jet em = dirE(m, f);
    acc += dirE(m, em).value();
    for (int k = 0; k < ns; ++k) {
      acc -= Gamma[m][m][k].value() * dirE(k, f).value();
    }
  }
  return acc;
}

double FrameCalc::lap_hat_scalar(const Jet& f) const {
  const JetSpace& sp = sj->sp;
  double jf = dirderiv(sp, sj->Jnu, f).value();  // ⟨∇^H f, J(ν)⟩ = J(ν)f
  return lap_scalar(f) + 2.0 * sj->alpha.value() * jf;
}

// ============================================================================
// helpers
// ============================================================================

Mat values_of(const JetMat& T) {
  const int r = static_cast<int>(T.size());
  const int c = r > 0 ? static_cast<int>(T[0].size()) : 0;
  Mat M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = T[i][j].value();
  return M;
}

std::vector<Mat> values_of(const Jet3& T) {
  std::vector<Mat> out;
  out.reserve(T.size());
  for (const auto& m : T) out.push_back(values_of(m));
  return out;
}

}  // namespace heisgeo
