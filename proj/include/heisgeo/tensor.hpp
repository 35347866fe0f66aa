#pragma once
// Tensor calculus on the horizontal tangent bundle HTS of a hypersurface.
// Components are taken in the orthonormal frame E_1..E_{2n−1} carried by
// SurfaceJets; the restricted connection is ∇ˢ_X Y = π(∇_X Y) with π the
// orthogonal projection onto HTS. Christoffel symbols, covariant derivatives,
// Hessians, horizontal Laplacians, and the curvature tensor R^S are all
// evaluated through jets, so no finite differencing enters anywhere.

#include <Eigen/Dense>

#include "heisgeo/geometry.hpp"

namespace heisgeo {

using Jet3 = std::vector<JetMat>;               // [m][i][j]
using Jet4 = std::vector<Jet3>;                 // [m][l][i][j]
using Mat = Eigen::MatrixXd;

struct FrameCalc {
  const SurfaceJets* sj = nullptr;
  int ns = 0;

  Jet3 Gamma;     // Γ[m][i][k] = ⟨∇_{E_m} E_i, E_k⟩ = ⟨∇ˢ_{E_m} E_i, E_k⟩
  JetMat GammaS;  // Γ_𝒮[i][k] = ⟨∇_𝒮 E_i, E_k⟩

  explicit FrameCalc(const SurfaceJets& s);

  // Directional derivatives of scalar jets.
  Jet dirE(int m, const Jet& f) const;   // E_m f
  Jet dirS(const Jet& f) const;          // 𝒮 f

  // Covariant derivatives of a (0,2)-tensor given by frame components T[i][j]:
  //   (∇ˢ_X T)(X_1,X_2) = X(T(X_1,X_2)) − T(∇ˢ_X X_1, X_2) − T(X_1, ∇ˢ_X X_2).
  Jet3 covS(const JetMat& T) const;        // [m][i][j] = (∇ˢ_{E_m} T)(E_i,E_j)
  JetMat covS_S(const JetMat& T) const;    // (∇ˢ_𝒮 T)(E_i,E_j)

  // Hess T(X,Y,Z,W) = (∇ˢ_X ∇ˢ T)(Y,Z,W); Δ^{H,S} T = Σ_m Hess T(E_m,E_m,·,·).
  Jet4 hess(const JetMat& T) const;        // [m][l][i][j]
  Mat laplacian(const JetMat& T) const;    // values of Σ_m Hess[m][m][i][j]

  // Tangential covariant derivative of a tangent horizontal field V:
  // ∇ˢ_X V = ∇_X V − ⟨∇_X V, ν⟩ν.
  HField covS_dir(const TField& X, const HField& V) const;
  HField covS_frame(int m, const HField& V) const;

  // R^S(X,Y)Z = ∇ˢ_X∇ˢ_Y Z − ∇ˢ_Y∇ˢ_X Z − ∇ˢ_{[X,Y]} Z, returned as the value
  // matrix R[c][d] = ⟨R^S(E_a,E_b)E_c, E_d⟩.
  Mat curvature_RS(int a, int b) const;

  // Scalar calculus.
  HField gradHS(const Jet& f) const;       // ∇^H f − ⟨∇^H f, ν⟩ν
  Mat hess_scalar(const Jet& f) const;     // values of E_a(E_b f) − Γ[a][b][k] E_k f
  double lap_scalar(const Jet& f) const;        // Σ(δ_kl−ν_kν_l) Z_k Z_l f − H ⟨∇^H f, ν⟩
  double lap_scalar_frame(const Jet& f) const;  // Σ_m [E_m(E_m f) − (∇ˢ_{E_m}E_m) f]
  double lap_hat_scalar(const Jet& f) const;    // Δ^{H,S} f + 2α ⟨∇^H f, J(ν)⟩
};

// Value extraction helpers.
Mat values_of(const JetMat& T);
std::vector<Mat> values_of(const Jet3& T);

}  // namespace heisgeo
