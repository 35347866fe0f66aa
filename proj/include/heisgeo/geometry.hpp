#pragma once
// Extrinsic geometry of a non-characteristic point p on S = {u = 0}: the
// horizontal unit normal ν, the deviation α, the tangent frame of HTS, the
// shape tensors h and h̃ = h + αC, and the scalars (H, ℓ, q, ...) built from
// them. Everything is carried as jets so tensor calculus downstream can take
// covariant derivatives without finite differences.
//
// All fields are level-set extensions (ν = ∇^H u / |∇^H u| off the surface as
// well); every check consumes only tangential derivatives, which do not see
// the extension.

#include <cstdint>

#include "heisgeo/surface.hpp"

namespace heisgeo {

struct CharacteristicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FrameOptions {
  // 0 = keep the adapted frame; otherwise mix the HTS slots by a seeded
  // random orthogonal matrix (tensorial checks must be invariant under this).
  uint64_t remix_seed = 0;
  bool adapt = true;      // put J(ν) in slot n (1-based) and pair E_{n+i} = J(E_i)
  int pivot_variant = 0;  // deterministic alternative pivoting for frame tests
};

using JetMat = std::vector<std::vector<Jet>>;  // (2n−1)×(2n−1) tensor components

struct SurfaceJets {
  JetSpace sp;
  int n = 0;
  int ns = 0;  // = 2n−1, dim of the horizontal tangent space HTS
  FrameOptions opts;

  Jet u;        // order sp.order
  HField Zu;    // Z_k u
  Jet Tu;       // T u
  Jet W;        // |∇^H u|
  HField nu;    // horizontal unit normal
  Jet alpha;    // T u / |∇^H u|
  HField Jnu;
  TField S;     // 𝒮 = T − α ν

  std::vector<HField> E;   // tangent frame of HTS, E[0..ns)
  std::vector<HField> dnu; // dnu[i] = ∇_{E_i} ν

  JetMat h, C, ht;  // h(E_i,E_j), ⟨J(E_i),E_j⟩, h̃ = h + αC
  Jet Hmean;        // trace h = trace h̃
  HField DJnu;      // ∇_{J(ν)} ν
  Jet ell;          // h(J(ν),J(ν))
  HField Xdev;      // 𝔛 = ∇_{J(ν)}ν − ℓ J(ν)
  Jet Jnua;         // J(ν)α = ⟨∇α, J(ν)⟩
  Jet norm2_ht;     // |h̃|²
  Jet q;            // |h̃|² + 4⟨∇α,J(ν)⟩ + 2(n+1)α²
};

SurfaceJets surface_jets(const SurfaceDef& s, const Point& p, int order = kJetDeg,
                         FrameOptions opts = {});

// Plain-value snapshot for reports and quadrature integrands.
struct GeometryState {
  int n = 0;
  Point p;
  double nH_norm = 0.0;     // |∇^H u|
  Vec nu, Jnu;              // 2n frame coefficients
  double alpha = 0.0;
  Vec N;                    // unit Riemannian normal (2n+1 frame coeffs)
  Vec Svec;                 // 𝒮 (2n+1 frame coeffs)
  Eigen::MatrixXd frame;    // rows = E_i (2n coeffs each)
  Eigen::MatrixXd h, htilde, C;
  double Hmean = 0.0, ell = 0.0, q = 0.0;
  Vec Xdev;                 // 2n
  Vec DJnu;                 // ∇_{J(ν)}ν, 2n
  Vec gradHS_alpha;         // tangential horizontal gradient of α, 2n
  double Jnu_alpha = 0.0;   // J(ν)α
  double norm2_htilde = 0.0;
  double norm2_DJnu = 0.0;

  // property detectors
  double p1_residual() const { return Xdev.norm(); }            // 𝔛 = 0
  double p2_residual() const {                                  // ∇^{H,S}α ∥ J(ν)
    return (gradHS_alpha - (gradHS_alpha.dot(Jnu)) * Jnu).norm();
  }
  double p3_value() const { return Jnu_alpha + alpha * alpha; } // ≥ 0
};

GeometryState geometry_state(const SurfaceJets& sj);
GeometryState geometry_state(const SurfaceDef& s, const Point& p);

}  // namespace heisgeo
