#pragma once
// The Heisenberg group ℍⁿ = ℝ^{2n+1} with coordinates (x_1..x_n, y_1..y_n, t),
// its left-invariant orthonormal frame, complex structure J, pseudohermitian
// connection, and the Korányi gauge. Vector fields are represented by their
// frame coefficients; the metric is then the Euclidean dot product on
// coefficients.

#include <Eigen/Dense>

#include "heisgeo/jet.hpp"

namespace heisgeo {

using Vec = Eigen::VectorXd;

struct Point {
  int n = 0;
  Vec c;  // size 2n+1, ordered (x_1..x_n, y_1..y_n, t)

  Point() = default;
  Point(int n_, Vec c_) : n(n_), c(std::move(c_)) {}
  double x(int j) const { return c[j]; }          // j in [0,n)
  double y(int j) const { return c[n + j]; }      // j in [0,n)
  double t() const { return c[2 * n]; }
  int dims() const { return 2 * n + 1; }
};

// Group law: (x,y,t)·(x',y',t') = (x+x', y+y', t+t' + Σ_j (x'_j y_j − x_j y'_j)).
Point group_mul(const Point& p, const Point& q);
Point group_inv(const Point& p);
// Anisotropic dilation δ_λ(x,y,t) = (λx, λy, λ²t).
Point dilate(const Point& p, double lam);
// Korányi gauge ‖(z,t)‖ = (|z|⁴ + t²)^{1/4}; homogeneous of degree 1 under δ_λ.
double koranyi_gauge(const Point& p);
// Left-invariant gauge distance ‖p⁻¹·q‖.
double koranyi_dist(const Point& p, const Point& q);

// Frame at p: row k holds the coordinate components of the k-th frame field,
//   X_j = ∂x_j + y_j ∂t   (rows 0..n−1)
//   Y_j = ∂y_j − x_j ∂t   (rows n..2n−1)
//   T   = ∂t              (row 2n)
Eigen::MatrixXd frame_at(const Point& p);

// J on horizontal frame coefficients: J X_j = Y_j, J Y_j = −X_j, i.e.
// (a, b) ↦ (−b, a) on the (X-block, Y-block) coefficient pair.
Vec apply_J(const Vec& h);

// ---------------------------------------------------------------------------
// Jet-valued calculus at a base point. Scalars are Jets in the 2n+1 ambient
// coordinates; vector fields are arrays of frame-coefficient Jets.

struct JetSpace {
  int n = 0;
  int dims = 0;
  Point p;
  int order = kJetDeg;

  static JetSpace at(const Point& p, int order = kJetDeg) {
    return JetSpace{p.n, 2 * p.n + 1, p, order};
  }
  Jet coord(int k) const { return Jet::variable(dims, k, p.c[k], order); }
  Jet constant(double v) const { return Jet::constant(dims, v, order); }

  // Frame derivatives of a scalar jet. k in [0, 2n).
  Jet Z(int k, const Jet& f) const {
    if (k < n) return f.partial(k) + coord(n + k) * f.partial(2 * n);   // X_k
    return f.partial(k) - coord(k - n) * f.partial(2 * n);              // Y_{k−n}
  }
  Jet T(const Jet& f) const { return f.partial(2 * n); }
};

// Horizontal field: 2n frame-coefficient jets. Tangent field adds a T slot.
using HField = std::vector<Jet>;
struct TField {
  HField h;
  Jet tau;
};

HField hconst(const JetSpace& sp, const Vec& coeff);
HField hzero(const JetSpace& sp);

HField operator+(const HField& a, const HField& b);
HField operator-(const HField& a, const HField& b);
HField operator-(const HField& a);
HField operator*(const Jet& s, const HField& a);
HField operator*(double s, const HField& a);

Jet ip(const HField& a, const HField& b);              // ⟨·,·⟩ on frame coeffs
Jet ip(const TField& a, const TField& b);
HField applyJ(const HField& a);                        // J(T component) = 0

Jet dirderiv(const JetSpace& sp, const HField& X, const Jet& f);
Jet dirderiv(const JetSpace& sp, const TField& X, const Jet& f);

// Pseudohermitian connection: all frame fields are parallel, so
// (∇_X Y)^k = X(Y^k) componentwise (T component included for TField).
HField nabla(const JetSpace& sp, const HField& X, const HField& Y);
HField nabla(const JetSpace& sp, const TField& X, const HField& Y);
TField nabla(const JetSpace& sp, const TField& X, const TField& Y);
TField nabla(const JetSpace& sp, const HField& X, const TField& Y);

// Lie bracket. [X,Y]^k = X(Y^k) − Y(X^k) on all slots, with the extra vertical
// contribution −2⟨J(X_H),Y_H⟩ in the T slot (torsion of the flat connection).
TField bracket(const JetSpace& sp, const TField& X, const TField& Y);
TField as_tfield(const JetSpace& sp, const HField& X);

// Horizontal gradient (Z_1 f, ..., Z_{2n} f) and full frame gradient.
HField hgrad(const JetSpace& sp, const Jet& f);
TField tgrad(const JetSpace& sp, const Jet& f);

// Korányi gauge of p0⁻¹·p as a jet at sp.p (sp.p must differ from p0).
Jet gauge_jet(const JetSpace& sp, const Point& p0);

}  // namespace heisgeo
