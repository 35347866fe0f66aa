#include "heisgeo/heis.hpp"

namespace heisgeo {

Point group_mul(const Point& p, const Point& q) {
  const int n = p.n;
  Point r{n, Vec(2 * n + 1)};
  double twist = 0.0;
  for (int j = 0; j < n; ++j) {
    r.c[j] = p.x(j) + q.x(j);
    r.c[n + j] = p.y(j) + q.y(j);
    twist += q.x(j) * p.y(j) - p.x(j) * q.y(j);
  }
  r.c[2 * n] = p.t() + q.t() + twist;
  return r;
}

Point group_inv(const Point& p) {
  Point r = p;
  r.c = -p.c;
  return r;
}

Point dilate(const Point& p, double lam) {
  Point r = p;
  r.c *= lam;
  r.c[2 * p.n] = lam * lam * p.t();
  return r;
}

double koranyi_gauge(const Point& p) {
  double z2 = p.c.head(2 * p.n).squaredNorm();
  return std::pow(z2 * z2 + p.t() * p.t(), 0.25);
}

double koranyi_dist(const Point& p, const Point& q) {
  return koranyi_gauge(group_mul(group_inv(p), q));
}

Eigen::MatrixXd frame_at(const Point& p) {
  const int n = p.n, d = 2 * n + 1;
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    F(j, j) = 1.0;
    F(j, 2 * n) = p.y(j);       // X_j = ∂x_j + y_j ∂t
    F(n + j, n + j) = 1.0;
    F(n + j, 2 * n) = -p.x(j);  // Y_j = ∂y_j − x_j ∂t
  }
  F(2 * n, 2 * n) = 1.0;
  return F;
}

Vec apply_J(const Vec& h) {
  const int n = static_cast<int>(h.size()) / 2;
  Vec r(2 * n);
  r.head(n) = -h.tail(n);
  r.tail(n) = h.head(n);
  return r;
}

HField hconst(const JetSpace& sp, const Vec& coeff) {
  HField f;
  f.reserve(2 * sp.n);
  for (int k = 0; k < 2 * sp.n; ++k) f.push_back(sp.constant(coeff[k]));
  return f;
}

HField hzero(const JetSpace& sp) { return hconst(sp, Vec::Zero(2 * sp.n)); }

HField operator+(const HField& a, const HField& b) {
  HField r = a;
  for (size_t k = 0; k < r.size(); ++k) r[k] += b[k];
  return r;
}

HField operator-(const HField& a, const HField& b) {
  HField r = a;
  for (size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
  return r;
}

HField operator-(const HField& a) {
  HField r = a;
  for (auto& j : r) j = -j;
  return r;
}

HField operator*(const Jet& s, const HField& a) {
  HField r;
  r.reserve(a.size());
  for (const auto& j : a) r.push_back(s * j);
  return r;
}

HField operator*(double s, const HField& a) {
  HField r = a;
  for (auto& j : r) j *= s;
  return r;
}

Jet ip(const HField& a, const HField& b) {
  Jet r = a[0] * b[0];
  for (size_t k = 1; k < a.size(); ++k) r += a[k] * b[k];
  return r;
}

Jet ip(const TField& a, const TField& b) { return ip(a.h, b.h) + a.tau * b.tau; }

HField applyJ(const HField& a) {
  const size_t n = a.size() / 2;
  HField r(a.size());
  for (size_t j = 0; j < n; ++j) {
    r[j] = -a[n + j];  // X-block gets −b
    r[n + j] = a[j];   // Y-block gets a
  }
  return r;
}

Jet dirderiv(const JetSpace& sp, const HField& X, const Jet& f) {
  Jet r = X[0] * sp.Z(0, f);
  for (int k = 1; k < 2 * sp.n; ++k) r += X[k] * sp.Z(k, f);
  return r;
}

Jet dirderiv(const JetSpace& sp, const TField& X, const Jet& f) {
  return dirderiv(sp, X.h, f) + X.tau * sp.T(f);
}

HField nabla(const JetSpace& sp, const HField& X, const HField& Y) {
  HField r;
  r.reserve(Y.size());
  for (const auto& yk : Y) r.push_back(dirderiv(sp, X, yk));
  return r;
}

HField nabla(const JetSpace& sp, const TField& X, const HField& Y) {
  HField r;
  r.reserve(Y.size());
  for (const auto& yk : Y) r.push_back(dirderiv(sp, X, yk));
  return r;
}

TField nabla(const JetSpace& sp, const TField& X, const TField& Y) {
  return TField{nabla(sp, X, Y.h), dirderiv(sp, X, Y.tau)};
}

TField nabla(const JetSpace& sp, const HField& X, const TField& Y) {
  return TField{nabla(sp, X, Y.h), dirderiv(sp, X, Y.tau)};
}

TField bracket(const JetSpace& sp, const TField& X, const TField& Y) {
  TField r = nabla(sp, X, Y);
  TField s = nabla(sp, Y, X);
  for (size_t k = 0; k < r.h.size(); ++k) r.h[k] -= s.h[k];
  r.tau -= s.tau;
  r.tau -= 2.0 * ip(applyJ(X.h), Y.h);
  return r;
}

TField as_tfield(const JetSpace& sp, const HField& X) {
  return TField{X, sp.constant(0.0)};
}

HField hgrad(const JetSpace& sp, const Jet& f) {
  HField r;
  r.reserve(2 * sp.n);
  for (int k = 0; k < 2 * sp.n; ++k) r.push_back(sp.Z(k, f));
  return r;
}

TField tgrad(const JetSpace& sp, const Jet& f) { return TField{hgrad(sp, f), sp.T(f)}; }

Jet gauge_jet(const JetSpace& sp, const Point& p0) {
  const int n = sp.n;
  // components of p0⁻¹·p as polynomial jets
  std::vector<Jet> q;
  q.reserve(2 * n + 1);
  for (int k = 0; k < 2 * n; ++k) q.push_back(sp.coord(k) - p0.c[k]);
  Jet tq = sp.coord(2 * n) - p0.t();
  for (int j = 0; j < n; ++j)
    tq += p0.x(j) * sp.coord(n + j) - p0.y(j) * sp.coord(j);
  Jet z2 = q[0] * q[0];
  for (int k = 1; k < 2 * n; ++k) z2 += q[k] * q[k];
  return pow(z2 * z2 + tq * tq, 0.25);
}

}  // namespace heisgeo
