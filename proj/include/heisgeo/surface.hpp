#pragma once
// Hypersurfaces as level sets {u = 0} of expressions over the ambient
// coordinates. Expressions form a small closed AST with a round-trippable
// s-expression text format, and evaluate either to plain doubles or to jets.

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "heisgeo/heis.hpp"

namespace heisgeo {

struct SurfaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rotational catenoid profile t_E: value by quadrature, derivatives in closed
// form from t_E'(s) = E·s / sqrt(s^{4n−2} − E²), domain s > E^{1/(2n−1)}.
struct CatenoidProfile {
  int n = 2;
  double E = 1.0;

  double throat() const { return std::pow(E, 1.0 / (2 * n - 1)); }
  double value(double s) const;                 // t_E(s), adaptive quadrature
  double deriv(double s) const;                 // t_E'(s)
  std::array<double, 5> derivs(double s) const; // {t_E, t_E', .., t_E''''}
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Op {
    kConst, kCoord,            // leaves (coord: axis 0=x, 1=y, 2=t, index idx)
    kAdd, kSub, kMul, kDiv,    // binary
    kNeg, kSqrt, kSin, kCos,   // unary
    kPow,                      // a ^ value (numeric exponent)
    kAtan2,                    // atan2(a, b)
    kProfile                   // catenoid profile applied to a
  };
  Op op;
  double value = 0.0;
  int axis = -1, idx = 0;
  ExprPtr a, b;
  std::shared_ptr<const CatenoidProfile> profile;
};

ExprPtr ex_const(double v);
ExprPtr ex_x(int j);  // 1-based index in the text format, 0-based here
ExprPtr ex_y(int j);
ExprPtr ex_t();
ExprPtr ex_add(ExprPtr a, ExprPtr b);
ExprPtr ex_sub(ExprPtr a, ExprPtr b);
ExprPtr ex_mul(ExprPtr a, ExprPtr b);
ExprPtr ex_div(ExprPtr a, ExprPtr b);
ExprPtr ex_neg(ExprPtr a);
ExprPtr ex_pow(ExprPtr a, double p);
ExprPtr ex_sqrt(ExprPtr a);
ExprPtr ex_sin(ExprPtr a);
ExprPtr ex_cos(ExprPtr a);
ExprPtr ex_atan2(ExprPtr a, ExprPtr b);
ExprPtr ex_profile(const CatenoidProfile& prof, ExprPtr a);

double eval_value(const Expr& e, int n, const Vec& coords);
Jet eval_jet(const Expr& e, const JetSpace& sp);

std::string print_expr(const Expr& e);
ExprPtr parse_expr(const std::string& text);

// A hypersurface {u = 0}. The horizontal normal ν points toward
// {orientation · u > 0}; evaluation applies the sign.
struct SurfaceDef {
  std::string id = "user";
  int n = 1;
  int orientation = +1;
  ExprPtr u;

  double value(const Vec& coords) const {
    return orientation * eval_value(*u, n, coords);
  }
  Jet jet(const JetSpace& sp) const {
    Jet j = eval_jet(*u, sp);
    return orientation < 0 ? -j : j;
  }
  // Euclidean coordinate gradient, for Newton projection and the σ_H density.
  Vec egrad(const Vec& coords) const;
};

// Text form:
//   surface <id>
//   n <int>
//   orientation <±1>
//   u <s-expression>
std::string print_surface(const SurfaceDef& s);
SurfaceDef parse_surface(const std::string& text);

}  // namespace heisgeo
