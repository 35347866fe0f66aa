#pragma once
// Truncated multivariate Taylor arithmetic ("jets").
//
// A Jet holds the Taylor coefficients, at a base point, of a smooth function of
// d variables, truncated at total degree 4. Arithmetic combines coefficients
// exactly (no finite differences), so a Jet built from other Jets carries the
// exact derivatives of the composite function. Each Jet tracks the order up to
// which its coefficients are trustworthy: binary operations propagate the
// minimum, a formal partial derivative lowers it by one, and reading a
// derivative beyond the valid order throws instead of silently truncating.

#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace heisgeo {

inline constexpr int kJetDeg = 4;  // truncation degree of the algebra

struct JetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Requested derivative order not represented in the operand.
struct JetOrderError : JetError {
  using JetError::JetError;
};
// Evaluation outside a function's domain (sqrt of <=0, division by zero, ...).
struct JetDomainError : JetError {
  using JetError::JetError;
};

// Monomial bookkeeping for a fixed variable count, built once and shared.
struct JetTables {
  int dims = 0;
  int count = 0;                  // monomials of total degree <= kJetDeg
  std::vector<uint8_t> expo;      // count x dims exponent matrix
  std::vector<int> degree;        // total degree per monomial
  std::array<int, kJetDeg + 2> deg_end{};  // degree <= g lives in [0, deg_end[g])
  std::vector<int32_t> prod;      // count x count: index of monomial product
  std::vector<int32_t> dshift;    // count x dims: index after removing one power of v
  std::unordered_map<uint64_t, int32_t> lookup;  // packed exponents -> index

  uint64_t pack(const uint8_t* e) const {
    uint64_t k = 0;
    for (int v = dims - 1; v >= 0; --v) k = k * (kJetDeg + 1) + e[v];
    return k;
  }
  int index_of(const std::vector<int>& e) const;
};

const JetTables& jet_tables(int dims);

class Jet {
 public:
  Jet() = default;

  static Jet constant(int dims, double v, int order = kJetDeg) {
    Jet j(dims, order);
    j.c_[0] = v;
    return j;
  }
  // The coordinate function x_v, expanded at x_v = x0.
  static Jet variable(int dims, int v, double x0, int order = kJetDeg) {
    Jet j(dims, order);
    j.c_[0] = x0;
    if (order >= 1) j.c_[1 + v] = 1.0;  // degree-1 monomials sit right after the constant
    return j;
  }

  bool empty() const { return tab_ == nullptr; }
  int dims() const { return tab_ ? tab_->dims : 0; }
  int order() const { return ord_; }
  double value() const { return c_[0]; }

  // Taylor coefficient / derivative for a multi-index. Throws JetOrderError if
  // the index exceeds the valid order.
  double coeff(const std::vector<int>& e) const;
  double deriv(const std::vector<int>& e) const;

  // Formal partial derivative; valid order drops by one.
  Jet partial(int v) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double s) { c_[0] += s; return *this; }
  Jet& operator-=(double s) { c_[0] -= s; return *this; }
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
  friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
  friend Jet operator+(Jet a, double s) { a += s; return a; }
  friend Jet operator+(double s, Jet a) { a += s; return a; }
  friend Jet operator-(Jet a, double s) { a -= s; return a; }
  friend Jet operator-(double s, const Jet& a) { Jet r = -a; r += s; return r; }
  friend Jet operator*(Jet a, double s) { a *= s; return a; }
  friend Jet operator*(double s, Jet a) { a *= s; return a; }
  friend Jet operator/(Jet a, double s) { a *= 1.0 / s; return a; }
  friend Jet operator*(const Jet& a, const Jet& b) { return mul(a, b); }
  friend Jet operator/(const Jet& a, const Jet& b) { return mul(a, reciprocal(b)); }
  friend Jet operator/(double s, const Jet& b) { return s * reciprocal(b); }

  static Jet mul(const Jet& a, const Jet& b);
  static Jet reciprocal(const Jet& a);

  // g(f) for univariate g with derivative values g, g', ..., g^(order) at
  // f.value(). gd must hold at least order()+1 entries.
  Jet compose(const double* gd, int count) const;

 private:
  Jet(int dims, int order) : tab_(&jet_tables(dims)), ord_(order), c_(tab_->count, 0.0) {
    if (order < 0 || order > kJetDeg) throw JetOrderError("jet order out of range");
  }
  static void check_pair(const Jet& a, const Jet& b);

  const JetTables* tab_ = nullptr;
  int ord_ = -1;
  std::vector<double> c_;

  friend Jet sqrt(const Jet&);
  friend Jet pow(const Jet&, double);
  friend Jet exp(const Jet&);
  friend Jet log(const Jet&);
  friend Jet sin(const Jet&);
  friend Jet cos(const Jet&);
  friend Jet atan(const Jet&);
};

Jet sqrt(const Jet& f);
Jet pow(const Jet& f, double p);   // requires f.value() > 0
Jet ipow(Jet f, int k);            // integer power by repeated squaring, any value
Jet exp(const Jet& f);
Jet log(const Jet& f);
Jet sin(const Jet& f);
Jet cos(const Jet& f);
Jet atan(const Jet& f);
Jet atan2(const Jet& y, const Jet& x);  // branch chosen from the values

}  // namespace heisgeo
