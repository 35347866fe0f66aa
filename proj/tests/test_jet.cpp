// ============================================================================
// Jet algebra tests.
//
// The jet pipeline claims exact Taylor coefficients up to total degree 4 for
// composites of the supported primitives. Every coefficient is cross-checked
// here against an independent oracle: Richardson-extrapolated central finite
// differences of a plain-double evaluation of the same composite function.
// Algebraic identities (associativity, distributivity, f * 1/f = 1), order
// bookkeeping (partial() drops the valid order, over-order reads throw),
// branch handling of atan2, and compose() against a closed-form series round
// out the suite.
// ============================================================================

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "harness.hpp"
#include "heisgeo/jet.hpp"

using namespace heisgeo;
using testh::qoi;
using testh::record;

using Fn = std::function<double(const std::vector<double>&)>;

// ----------------------------------------------------------------------------
// Finite-difference oracle: nested central differences, one variable at a
// time, then one Richardson step (h, h/2) to cancel the O(h^2) term.
// ----------------------------------------------------------------------------
static double fd_nested(const Fn& f, std::vector<double> x, std::vector<int> e,
                        double h) {
  int v = -1;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0) {
      v = static_cast<int>(i);
      break;
    }
  if (v < 0) return f(x);
  e[v]--;
  std::vector<double> xp = x, xm = x;
  xp[v] += h;
  xm[v] -= h;
  return (fd_nested(f, xp, e, h) - fd_nested(f, xm, e, h)) / (2.0 * h);
}

static double fd_oracle(const Fn& f, const std::vector<double>& x,
                        const std::vector<int>& e) {
  const double h = 0.06;
  auto r1 = [&](double hh) {  // cancels the O(h^2) term
    return (4.0 * fd_nested(f, x, e, hh / 2) - fd_nested(f, x, e, hh)) / 3.0;
  };
  return (16.0 * r1(h / 2) - r1(h)) / 15.0;  // cancels O(h^4) as well
}

static void all_indices(int dims, int maxdeg, std::vector<std::vector<int>>& out) {
  std::vector<int> e(dims, 0);
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == dims) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[v] = k;
      rec(v + 1, left - k);
    }
    e[v] = 0;
  };
  rec(0, maxdeg);
}

static int total_deg(const std::vector<int>& e) {
  int s = 0;
  for (int k : e) s += k;
  return s;
}

// ----------------------------------------------------------------------------
// Composite test functions (double and jet versions kept textually parallel).
// ----------------------------------------------------------------------------
static double f3_double(const std::vector<double>& v) {
  const double a = v[0], b = v[1], c = v[2];
  return std::sin(a * b + 0.7) * std::exp(0.3 * c) +
         std::log(2.0 + a * a) / std::sqrt(4.0 + b) +
         std::atan2(c, 1.0 + a * a) +
         std::pow(1.3 + 0.5 * std::sin(b), 1.7) + (a - c) * (a - c) * (a - c);
}

static Jet f3_jet(const std::vector<Jet>& v) {
  const Jet &a = v[0], &b = v[1], &c = v[2];
  return sin(a * b + 0.7) * exp(0.3 * c) +
         log(2.0 + a * a) / sqrt(4.0 + b) + atan2(c, 1.0 + a * a) +
         pow(1.3 + 0.5 * sin(b), 1.7) + ipow(a - c, 3);
}

static double f5_double(const std::vector<double>& v) {
  const double a = v[0], b = v[1], c = v[2], d = v[3], e = v[4];
  return std::exp(0.2 * e) * std::sin(a + 0.5 * b) +
         std::sqrt(3.0 + c) * std::cos(d * b) + a * c * e +
         std::log(5.0 + d + 0.3 * a) + std::atan(b - d);
}

static Jet f5_jet(const std::vector<Jet>& v) {
  const Jet &a = v[0], &b = v[1], &c = v[2], &d = v[3], &e = v[4];
  return exp(0.2 * e) * sin(a + 0.5 * b) + sqrt(3.0 + c) * cos(d * b) +
         a * c * e + log(5.0 + d + 0.3 * a) + atan(b - d);
}

static std::vector<Jet> vars_at(const std::vector<double>& x) {
  std::vector<Jet> v;
  const int dims = static_cast<int>(x.size());
  for (int k = 0; k < dims; ++k) v.push_back(Jet::variable(dims, k, x[k]));
  return v;
}

// Largest |a-b| over all multi-indices of total degree <= deg, scaled by
// 1 + max magnitude per index.
static double max_coeff_diff(const Jet& a, const Jet& b, int deg) {
  std::vector<std::vector<int>> idx;
  all_indices(a.dims(), deg, idx);
  double worst = 0.0;
  for (const auto& e : idx) {
    double da = a.deriv(e), db = b.deriv(e);
    double scale = 1.0 + std::fmax(std::fabs(da), std::fabs(db));
    worst = std::fmax(worst, std::fabs(da - db) / scale);
  }
  return worst;
}

// ----------------------------------------------------------------------------
static void test_fd_cross_check(const char* tag, const Fn& fd_fn,
                                const std::function<Jet(const std::vector<Jet>&)>& jet_fn,
                                const std::vector<double>& x) {
  const int dims = static_cast<int>(x.size());
  Jet j = jet_fn(vars_at(x));
  std::vector<std::vector<int>> idx;
  all_indices(dims, kJetDeg, idx);

  double worst_by_order[kJetDeg + 1] = {0, 0, 0, 0, 0};
  int count_by_order[kJetDeg + 1] = {0, 0, 0, 0, 0};
  for (const auto& e : idx) {
    const int d = total_deg(e);
    const double want = fd_oracle(fd_fn, x, e);
    const double got = j.deriv(e);
    const double scale = 1.0 + std::fmax(std::fabs(want), std::fabs(got));
    worst_by_order[d] = std::fmax(worst_by_order[d], std::fabs(want - got) / scale);
    count_by_order[d]++;
  }
  for (int d = 0; d <= kJetDeg; ++d) {
    const double tol = d <= 3 ? 1e-6 : 1e-5;  // FD noise dominates at order 4
    char name[128];
    std::snprintf(name, sizeof(name), "%s: order-%d derivatives vs FD (%d indices)",
                  tag, d, count_by_order[d]);
    record(name, worst_by_order[d] < tol, testh::qoi2("max_scaled_err", worst_by_order[d], "tol", tol));
  }
}

static void test_algebra() {
  const std::vector<double> x = {0.4, -0.3, 0.8};
  auto v = vars_at(x);
  Jet A = sin(v[0] * v[1] + 0.7);
  Jet B = exp(0.3 * v[2]) + v[0];
  Jet C = 1.5 + v[1] * v[2];

  record("associativity (A*B)*C = A*(B*C)",
         max_coeff_diff((A * B) * C, A * (B * C), kJetDeg) < 1e-13);
  record("distributivity A*(B+C) = A*B + A*C",
         max_coeff_diff(A * (B + C), A * B + A * C, kJetDeg) < 1e-13);

  Jet f = 1.7 + sin(v[0]) * v[1] + v[2];
  Jet one = f * Jet::reciprocal(f);
  Jet exact_one = Jet::constant(3, 1.0);
  record("f * (1/f) = 1", max_coeff_diff(one, exact_one, kJetDeg) < 1e-13);

  // deriv(e) = coeff(e) * prod(e_v!)
  Jet g = f3_jet(v);
  std::vector<int> e = {2, 1, 0};
  record("deriv = coeff * factorials",
         testh::rel_err(g.deriv(e), g.coeff(e) * 2.0) < 1e-14);
}

static void test_partial_consistency() {
  const std::vector<double> x = {0.4, -0.3, 0.8};
  Jet g = f3_jet(vars_at(x));
  std::vector<std::vector<int>> idx;
  all_indices(3, kJetDeg - 1, idx);
  double worst = 0.0;
  for (int vtest = 0; vtest < 3; ++vtest) {
    Jet gp = g.partial(vtest);
    for (const auto& e : idx) {
      std::vector<int> e2 = e;
      e2[vtest]++;
      double a = gp.deriv(e), b = g.deriv(e2);
      worst = std::fmax(worst, std::fabs(a - b) / (1.0 + std::fabs(b)));
    }
  }
  record("partial(v).deriv(e) = deriv(e + 1_v)", worst < 1e-12,
         qoi("max_scaled_err", worst));
}

static void test_order_bookkeeping() {
  const std::vector<double> x = {0.4, -0.3, 0.8};
  Jet g = f3_jet(vars_at(x));
  record("fresh jet has order 4", g.order() == kJetDeg);
  record("partial drops order", g.partial(0).order() == kJetDeg - 1);

  Jet g0 = g.partial(0).partial(1).partial(2).partial(0);
  record("four partials leave order 0", g0.order() == 0);
  bool threw = false;
  try {
    (void)g0.deriv({1, 0, 0});
  } catch (const JetOrderError&) {
    threw = true;
  }
  record("over-order read throws JetOrderError", threw);

  Jet low = Jet::variable(3, 0, 1.0, 2);
  threw = false;
  try {
    (void)low.coeff({3, 0, 0});
  } catch (const JetOrderError&) {
    threw = true;
  }
  record("order-2 jet rejects degree-3 coefficient", threw);

  Jet prod = low * g;
  record("binary op propagates min order", prod.order() == 2);
}

static void test_atan2_branches() {
  struct Case {
    double y, x;
  } cases[] = {{0.7, 1.1},  {0.7, -1.1}, {-0.7, -1.1}, {-0.7, 1.1},
               {0.9, 0.1},  {-0.9, 0.1}, {0.9, -0.1},  {-0.9, -0.1}};
  double worst_v = 0.0, worst_d = 0.0;
  for (const auto& cs : cases) {
    Jet y = Jet::variable(2, 0, cs.y);
    Jet x = Jet::variable(2, 1, cs.x);
    Jet a = atan2(y, x);
    const double r2 = cs.x * cs.x + cs.y * cs.y;
    worst_v = std::fmax(worst_v, std::fabs(a.value() - std::atan2(cs.y, cs.x)));
    worst_d = std::fmax(worst_d, std::fabs(a.deriv({1, 0}) - cs.x / r2));
    worst_d = std::fmax(worst_d, std::fabs(a.deriv({0, 1}) + cs.y / r2));
  }
  record("atan2 value in all quadrants", worst_v < 1e-15, qoi("max_err", worst_v));
  record("atan2 gradient (x/r^2, -y/r^2)", worst_d < 1e-12, qoi("max_err", worst_d));

  bool threw = false;
  try {
    (void)atan2(Jet::constant(2, 0.0), Jet::constant(2, 0.0));
  } catch (const JetDomainError&) {
    threw = true;
  }
  record("atan2 at the origin throws JetDomainError", threw);
}

static void test_compose() {
  Jet x0 = Jet::variable(2, 0, 0.6);
  Jet x1 = Jet::variable(2, 1, -0.2);
  Jet f = 0.3 + x0 * x0 + 0.5 * x1;
  const double a = f.value();
  const double gd[kJetDeg + 1] = {std::cos(a), -std::sin(a), -std::cos(a),
                                  std::sin(a), std::cos(a)};
  record("compose with cosine series = cos(f)",
         max_coeff_diff(f.compose(gd, kJetDeg + 1), cos(f), kJetDeg) < 1e-14);
}

static void test_ipow() {
  Jet x0 = Jet::variable(2, 0, -0.4);  // negative base
  Jet f = x0 + 0.3 * Jet::variable(2, 1, 0.1);
  record("ipow(f,3) = f*f*f on negative values",
         max_coeff_diff(ipow(f, 3), f * f * f, kJetDeg) < 1e-13);
  record("ipow(f,0) = 1",
         max_coeff_diff(ipow(f, 0), Jet::constant(2, 1.0), kJetDeg) < 1e-15);
  record("ipow(f,-2) = 1/(f*f)",
         max_coeff_diff(ipow(f, -2), Jet::reciprocal(f * f), kJetDeg) < 1e-12);

  Jet g = 1.6 + Jet::variable(2, 0, 0.2);
  record("pow(g,3.0) = ipow(g,3) for positive base",
         max_coeff_diff(pow(g, 3.0), ipow(g, 3), kJetDeg) < 1e-12);
}

static void test_domain_errors() {
  auto expect_domain = [](const char* name, const std::function<void()>& fn) {
    bool threw = false;
    try {
      fn();
    } catch (const JetDomainError&) {
      threw = true;
    }
    record(name, threw);
  };
  expect_domain("sqrt of negative throws", [] { (void)sqrt(Jet::constant(2, -1.0)); });
  expect_domain("log of negative throws", [] { (void)log(Jet::constant(2, -1.0)); });
  expect_domain("reciprocal of zero throws",
                [] { (void)Jet::reciprocal(Jet::constant(2, 0.0)); });
}

int main() {
  std::printf("== jet: FD oracle cross-checks ==\n");
  test_fd_cross_check("d3", f3_double, f3_jet, {0.4, -0.3, 0.8});
  test_fd_cross_check("d5", f5_double, f5_jet, {0.3, -0.4, 0.5, 0.7, -0.2});

  std::printf("\n== jet: algebra ==\n");
  test_algebra();
  test_partial_consistency();
  test_order_bookkeeping();

  std::printf("\n== jet: primitives ==\n");
  test_atan2_branches();
  test_compose();
  test_ipow();
  test_domain_errors();

  return testh::summary("test_jet");
}
