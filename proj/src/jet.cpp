#include "heisgeo/jet.hpp"

#include <algorithm>
#include <memory>

namespace heisgeo {
namespace {

constexpr double kFact[kJetDeg + 1] = {1.0, 1.0, 2.0, 6.0, 24.0};

// Enumerate all exponent vectors of total degree == g in lexicographic order.
void enumerate_degree(int dims, int g, std::vector<int>& e, int pos, int left,
                      std::vector<uint8_t>& out) {
  if (pos == dims - 1) {
    e[pos] = left;
    for (int v = 0; v < dims; ++v) out.push_back(static_cast<uint8_t>(e[v]));
    return;
  }
  for (int k = left; k >= 0; --k) {
    e[pos] = k;
    enumerate_degree(dims, g, e, pos + 1, left - k, out);
  }
}

JetTables build_tables(int dims) {
  if (dims < 1 || dims > 24) throw JetError("jet dims out of supported range");
  JetTables t;
  t.dims = dims;
  std::vector<int> scratch(dims, 0);
  t.deg_end[0] = 0;
  for (int g = 0; g <= kJetDeg; ++g) {
    enumerate_degree(dims, g, scratch, 0, g, t.expo);
    t.deg_end[g + 1] = static_cast<int>(t.expo.size()) / dims;
  }
  // deg_end[g] should mean "monomials of degree <= g-1"; shift so that
  // deg_end[g] = first index past degree g.
  // (enumerate filled cumulative ends already: deg_end[g+1] = end of degree g.)
  t.count = static_cast<int>(t.expo.size()) / dims;
  t.degree.resize(t.count);
  for (int i = 0; i < t.count; ++i) {
    int d = 0;
    for (int v = 0; v < dims; ++v) d += t.expo[i * dims + v];
    t.degree[i] = d;
  }
  t.lookup.reserve(t.count * 2);
  for (int i = 0; i < t.count; ++i) t.lookup.emplace(t.pack(&t.expo[i * dims]), i);

  t.prod.assign(static_cast<size_t>(t.count) * t.count, -1);
  std::vector<uint8_t> sum(dims);
  for (int i = 0; i < t.count; ++i) {
    for (int j = 0; j < t.count; ++j) {
      if (t.degree[i] + t.degree[j] > kJetDeg) continue;
      for (int v = 0; v < dims; ++v) sum[v] = t.expo[i * dims + v] + t.expo[j * dims + v];
      t.prod[static_cast<size_t>(i) * t.count + j] = t.lookup.at(t.pack(sum.data()));
    }
  }
  t.dshift.assign(static_cast<size_t>(t.count) * dims, -1);
  for (int i = 0; i < t.count; ++i) {
    for (int v = 0; v < dims; ++v) {
      if (t.expo[i * dims + v] == 0) continue;
      for (int w = 0; w < dims; ++w) sum[w] = t.expo[i * dims + w];
      sum[v] -= 1;
      t.dshift[static_cast<size_t>(i) * dims + v] = t.lookup.at(t.pack(sum.data()));
    }
  }
  return t;
}

}  // namespace

int JetTables::index_of(const std::vector<int>& e) const {
  if (static_cast<int>(e.size()) != dims) throw JetError("multi-index dims mismatch");
  std::vector<uint8_t> b(dims);
  int deg = 0;
  for (int v = 0; v < dims; ++v) {
    if (e[v] < 0) throw JetError("negative exponent");
    deg += e[v];
    b[v] = static_cast<uint8_t>(e[v]);
  }
  if (deg > kJetDeg) throw JetOrderError("multi-index beyond truncation degree");
  return lookup.at(pack(b.data()));
}

const JetTables& jet_tables(int dims) {
  static std::mutex mu;
  static std::unordered_map<int, std::unique_ptr<JetTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(dims);
  if (it == cache.end()) {
    it = cache.emplace(dims, std::make_unique<JetTables>(build_tables(dims))).first;
  }
  return *it->second;
}

void Jet::check_pair(const Jet& a, const Jet& b) {
  if (a.tab_ == nullptr || b.tab_ == nullptr) throw JetError("operation on empty jet");
  if (a.tab_ != b.tab_) throw JetError("jet dims mismatch");
}

double Jet::coeff(const std::vector<int>& e) const {
  if (!tab_) throw JetError("empty jet");
  int idx = tab_->index_of(e);
  if (tab_->degree[idx] > ord_)
    throw JetOrderError("missing jet order: coefficient beyond valid order");
  return c_[idx];
}

double Jet::deriv(const std::vector<int>& e) const {
  if (!tab_) throw JetError("empty jet");
  int idx = tab_->index_of(e);
  if (tab_->degree[idx] > ord_)
    throw JetOrderError("missing jet order: derivative beyond valid order");
  double f = 1.0;
  for (int v = 0; v < tab_->dims; ++v) f *= kFact[tab_->expo[idx * tab_->dims + v]];
  return c_[idx] * f;
}

Jet Jet::partial(int v) const {
  if (!tab_) throw JetError("empty jet");
  if (v < 0 || v >= tab_->dims) throw JetError("partial: variable out of range");
  if (ord_ <= 0) throw JetOrderError("missing jet order: derivative of an order-0 jet");
  Jet r(tab_->dims, ord_ - 1);
  const int dims = tab_->dims;
  for (int i = 1; i < tab_->deg_end[ord_ + 1]; ++i) {  // index 0 is the constant
    int ev = tab_->expo[i * dims + v];
    if (ev == 0) continue;
    r.c_[tab_->dshift[static_cast<size_t>(i) * dims + v]] += ev * c_[i];
  }
  return r;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& x : r.c_) x = -x;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  check_pair(*this, o);
  ord_ = std::min(ord_, o.ord_);
  int end = tab_->deg_end[ord_ + 1];
  for (int i = 0; i < end; ++i) c_[i] += o.c_[i];
  for (int i = end; i < tab_->count; ++i) c_[i] = 0.0;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_pair(*this, o);
  ord_ = std::min(ord_, o.ord_);
  int end = tab_->deg_end[ord_ + 1];
  for (int i = 0; i < end; ++i) c_[i] -= o.c_[i];
  for (int i = end; i < tab_->count; ++i) c_[i] = 0.0;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet Jet::mul(const Jet& a, const Jet& b) {
  check_pair(a, b);
  const JetTables& t = *a.tab_;
  int m = std::min(a.ord_, b.ord_);
  Jet r(t.dims, m);
  const int32_t* prod = t.prod.data();
  for (int i = 0; i < t.deg_end[m + 1]; ++i) {
    double ai = a.c_[i];
    if (ai == 0.0) continue;
    int jend = t.deg_end[m - t.degree[i] + 1];
    const int32_t* row = prod + static_cast<size_t>(i) * t.count;
    for (int j = 0; j < jend; ++j) r.c_[row[j]] += ai * b.c_[j];
  }
  return r;
}

Jet Jet::compose(const double* gd, int count) const {
  if (!tab_) throw JetError("empty jet");
  if (count < ord_ + 1) throw JetOrderError("compose: not enough derivative values");
  Jet w = *this;
  w.c_[0] = 0.0;
  Jet r = Jet::constant(tab_->dims, gd[ord_] / kFact[ord_], ord_);
  for (int k = ord_ - 1; k >= 0; --k) {
    r = mul(r, w);
    r.c_[0] += gd[k] / kFact[k];
  }
  return r;
}

Jet Jet::reciprocal(const Jet& a) {
  if (!a.tab_) throw JetError("empty jet");
  double v = a.value();
  if (v == 0.0) throw JetDomainError("jet division by zero");
  double gd[kJetDeg + 1];
  double p = 1.0 / v;
  for (int k = 0; k <= a.ord_; ++k) {
    gd[k] = (k % 2 ? -1.0 : 1.0) * kFact[k] * p;  // d^k/dx^k (1/x) = (-1)^k k! x^{-k-1}
    p /= v;
  }
  // kFact only covers 0..4; that's all orders we support.
  return a.compose(gd, a.ord_ + 1);
}

Jet sqrt(const Jet& f) {
  double v = f.value();
  if (v <= 0.0) throw JetDomainError("jet sqrt of non-positive value");
  double s = std::sqrt(v);
  double gd[kJetDeg + 1] = {s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v),
                            -0.9375 / (s * v * v * v)};
  return f.compose(gd, kJetDeg + 1);
}

Jet pow(const Jet& f, double p) {
  double v = f.value();
  if (v <= 0.0) throw JetDomainError("jet pow of non-positive base");
  double gd[kJetDeg + 1];
  double coef = 1.0;
  for (int k = 0; k <= kJetDeg; ++k) {
    gd[k] = coef * std::pow(v, p - k);
    coef *= (p - k);
  }
  return f.compose(gd, kJetDeg + 1);
}

Jet ipow(Jet f, int k) {
  if (k < 0) return Jet::reciprocal(ipow(std::move(f), -k));
  Jet r = Jet::constant(f.dims(), 1.0, f.order());
  while (k > 0) {
    if (k & 1) r = r * f;
    if (k >>= 1) f = f * f;
  }
  return r;
}

Jet exp(const Jet& f) {
  double e = std::exp(f.value());
  double gd[kJetDeg + 1] = {e, e, e, e, e};
  return f.compose(gd, kJetDeg + 1);
}

Jet log(const Jet& f) {
  double v = f.value();
  if (v <= 0.0) throw JetDomainError("jet log of non-positive value");
  double gd[kJetDeg + 1] = {std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v),
                            -6.0 / (v * v * v * v)};
  return f.compose(gd, kJetDeg + 1);
}

Jet sin(const Jet& f) {
  double s = std::sin(f.value()), c = std::cos(f.value());
  double gd[kJetDeg + 1] = {s, c, -s, -c, s};
  return f.compose(gd, kJetDeg + 1);
}

Jet cos(const Jet& f) {
  double s = std::sin(f.value()), c = std::cos(f.value());
  double gd[kJetDeg + 1] = {c, -s, -c, s, c};
  return f.compose(gd, kJetDeg + 1);
}

Jet atan(const Jet& f) {
  double x = f.value();
  double d = 1.0 + x * x;
  double gd[kJetDeg + 1] = {std::atan(x), 1.0 / d, -2.0 * x / (d * d),
                            (6.0 * x * x - 2.0) / (d * d * d),
                            (24.0 * x - 24.0 * x * x * x) / (d * d * d * d)};
  return f.compose(gd, kJetDeg + 1);
}

Jet atan2(const Jet& y, const Jet& x) {
  const double xv = x.value(), yv = y.value();
  if (xv == 0.0 && yv == 0.0) throw JetDomainError("jet atan2 at the origin");
  constexpr double kPi = 3.14159265358979323846;
  // Pick the branch formula whose denominator stays away from zero.
  if (std::abs(xv) >= std::abs(yv)) {
    double off = xv > 0.0 ? 0.0 : (yv >= 0.0 ? kPi : -kPi);
    return atan(y / x) + off;
  }
  double off = yv > 0.0 ? kPi / 2 : -kPi / 2;
  return off - atan(x / y);
}

}  // namespace heisgeo
