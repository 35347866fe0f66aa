#include "heisgeo/surface.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace heisgeo {

// --- catenoid profile --------------------------------------------------------

double CatenoidProfile::value(double s) const {
  const double a = throat();
  if (!(s > a)) throw JetDomainError("catenoid profile evaluated at or below the throat");
  // τ = a + σ² removes the inverse-square-root endpoint singularity at τ = a,
  // and the factorization τ^m − a^m = σ² Σ_j τ^j a^{m−1−j} cancels the σ
  // analytically, so the integrand is regular (no 0/0) arbitrarily close to
  // the throat.
  const int m = 4 * n - 2;
  auto f = [&](double sig) {
    const double tau = a + sig * sig;
    double geom = 0.0, tp = 1.0;
    for (int j = 0; j < m; ++j) {
      geom += tp * std::pow(a, m - 1 - j);
      tp *= tau;
    }
    return 2.0 * E * tau / std::sqrt(geom);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, 0.0, std::sqrt(s - a), 12, 1e-14);
}

double CatenoidProfile::deriv(double s) const {
  const int m = 4 * n - 2;
  double den = std::pow(s, m) - E * E;
  if (!(den > 0.0)) throw JetDomainError("catenoid profile derivative at or below the throat");
  return E * s / std::sqrt(den);
}

std::array<double, 5> CatenoidProfile::derivs(double s) const {
  std::array<double, 5> d{};
  d[0] = value(s);
  // Differentiate the closed-form t_E' with univariate jets: exact derivatives
  // without hand-expanded formulas.
  Jet sj = Jet::variable(1, 0, s, 3);
  Jet dp = (E * sj) / sqrt(ipow(sj, 4 * n - 2) - E * E);
  for (int k = 0; k <= 3; ++k) d[k + 1] = dp.deriv(std::vector<int>{k});
  return d;
}

// --- AST builders -------------------------------------------------------------

namespace {
ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
}  // namespace

ExprPtr ex_const(double v) {
  Expr e{};
  e.op = Expr::Op::kConst;
  e.value = v;
  return make(std::move(e));
}
ExprPtr ex_x(int j) {
  Expr e{};
  e.op = Expr::Op::kCoord;
  e.axis = 0;
  e.idx = j;
  return make(std::move(e));
}
ExprPtr ex_y(int j) {
  Expr e{};
  e.op = Expr::Op::kCoord;
  e.axis = 1;
  e.idx = j;
  return make(std::move(e));
}
ExprPtr ex_t() {
  Expr e{};
  e.op = Expr::Op::kCoord;
  e.axis = 2;
  return make(std::move(e));
}

namespace {
ExprPtr binary(Expr::Op op, ExprPtr a, ExprPtr b) {
  Expr e{};
  e.op = op;
  e.a = std::move(a);
  e.b = std::move(b);
  return make(std::move(e));
}
ExprPtr unary(Expr::Op op, ExprPtr a) {
  Expr e{};
  e.op = op;
  e.a = std::move(a);
  return make(std::move(e));
}
}  // namespace

ExprPtr ex_add(ExprPtr a, ExprPtr b) { return binary(Expr::Op::kAdd, std::move(a), std::move(b)); }
ExprPtr ex_sub(ExprPtr a, ExprPtr b) { return binary(Expr::Op::kSub, std::move(a), std::move(b)); }
ExprPtr ex_mul(ExprPtr a, ExprPtr b) { return binary(Expr::Op::kMul, std::move(a), std::move(b)); }
ExprPtr ex_div(ExprPtr a, ExprPtr b) { return binary(Expr::Op::kDiv, std::move(a), std::move(b)); }
ExprPtr ex_neg(ExprPtr a) { return unary(Expr::Op::kNeg, std::move(a)); }
ExprPtr ex_sqrt(ExprPtr a) { return unary(Expr::Op::kSqrt, std::move(a)); }
ExprPtr ex_sin(ExprPtr a) { return unary(Expr::Op::kSin, std::move(a)); }
ExprPtr ex_cos(ExprPtr a) { return unary(Expr::Op::kCos, std::move(a)); }
ExprPtr ex_atan2(ExprPtr a, ExprPtr b) {
  return binary(Expr::Op::kAtan2, std::move(a), std::move(b));
}
ExprPtr ex_pow(ExprPtr a, double p) {
  Expr e{};
  e.op = Expr::Op::kPow;
  e.a = std::move(a);
  e.value = p;
  return make(std::move(e));
}
ExprPtr ex_profile(const CatenoidProfile& prof, ExprPtr a) {
  Expr e{};
  e.op = Expr::Op::kProfile;
  e.a = std::move(a);
  e.profile = std::make_shared<const CatenoidProfile>(prof);
  return make(std::move(e));
}

// --- evaluation ---------------------------------------------------------------

namespace {
int flat_coord(const Expr& e, int n) {
  if (e.axis == 2) return 2 * n;
  if (e.idx < 0 || e.idx >= n) throw SurfaceError("coordinate index out of range for this n");
  return e.axis == 0 ? e.idx : n + e.idx;
}
bool integral_exponent(double p, int& k) {
  double r = std::round(p);
  if (std::abs(p - r) < 1e-12 && std::abs(r) <= 12.0) {
    k = static_cast<int>(r);
    return true;
  }
  return false;
}
}  // namespace

double eval_value(const Expr& e, int n, const Vec& coords) {
  using Op = Expr::Op;
  switch (e.op) {
    case Op::kConst: return e.value;
    case Op::kCoord: return coords[flat_coord(e, n)];
    case Op::kAdd: return eval_value(*e.a, n, coords) + eval_value(*e.b, n, coords);
    case Op::kSub: return eval_value(*e.a, n, coords) - eval_value(*e.b, n, coords);
    case Op::kMul: return eval_value(*e.a, n, coords) * eval_value(*e.b, n, coords);
    case Op::kDiv: {
      double d = eval_value(*e.b, n, coords);
      if (d == 0.0) throw JetDomainError("division by zero in surface expression");
      return eval_value(*e.a, n, coords) / d;
    }
    case Op::kNeg: return -eval_value(*e.a, n, coords);
    case Op::kSqrt: {
      double v = eval_value(*e.a, n, coords);
      if (v < 0.0) throw JetDomainError("sqrt of negative value in surface expression");
      return std::sqrt(v);
    }
    case Op::kSin: return std::sin(eval_value(*e.a, n, coords));
    case Op::kCos: return std::cos(eval_value(*e.a, n, coords));
    case Op::kPow: return std::pow(eval_value(*e.a, n, coords), e.value);
    case Op::kAtan2:
      return std::atan2(eval_value(*e.a, n, coords), eval_value(*e.b, n, coords));
    case Op::kProfile: return e.profile->value(eval_value(*e.a, n, coords));
  }
  throw SurfaceError("corrupt expression");
}

Jet eval_jet(const Expr& e, const JetSpace& sp) {
  using Op = Expr::Op;
  switch (e.op) {
    case Op::kConst: return sp.constant(e.value);
    case Op::kCoord: return sp.coord(flat_coord(e, sp.n));
    case Op::kAdd: return eval_jet(*e.a, sp) + eval_jet(*e.b, sp);
    case Op::kSub: return eval_jet(*e.a, sp) - eval_jet(*e.b, sp);
    case Op::kMul: return eval_jet(*e.a, sp) * eval_jet(*e.b, sp);
    case Op::kDiv: return eval_jet(*e.a, sp) / eval_jet(*e.b, sp);
    case Op::kNeg: return -eval_jet(*e.a, sp);
    case Op::kSqrt: return sqrt(eval_jet(*e.a, sp));
    case Op::kSin: return sin(eval_jet(*e.a, sp));
    case Op::kCos: return cos(eval_jet(*e.a, sp));
    case Op::kPow: {
      int k;
      Jet base = eval_jet(*e.a, sp);
      if (integral_exponent(e.value, k)) return ipow(std::move(base), k);
      return pow(base, e.value);
    }
    case Op::kAtan2: return atan2(eval_jet(*e.a, sp), eval_jet(*e.b, sp));
    case Op::kProfile: {
      Jet arg = eval_jet(*e.a, sp);
      auto d = e.profile->derivs(arg.value());
      return arg.compose(d.data(), 5);
    }
  }
  throw SurfaceError("corrupt expression");
}

Vec SurfaceDef::egrad(const Vec& coords) const {
  Point p{n, coords};
  JetSpace sp = JetSpace::at(p, 1);
  Jet j = jet(sp);
  Vec g(2 * n + 1);
  for (int k = 0; k < 2 * n + 1; ++k) g[k] = j.partial(k).value();
  return g;
}

// --- printing -----------------------------------------------------------------

namespace {
std::string num_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string print_expr(const Expr& e) {
  using Op = Expr::Op;
  switch (e.op) {
    case Op::kConst: return num_str(e.value);
    case Op::kCoord:
      if (e.axis == 2) return "t";
      return (e.axis == 0 ? "x" : "y") + std::to_string(e.idx + 1);
    case Op::kAdd: return "(+ " + print_expr(*e.a) + " " + print_expr(*e.b) + ")";
    case Op::kSub: return "(- " + print_expr(*e.a) + " " + print_expr(*e.b) + ")";
    case Op::kMul: return "(* " + print_expr(*e.a) + " " + print_expr(*e.b) + ")";
    case Op::kDiv: return "(/ " + print_expr(*e.a) + " " + print_expr(*e.b) + ")";
    case Op::kNeg: return "(- " + print_expr(*e.a) + ")";
    case Op::kSqrt: return "(sqrt " + print_expr(*e.a) + ")";
    case Op::kSin: return "(sin " + print_expr(*e.a) + ")";
    case Op::kCos: return "(cos " + print_expr(*e.a) + ")";
    case Op::kPow: return "(^ " + print_expr(*e.a) + " " + num_str(e.value) + ")";
    case Op::kAtan2: return "(atan2 " + print_expr(*e.a) + " " + print_expr(*e.b) + ")";
    case Op::kProfile:
      return "(tE " + std::to_string(e.profile->n) + " " + num_str(e.profile->E) + " " +
             print_expr(*e.a) + ")";
  }
  throw SurfaceError("corrupt expression");
}

// --- parsing ------------------------------------------------------------------

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  std::string token() {
    skip_ws();
    if (pos >= s.size()) throw SurfaceError("unexpected end of expression");
    char c = s[pos];
    if (c == '(' || c == ')') {
      ++pos;
      return std::string(1, c);
    }
    size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != '(' && s[pos] != ')')
      ++pos;
    return s.substr(start, pos - start);
  }
};

bool parse_number(const std::string& tok, double& out) {
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end && *end == '\0' && end != tok.c_str();
}

ExprPtr parse_atom(const std::string& tok) {
  double v;
  if (parse_number(tok, v)) return ex_const(v);
  if (tok == "t") return ex_t();
  if ((tok[0] == 'x' || tok[0] == 'y') && tok.size() > 1) {
    int j = 0;
    for (size_t i = 1; i < tok.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(tok[i])))
        throw SurfaceError("unknown token '" + tok + "'");
      j = j * 10 + (tok[i] - '0');
    }
    if (j < 1) throw SurfaceError("coordinate indices are 1-based");
    return tok[0] == 'x' ? ex_x(j - 1) : ex_y(j - 1);
  }
  throw SurfaceError("unknown token '" + tok + "'");
}

ExprPtr parse_rec(Lexer& lx) {
  std::string tok = lx.token();
  if (tok != "(") return parse_atom(tok);

  std::string head = lx.token();
  std::vector<ExprPtr> args;
  std::optional<double> tail_number;  // for (^ a p) and (tE n E a) numerics

  if (head == "tE") {
    double pn, pE;
    if (!parse_number(lx.token(), pn) || !parse_number(lx.token(), pE))
      throw SurfaceError("tE expects numeric n and E");
    ExprPtr arg = parse_rec(lx);
    if (lx.token() != ")") throw SurfaceError("expected ')' after tE");
    CatenoidProfile prof{static_cast<int>(pn), pE};
    if (prof.n < 1) throw SurfaceError("tE: n must be >= 1");
    return ex_profile(prof, std::move(arg));
  }

  while (lx.peek() != ')') {
    std::string t2 = lx.token();
    if (t2 == "(") {
      // re-parse the subexpression: rewind one char
      lx.pos -= 1;
      args.push_back(parse_rec(lx));
    } else {
      double v;
      if (head == "^" && args.size() == 1 && parse_number(t2, v) && lx.peek() == ')') {
        tail_number = v;
      } else {
        args.push_back(parse_atom(t2));
      }
    }
  }
  lx.token();  // consume ')'

  auto fold = [&](Expr::Op op) {
    if (args.size() < 2) throw SurfaceError("operator needs at least two arguments");
    ExprPtr r = args[0];
    for (size_t i = 1; i < args.size(); ++i) r = binary(op, r, args[i]);
    return r;
  };

  if (head == "+") return fold(Expr::Op::kAdd);
  if (head == "*") return fold(Expr::Op::kMul);
  if (head == "-") {
    if (args.size() == 1) return ex_neg(args[0]);
    return fold(Expr::Op::kSub);
  }
  if (head == "/") return fold(Expr::Op::kDiv);
  if (head == "^") {
    if (args.size() != 1 || !tail_number) throw SurfaceError("(^ expr number) expected");
    return ex_pow(args[0], *tail_number);
  }
  if (head == "sqrt" || head == "sin" || head == "cos") {
    if (args.size() != 1) throw SurfaceError(head + " expects one argument");
    if (head == "sqrt") return ex_sqrt(args[0]);
    if (head == "sin") return ex_sin(args[0]);
    return ex_cos(args[0]);
  }
  if (head == "atan2") {
    if (args.size() != 2) throw SurfaceError("atan2 expects two arguments");
    return ex_atan2(args[0], args[1]);
  }
  throw SurfaceError("unknown operator '" + head + "'");
}

}  // namespace

ExprPtr parse_expr(const std::string& text) {
  Lexer lx{text};
  ExprPtr e = parse_rec(lx);
  if (!lx.at_end()) throw SurfaceError("trailing input after expression");
  return e;
}

std::string print_surface(const SurfaceDef& s) {
  std::ostringstream os;
  os << "surface " << s.id << "\n";
  os << "n " << s.n << "\n";
  os << "orientation " << s.orientation << "\n";
  os << "u " << print_expr(*s.u) << "\n";
  return os.str();
}

SurfaceDef parse_surface(const std::string& text) {
  std::istringstream is(text);
  SurfaceDef s;
  std::string line;
  bool saw_u = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key.empty() || key[0] == '#') continue;
    if (key == "surface") {
      ls >> s.id;
    } else if (key == "n") {
      ls >> s.n;
    } else if (key == "orientation") {
      ls >> s.orientation;
    } else if (key == "u") {
      std::string rest;
      std::getline(ls, rest);
      s.u = parse_expr(rest);
      saw_u = true;
    } else {
      throw SurfaceError("unknown surface key '" + key + "'");
    }
  }
  if (!saw_u) throw SurfaceError("surface text has no 'u' line");
  if (s.n < 1 || s.n > 8) throw SurfaceError("surface n out of range");
  if (s.orientation != 1 && s.orientation != -1) throw SurfaceError("orientation must be ±1");
  return s;
}

}  // namespace heisgeo
