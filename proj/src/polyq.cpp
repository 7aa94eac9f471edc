#include "ecfam/polyq.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ecfam/expr_parser.hpp"

namespace ecfam {

Poly::Poly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::x() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

Poly Poly::monomial(const Rational& c, unsigned k) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return Poly(std::move(v));
}

Poly Poly::from_integers(const std::vector<Integer>& coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (const auto& c : coeffs) v.emplace_back(c);
  return Poly(std::move(v));
}

const Rational& Poly::lead() const {
  static const Rational zero(0);
  return c_.empty() ? zero : c_.back();
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational Poly::eval_homogeneous(const Integer& num, const Integer& den, int deg) const {
  if (deg < degree()) throw std::invalid_argument("eval_homogeneous: degree too small");
  Rational acc = 0;
  Integer dpow = 1;
  // sum c_i num^i den^(deg-i), Horner on num/den scaled.
  std::vector<Integer> npow(c_.size() + 1, Integer(1));
  for (std::size_t i = 1; i < npow.size(); ++i) npow[i] = npow[i - 1] * num;
  for (int i = deg; i >= 0; --i) {
    if (static_cast<std::size_t>(i) < c_.size()) acc += c_[i] * Rational(npow[i] * dpow);
    dpow *= den;
  }
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return Poly(std::move(v));
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + Poly(*it);
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / lead());
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return Poly();
  std::vector<Rational> v(c_);
  for (auto& a : v) a *= c;
  return Poly(std::move(v));
}

Poly Poly::operator-() const { return scaled(Rational(-1)); }

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return Poly(std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(v));
}

Poly Poly::pow(unsigned e) const {
  Poly r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

namespace {

std::string coeff_string(const Rational& c) { return c.get_str(); }

}  // namespace

std::string Poly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = c_[i];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << coeff_string(a);
      continue;
    }
    if (a != 1) os << coeff_string(a) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  std::vector<Rational> q(a.degree() - db + 1, Rational(0));
  Rational inv = 1 / b.lead();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Rational t = r[i] * inv;
    q[i - db] = t;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Rational content(const Poly& p) {
  if (p.is_zero()) return 0;
  Integer g = 0, l = 1;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r = make_rational(g, l);
  if (p.lead() < 0) r = -r;
  return r;
}

std::vector<Integer> primitive_integer(const Poly& p, Rational* content_out) {
  Rational c = content(p);
  if (content_out) *content_out = c;
  std::vector<Integer> out;
  if (p.is_zero()) return out;
  for (const auto& a : p.coeffs()) {
    Rational t = a / c;
    out.push_back(t.get_num());
  }
  return out;
}

Poly gcd(const Poly& a0, const Poly& b0) {
  if (a0.is_zero()) return b0.monic();
  if (b0.is_zero()) return a0.monic();
  Poly a = Poly::from_integers(primitive_integer(a0));
  Poly b = Poly::from_integers(primitive_integer(b0));
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    Poly r = a % b;
    a = b;
    b = r.is_zero() ? r : Poly::from_integers(primitive_integer(r));
  }
  return a.monic();
}

Poly parse_poly(std::string_view text, std::string_view var) {
  RatFunc f = parse_ratfunc(text, var);
  if (!f.is_polynomial()) throw ParseError("expression is not a polynomial", 0);
  return f.num().scaled(1 / f.den().lead());
}

std::vector<std::pair<Poly, unsigned>> squarefree_factorization(const Poly& p) {
  std::vector<std::pair<Poly, unsigned>> out;
  if (p.degree() <= 0) return out;
  Poly f = p.monic();
  Poly fp = f.derivative();
  Poly a = gcd(f, fp);
  Poly b = f / a;
  Poly c = fp / a;
  Poly d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    Poly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    Poly nb = b / g;
    c = d / g;
    b = nb;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

Poly PolyFactorization::expand() const {
  Poly r(unit);
  for (const auto& [f, e] : factors) r *= f.pow(e);
  return r;
}

PolyFactorization factor_poly(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("factor_poly(0)");
  PolyFactorization out;
  out.unit = p.lead();
  for (const auto& [f, e] : squarefree_factorization(p)) {
    Rational c;
    auto prim = primitive_integer(f, &c);
    for (auto& g : factor_squarefree_primitive(prim)) {
      out.factors.emplace_back(g, e);
    }
  }
  // Leading coefficients of the primitive factors are absorbed into the unit.
  Rational lc = 1;
  for (const auto& [f, e] : out.factors)
    for (unsigned k = 0; k < e; ++k) lc *= f.lead();
  out.unit /= lc;
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
    return x.first.to_string() < y.first.to_string();
  });
  return out;
}

std::optional<Poly> poly_sqrt(const Poly& p) {
  if (p.is_zero()) return Poly();
  if (p.degree() % 2) return std::nullopt;
  const int m = p.degree() / 2;
  auto lc = square_test(p.lead());
  if (!lc) return std::nullopt;
  std::vector<Rational> s(m + 1, Rational(0));
  s[m] = *lc;
  Rational two_lead = 2 * *lc;
  for (int k = 1; k <= m; ++k) {
    // coefficient of x^(2m-k) in s^2
    Rational acc = p[2 * m - k];
    for (int i = m - k + 1; i <= m; ++i) {
      int j = 2 * m - k - i;
      if (j < m - k + 1 || j > m) continue;
      acc -= s[i] * s[j];
    }
    s[m - k] = acc / two_lead;
  }
  Poly r(std::move(s));
  if (r * r != p) return std::nullopt;
  return r;
}

namespace {

struct ConstantKernel {
  Rational s;
  Integer q;
};

// c = s^2 * q with q an integer, squarefree when the factorization completes.
ConstantKernel constant_kernel(const Rational& c, const FactorBudget& budget) {
  Integer n = c.get_num() * c.get_den();
  Rational inv_den = make_rational(1, c.get_den());
  FactoredInt f = factor(n, budget);
  Integer s = 1, q = f.sign;
  for (const auto& pp : f.factors) {
    Integer t;
    mpz_pow_ui(t.get_mpz_t(), pp.p.get_mpz_t(), pp.e / 2);
    s *= t;
    if (pp.e % 2) q *= pp.p;
  }
  q *= f.residue;
  return {Rational(s) * inv_den, q};
}

}  // namespace

SquareDecomposition square_decompose(const Poly& p, const FactorBudget& budget) {
  if (p.is_zero()) throw std::domain_error("square_decompose(0)");
  Rational c = p.lead();
  Poly s(1), q(1);
  for (const auto& [f, i] : squarefree_factorization(p)) {
    Rational fc;
    Poly F = Poly::from_integers(primitive_integer(f, &fc));
    // f monic, so f = F / lead(F).
    Rational lf = F.lead();
    Rational lfi = 1;
    for (unsigned k = 0; k < i; ++k) lfi *= lf;
    c /= lfi;
    if (i / 2) s *= F.pow(i / 2);
    if (i % 2) q *= F;
  }
  auto k = constant_kernel(c, budget);
  return {s.scaled(k.s), q.scaled(Rational(k.q))};
}

SquareDecomposition square_decompose(const RatFunc& f, const FactorBudget& budget) {
  if (f.is_zero()) throw std::domain_error("square_decompose(0)");
  return square_decompose(f.num() * f.den(), budget);
}

Poly disc_shifted_cubic(const Poly& A, const Poly& B) { return B * B * (A * A - B.scaled(4)); }

RatFunc disc_shifted_cubic(const RatFunc& A, const RatFunc& B) {
  return B * B * (A * A - RatFunc(Rational(4)) * B);
}

// RatFunc

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly(1);
    return;
  }
  Poly g = gcd(num, den);
  Poly n = num, d = den;
  if (g.degree() > 0) {
    n = num / g;
    d = den / g;
  }
  Rational l = d.lead();
  num_ = n.scaled(1 / l);
  den_ = d.scaled(1 / l);
}

Rational RatFunc::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d == 0) throw std::domain_error("rational function evaluated at a pole");
  return num_.eval(x) / d;
}

RatFunc RatFunc::compose(const RatFunc& inner) const {
  // p(N/D) = sum p_i N^i D^(deg-i) / D^deg
  const Poly& N = inner.num();
  const Poly& D = inner.den();
  auto homog = [&](const Poly& p) {
    Poly acc;
    int deg = std::max(p.degree(), 0);
    std::vector<Poly> Dp(deg + 1, Poly(1));
    for (int i = 1; i <= deg; ++i) Dp[i] = Dp[i - 1] * D;
    Poly Np(1);
    for (int i = 0; i <= p.degree(); ++i) {
      if (p[i] != 0) acc += (Np * Dp[deg - i]).scaled(p[i]);
      Np *= N;
    }
    return std::pair<Poly, int>(acc, deg);
  };
  auto [pn, dn] = homog(num_);
  auto [pd, dd] = homog(den_);
  Poly top = pn, bot = pd;
  if (dd > dn) top *= D.pow(dd - dn);
  else if (dn > dd) bot *= D.pow(dn - dd);
  return RatFunc(top, bot);
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return RatFunc(Rational(1)) / pow(-e);
  return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_polynomial() && b.is_polynomial()) {
    RatFunc r;
    r.num_ = a.num_ * b.num_;
    return r;
  }
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::to_string(std::string_view var) const {
  if (is_polynomial()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

RatFunc parse_ratfunc(std::string_view text, std::string_view var) {
  std::string v(var);
  auto leaf = [v](const std::string& id, std::size_t pos) -> RatFunc {
    if (id != v) throw ParseError("unknown identifier '" + id + "'", pos);
    return RatFunc::x();
  };
  ExprParser<RatFunc, decltype(leaf)> parser(text, leaf);
  return parser.parse();
}

std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f) {
  auto d = poly_sqrt(f.den());
  if (!d) return std::nullopt;
  auto n = poly_sqrt(f.num());
  if (!n) return std::nullopt;
  return RatFunc(*n, *d);
}

// BiPoly

void BiPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BiPoly BiPoly::r() { return BiPoly(std::vector<Poly>{Poly::x()}); }

BiPoly BiPoly::s() { return BiPoly(std::vector<Poly>{Poly(), Poly(1)}); }

int BiPoly::degree_r() const {
  int d = -1;
  for (const auto& p : c_) d = std::max(d, p.degree());
  return d;
}

Rational BiPoly::eval(const Rational& r, const Rational& s) const { return at_r(r).eval(s); }

Poly BiPoly::at_r(const Rational& r) const {
  std::vector<Rational> v;
  for (const auto& p : c_) v.push_back(p.eval(r));
  return Poly(std::move(v));
}

Poly BiPoly::at_s(const Rational& s) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc.scaled(s) + *it;
  return acc;
}

BiPoly BiPoly::swapped() const {
  int dr = degree_r();
  std::vector<Poly> out;
  for (int i = 0; i <= dr; ++i) {
    std::vector<Rational> v;
    for (const auto& p : c_) v.push_back(p[i]);
    out.emplace_back(std::move(v));
  }
  return BiPoly(std::move(out));
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  std::vector<Poly> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return BiPoly(std::move(v));
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  std::vector<Poly> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return BiPoly(std::move(v));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return BiPoly();
  std::vector<Poly> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return BiPoly(std::move(v));
}

BiPoly operator/(const BiPoly& a, const BiPoly& b) {
  if (b.c_.size() != 1 || b.c_[0].degree() != 0)
    throw std::domain_error("BiPoly division only by nonzero constants");
  Rational inv = 1 / b.c_[0][0];
  std::vector<Poly> v;
  for (const auto& p : a.c_) v.push_back(p.scaled(inv));
  return BiPoly(std::move(v));
}

std::string BiPoly::to_string(std::string_view r, std::string_view s) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = degree_s(); j >= 0; --j) {
    const Poly& p = c_[j];
    if (p.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << p.to_string(r) << ")";
    if (j > 0) os << "*" << s;
    if (j > 1) os << "^" << j;
  }
  return os.str();
}

BiPoly parse_bipoly(std::string_view text, std::string_view r, std::string_view s) {
  std::string rv(r), sv(s);
  auto leaf = [rv, sv](const std::string& id, std::size_t pos) -> BiPoly {
    if (id == rv) return BiPoly::r();
    if (id == sv) return BiPoly::s();
    throw ParseError("unknown identifier '" + id + "'", pos);
  };
  ExprParser<BiPoly, decltype(leaf)> parser(text, leaf);
  return parser.parse();
}

}  // namespace ecfam
