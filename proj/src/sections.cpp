#include "ecfam/sections.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace ecfam {

namespace {

std::vector<Integer> divisors(const Integer& n, const FactorBudget& budget) {
  std::vector<Integer> out{1};
  if (n == 0 || abs(n) == 1) return out;
  FactoredInt f = factor(abs(n), budget);
  if (!f.complete()) throw UnfactoredError("content of B", f.residue);
  for (const auto& pp : f.factors) {
    std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= pp.e; ++k) {
      pk *= pp.p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

unsigned thread_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

using QVec = std::array<Rational, 3>;

Rational form(const std::array<std::array<Rational, 3>, 3>& M, const QVec& p, const QVec& q) {
  Rational s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += M[i][j] * p[i] * q[j];
  return s;
}

ProjPoint primitive(const QVec& v) {
  Integer l = lcm_of_denominators({v[0], v[1], v[2]});
  ProjPoint p;
  Integer g = 0;
  for (int i = 0; i < 3; ++i) {
    Rational t = v[i] * l;
    p[i] = t.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), p[i].get_mpz_t());
  }
  if (g == 0) throw std::logic_error("zero projective point");
  for (auto& x : p) x /= g;
  for (const auto& x : p) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : p) y = -y;
    break;
  }
  return p;
}

struct Descent {
  std::optional<QVec> sol;  // X^2 = a Y^2 + b Z^2
  std::optional<Integer> witness;
};

Descent lagrange(const Integer& a, const Integer& b, const FactorBudget& budget);

Descent lagrange_squarefree(const Integer& a, const Integer& b, const FactorBudget& budget) {
  if (a == 1) return {QVec{1, 1, 0}, std::nullopt};
  if (b == 1) return {QVec{1, 0, 1}, std::nullopt};
  if (a < 0 && b < 0) return {std::nullopt, Integer(0)};
  if (abs(a) > abs(b)) {
    Descent d = lagrange_squarefree(b, a, budget);
    if (d.sol) std::swap((*d.sol)[1], (*d.sol)[2]);
    return d;
  }
  Integer m = abs(b);
  FactoredInt f = factor(m, budget);
  if (!f.complete()) throw UnfactoredError("conic coefficient", f.residue);
  std::vector<Integer> primes = f.primes();
  for (const auto& p : primes)
    if (p != 2 && mod(a, p) != 0 && jacobi(a, p) == -1) return {std::nullopt, p};
  auto r0 = sqrt_mod(mod(a, m), primes);
  if (!r0) throw std::logic_error("lagrange: missing square root");
  Integer r = *r0;
  if (2 * r > m) r -= m;
  Integer k = (r * r - a) / b;
  Descent d = lagrange(a, k, budget);
  if (!d.sol) return d;
  const auto& [X, Y, Z] = *d.sol;
  return {QVec{Rational(r) * X + Rational(a) * Y, X + Rational(r) * Y, Rational(k) * Z}, std::nullopt};
}

Descent lagrange(const Integer& a, const Integer& b, const FactorBudget& budget) {
  auto sa = squarefree_decompose(a, budget), sb = squarefree_decompose(b, budget);
  Descent d = lagrange_squarefree(sa.f, sb.f, budget);
  if (d.sol) {
    (*d.sol)[1] /= Rational(sa.s);
    (*d.sol)[2] /= Rational(sb.s);
  }
  return d;
}

std::optional<ProjPoint> search(const Conic& C, long bound) {
  for (long h = 1; h <= bound; ++h)
    for (long x = -h; x <= h; ++x)
      for (long y = -h; y <= h; ++y)
        for (long z = 0; z <= h; ++z) {
          if (std::max({std::labs(x), std::labs(y), z}) != h) continue;
          ProjPoint p{x, y, z};
          if (C.value(p) == 0) return primitive({Rational(x), Rational(y), Rational(z)});
        }
  return std::nullopt;
}

}  // namespace

Poly square_class(const Poly& p, const FactorBudget& budget) { return square_decompose(p, budget).q; }

std::vector<DivisorCondition> divisor_conditions(const CurveFamily& F, const DivisorOptions& opt,
                                                 const FactorBudget& budget) {
  if (!F.A.is_polynomial() || !F.B.is_polynomial())
    throw std::invalid_argument("divisor_conditions: family coefficients must be polynomials");
  PolyFactorization fac = factor_poly(F.B.num());
  std::vector<Rational> units;
  if (opt.constant_divisors) {
    for (const auto& n : divisors(fac.unit.get_num(), budget)) {
      units.emplace_back(n);
      units.emplace_back(-n);
    }
  } else {
    units = {Rational(1), Rational(-1)};
  }
  std::size_t total = units.size();
  for (const auto& [g, e] : fac.factors) total *= e + 1;
  total = std::min(total, opt.limit);

  std::vector<DivisorCondition> out(total);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t rest = idx;
      Poly d(units[rest % units.size()]);
      rest /= units.size();
      for (const auto& [g, e] : fac.factors) {
        d *= g.pow(static_cast<unsigned>(rest % (e + 1)));
        rest /= e + 1;
      }
      RatFunc D(d);
      RatFunc val = D + F.A + F.B / D;
      out[idx].d = D;
      out[idx].condition = val.is_zero() ? Poly() : square_class(val.num() * val.den(), budget);
    }
  };
  unsigned n = thread_count(opt.threads, total / 64);
  if (n <= 1) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (total + n - 1) / n;
    for (unsigned i = 0; i < n; ++i) {
      std::size_t b = i * chunk, e = std::min(total, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& t : pool) t.join();
  }
  return out;
}

Poly condition_for_x(const CurveFamily& F, const RatFunc& X, const FactorBudget& budget) {
  if (X.is_zero()) throw std::invalid_argument("condition_for_x: X = 0 is the 2-torsion point");
  RatFunc v = X * (X * X + F.A * X + F.B);
  if (v.is_zero()) return Poly();
  return square_class(v.num() * v.den(), budget);
}

RatFunc HomogeneousSpace::value(const RatFunc& U, const RatFunc& V) const {
  RatFunc U2 = U * U, V2 = V * V;
  return d * U2 * U2 + A * U2 * V2 + e * V2 * V2;
}

Poly HomogeneousSpace::condition(const RatFunc& U, const RatFunc& V, const FactorBudget& budget) const {
  RatFunc v = value(U, V);
  if (v.is_zero()) return Poly();
  return square_class(v.num() * v.den(), budget);
}

HomogeneousSpace homogeneous_space(const CurveFamily& F, const RatFunc& d) {
  if (d.is_zero()) throw std::invalid_argument("homogeneous_space: d = 0");
  return {d, F.A, F.B / d};
}

std::pair<RatFunc, RatFunc> split_square(const RatFunc& X, const FactorBudget& budget) {
  SquareDecomposition sd = square_decompose(X, budget);
  return {RatFunc(sd.q), RatFunc(sd.s) / RatFunc(X.den())};
}

// Conic

Conic::Conic(const std::array<std::array<Integer, 3>, 3>& M) : M_(M) {
  Integer g = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (M_[i][j] != M_[j][i]) throw std::invalid_argument("conic matrix must be symmetric");
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), M_[i][j].get_mpz_t());
    }
  if (g == 0 || det() == 0) throw DegenerateConic("degenerate conic");
  if (g != 1)
    for (auto& row : M_)
      for (auto& x : row) x /= g;
}

Conic Conic::from_form(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                       const Rational& e, const Rational& f) {
  std::array<std::array<Rational, 3>, 3> R{{{a, d / 2, e / 2}, {d / 2, b, f / 2}, {e / 2, f / 2, c}}};
  std::vector<Rational> all;
  for (const auto& row : R) all.insert(all.end(), row.begin(), row.end());
  Integer l = lcm_of_denominators(all);
  std::array<std::array<Integer, 3>, 3> M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M[i][j] = Rational(R[i][j] * l).get_num();
  return Conic(M);
}

Integer Conic::value(const ProjPoint& p) const {
  Integer s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += M_[i][j] * p[i] * p[j];
  return s;
}

Rational Conic::bilinear(const std::array<Rational, 3>& p, const std::array<Rational, 3>& q) const {
  Rational s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += Rational(M_[i][j]) * p[i] * q[j];
  return s;
}

Rational Conic::value(const std::array<Rational, 3>& p) const { return bilinear(p, p); }

Integer Conic::det() const {
  const auto& m = M_;
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::string Conic::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 3; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < 3; ++j) os << (j ? "," : "") << ecfam::to_string(M_[i][j]);
    os << "]";
  }
  os << "]";
  return os.str();
}

ConicSolution solve_conic(const Conic& C, const FactorBudget& budget) {
  std::array<std::array<Rational, 3>, 3> M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M[i][j] = Rational(C.matrix()[i][j]);

  std::array<QVec, 3> basis{QVec{1, 0, 0}, QVec{0, 1, 0}, QVec{0, 0, 1}};
  std::array<Rational, 3> diag;
  for (int k = 0; k < 3; ++k) {
    diag[k] = form(M, basis[k], basis[k]);
    if (diag[k] == 0) return {primitive(basis[k]), std::nullopt};
    for (int j = k + 1; j < 3; ++j) {
      Rational c = form(M, basis[j], basis[k]) / diag[k];
      for (int i = 0; i < 3; ++i) basis[j][i] -= c * basis[k][i];
    }
  }

  Integer l = lcm_of_denominators({diag[0], diag[1], diag[2]});
  try {
    std::array<SquarefreeDecomposition, 3> sq;
    for (int i = 0; i < 3; ++i) sq[i] = squarefree_decompose(Rational(diag[i] * l).get_num(), budget);
    // f0 y0^2 + f1 y1^2 + f2 y2^2 = 0  <=>  (f0 y0)^2 = (-f0 f1) y1^2 + (-f0 f2) y2^2
    Integer alpha = -sq[0].f * sq[1].f, beta = -sq[0].f * sq[2].f;
    Descent d = lagrange(alpha, beta, budget);
    if (!d.sol) {
      if (hilbert_symbol(Rational(alpha), Rational(beta), *d.witness) != -1)
        throw std::logic_error("solve_conic: witness fails the Hilbert symbol check");
      return {std::nullopt, d.witness};
    }
    QVec y{(*d.sol)[0] / Rational(sq[0].f), (*d.sol)[1], (*d.sol)[2]};
    QVec x{0, 0, 0};
    for (int k = 0; k < 3; ++k) {
      Rational yk = y[k] / Rational(sq[k].s);
      for (int i = 0; i < 3; ++i) x[i] += yk * basis[k][i];
    }
    ProjPoint p = primitive(x);
    if (C.value(p) != 0) throw std::logic_error("solve_conic: descent produced a non-point");
    return {p, std::nullopt};
  } catch (const UnfactoredError&) {
    if (auto p = search(C, 60)) return {*p, std::nullopt};
    throw;
  }
}

std::array<Poly, 3> parametrize_conic(const Conic& C, const ProjPoint& p0) {
  if (C.value(p0) != 0) throw std::invalid_argument("parametrize_conic: base point not on the conic");
  int i = 0;
  while (p0[i] == 0) ++i;
  int j = (i + 1) % 3, k = (i + 2) % 3;
  std::array<Poly, 3> q;
  q[j] = Poly(1);
  q[k] = Poly::x();
  const auto& M = C.matrix();
  Poly Qq, Bq;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Qq += (q[a] * q[b]).scaled(Rational(M[a][b]));
      Bq += q[b].scaled(Rational(M[a][b] * p0[a]));
    }
  std::array<Poly, 3> out;
  for (int m = 0; m < 3; ++m) out[m] = Qq.scaled(Rational(p0[m])) - (Bq * q[m]).scaled(2);
  return out;
}

Conic condition_conic(const Poly& q) {
  if (q.degree() != 2) throw std::invalid_argument("condition_conic: condition must have degree 2");
  return Conic::from_form(q[2], -1, q[0], 0, q[1], 0);
}

std::optional<RatFunc> condition_parametrization(const Poly& q, const FactorBudget& budget) {
  RatFunc v;
  if (q.degree() == 1) {
    v = RatFunc(Poly::x() * Poly::x() - Poly(q[0])) / RatFunc(q[1]);
  } else if (q.degree() == 2) {
    Conic C = condition_conic(q);
    auto sol = solve_conic(C, budget);
    if (!sol.point) return std::nullopt;
    auto par = parametrize_conic(C, *sol.point);
    v = RatFunc(par[0], par[2]);
  } else {
    throw std::invalid_argument("condition_parametrization: degree must be 1 or 2");
  }
  if (!ratfunc_sqrt(RatFunc(q).compose(v)))
    throw std::logic_error("condition_parametrization: substitution does not give a square");
  return v;
}

// Quartics

void QuarticModel::check() const {
  if (q.degree() < 3 || q.degree() > 4) throw DegenerateQuartic("quartic model must have degree 3 or 4");
  if (gcd(q, q.derivative()).degree() > 0) throw DegenerateQuartic("quartic model is not squarefree");
  if (point && point->second * point->second != q.eval(point->first))
    throw std::invalid_argument("known point is not on t^2 = q(u)");
}

QuarticJacobian quartic_jacobian(const QuarticModel& Q) {
  Q.check();
  if (!Q.point) throw std::invalid_argument("quartic_jacobian needs a known point");
  const auto& [u0, t0] = *Q.point;
  Poly f = Q.q.shift(u0);
  if (Q.q.degree() == 3) {
    // t^2 = c3 u^3 + ...: X = c3 u, Y = c3 t; the known point stays affine
    Rational c3 = Q.q[3];
    QuarticJacobian J(Q, WeierstrassCurve(0, Q.q[2], 0, Q.q[1] * c3, Q.q[0] * c3 * c3));
    J.kind_ = QuarticJacobian::Kind::Cubic;
    J.u0_ = u0;
    J.t0_ = t0;
    J.a_ = c3;
    return J;
  }
  if (t0 == 0) {
    // u - u0 = e1 / X, t = Y (u - u0)^2 / e1
    Rational e1 = f[1], e2 = f[2], e3 = f[3], e4 = f[4];
    QuarticJacobian J(Q, WeierstrassCurve(0, e2, 0, e1 * e3, e1 * e1 * e4));
    J.kind_ = QuarticJacobian::Kind::Root;
    J.u0_ = u0;
    J.t0_ = t0;
    J.a_ = e1;
    return J;
  }
  Rational a = f[4], b = f[3], c = f[2], d = f[1], q = t0;
  Rational a1 = d / q, a2 = c - d * d / (4 * q * q), a3 = 2 * q * b, a4 = -4 * q * q * a;
  QuarticJacobian J(Q, WeierstrassCurve(a1, a2, a3, a4, a2 * a4));
  J.kind_ = QuarticJacobian::Kind::Washington;
  J.u0_ = u0;
  J.t0_ = t0;
  J.a_ = a;
  J.b_ = b;
  J.c_ = c;
  J.d_ = d;
  return J;
}

std::optional<Point> QuarticJacobian::forward(const Rational& u, const Rational& t) const {
  if (t * t != Q_.q.eval(u)) throw PointNotOnCurve("forward: point not on t^2 = q(u)");
  Rational s = u - u0_;
  switch (kind_) {
    case Kind::Cubic:
      return Point{a_ * u, a_ * t};
    case Kind::Root:
      if (s == 0) return Point::infinity();
      return Point{a_ / s, a_ * t / (s * s)};
    case Kind::Washington: {
      const Rational& q = t0_;
      if (s == 0) {
        if (t == q) return Point::infinity();
        return std::nullopt;
      }
      Rational x = (2 * q * (t + q) + d_ * s) / (s * s);
      Rational y = (4 * q * q * (t + q) + 2 * q * (d_ * s + c_ * s * s) - d_ * d_ * s * s / (2 * q)) /
                   (s * s * s);
      return Point{x, y};
    }
  }
  return std::nullopt;
}

std::optional<std::pair<Rational, Rational>> QuarticJacobian::inverse(const Point& P) const {
  E_.check(P);
  switch (kind_) {
    case Kind::Cubic:
      if (P.inf) return std::nullopt;
      return std::make_pair(P.x / a_, P.y / a_);
    case Kind::Root: {
      if (P.inf) return std::make_pair(u0_, t0_);
      if (P.x == 0) return std::nullopt;
      Rational s = a_ / P.x;
      return std::make_pair(u0_ + s, P.y * s * s / a_);
    }
    case Kind::Washington: {
      if (P.inf) return std::make_pair(u0_, t0_);
      if (P.y == 0) return std::nullopt;
      const Rational& q = t0_;
      Rational s = (2 * q * (P.x + c_) - d_ * d_ / (2 * q)) / P.y;
      Rational t = -q + s * (s * P.x - d_) / (2 * q);
      return std::make_pair(u0_ + s, t);
    }
  }
  return std::nullopt;
}

}  // namespace ecfam
