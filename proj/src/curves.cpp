#include "ecfam/curves.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ecfam {

std::string Point::to_string() const {
  if (inf) return "O";
  return "(" + ecfam::to_string(x) + ", " + ecfam::to_string(y) + ")";
}

WeierstrassCurve::WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
  const auto& [A1, A2, A3, A4, A6] = std::tie(a_[0], a_[1], a_[2], a_[3], a_[4]);
  b2_ = A1 * A1 + 4 * A2;
  b4_ = 2 * A4 + A1 * A3;
  b6_ = A3 * A3 + 4 * A6;
  b8_ = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
  c4_ = b2_ * b2_ - 24 * b4_;
  c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
  disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
  if (disc_ == 0) throw SingularCurve("singular curve " + to_string());
}

WeierstrassCurve::WeierstrassCurve(const std::vector<Rational>& ainvs)
    : WeierstrassCurve(ainvs.at(0), ainvs.at(1), ainvs.at(2), ainvs.at(3), ainvs.at(4)) {
  if (ainvs.size() != 5) throw std::invalid_argument("expected five a-invariants");
}

WeierstrassCurve WeierstrassCurve::from_ab(const Rational& A, const Rational& B) {
  return WeierstrassCurve(0, A, 0, B, 0);
}

bool WeierstrassCurve::is_integral() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

bool WeierstrassCurve::on_curve(const Point& P) const {
  if (P.inf) return true;
  const Rational &x = P.x, &y = P.y;
  return y * y + a1() * x * y + a3() * y == x * x * x + a2() * x * x + a4() * x + a6();
}

void WeierstrassCurve::check(const Point& P) const {
  if (!on_curve(P)) throw PointNotOnCurve(P.to_string() + " is not on " + to_string());
}

Point WeierstrassCurve::neg(const Point& P) const {
  if (P.inf) return P;
  return Point{P.x, -P.y - a1() * P.x - a3()};
}

Point WeierstrassCurve::add(const Point& P, const Point& Q) const {
  if (P.inf) return Q;
  if (Q.inf) return P;
  Rational lambda, nu;
  if (P.x == Q.x) {
    Rational d = P.y + Q.y + a1() * Q.x + a3();
    if (d == 0) return Point::infinity();
    Rational den = 2 * P.y + a1() * P.x + a3();
    lambda = (3 * P.x * P.x + 2 * a2() * P.x + a4() - a1() * P.y) / den;
    nu = (-P.x * P.x * P.x + a4() * P.x + 2 * a6() - a3() * P.y) / den;
  } else {
    Rational dx = Q.x - P.x;
    lambda = (Q.y - P.y) / dx;
    nu = (P.y * Q.x - Q.y * P.x) / dx;
  }
  Rational x3 = lambda * lambda + a1() * lambda - a2() - P.x - Q.x;
  Rational y3 = -(lambda + a1()) * x3 - nu - a3();
  return Point{x3, y3};
}

Point WeierstrassCurve::mul(const Point& P, long n) const { return mul(P, Integer(n)); }

Point WeierstrassCurve::mul(const Point& P, const Integer& n) const {
  Point base = n < 0 ? neg(P) : P;
  Integer k = abs(n);
  Point acc = Point::infinity();
  for (std::size_t i = mpz_sizeinbase(k.get_mpz_t(), 2); i-- > 0;) {
    acc = dbl(acc);
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = add(acc, base);
  }
  return acc;
}

unsigned WeierstrassCurve::order(const Point& P) const {
  Point Q = P;
  for (unsigned k = 1; k <= 12; ++k) {
    if (Q.inf) return k;
    Q = add(Q, P);
  }
  return 0;
}

std::vector<Point> WeierstrassCurve::points_with_x(const Rational& x) const {
  Rational h = a1() * x + a3();
  Rational rhs = x * x * x + a2() * x * x + a4() * x + a6();
  Rational D = h * h + 4 * rhs;
  auto r = square_test(D);
  if (!r) return {};
  if (*r == 0) return {Point{x, -h / 2}};
  return {Point{x, (-h + *r) / 2}, Point{x, (-h - *r) / 2}};
}

Poly WeierstrassCurve::two_division() const {
  return Poly(std::vector<Rational>{b6_, 2 * b4_, b2_, Rational(4)});
}

Poly WeierstrassCurve::psi4_over_psi2() const {
  return Poly(std::vector<Rational>{b4_ * b8_ - b6_ * b6_, b2_ * b8_ - b4_ * b6_, 10 * b8_, 10 * b6_,
                                    5 * b4_, b2_, Rational(2)});
}

Poly WeierstrassCurve::division_polynomial(unsigned n) const {
  Poly F = two_division();
  Poly psi3(std::vector<Rational>{b8_, 3 * b6_, 3 * b4_, b2_, Rational(3)});
  Poly g4 = psi4_over_psi2();
  switch (n) {
    case 1:
      return Poly(1);
    case 2:
      return F;
    case 3:
      return psi3;
    case 5:
      return g4 * F * F - psi3.pow(3);
    case 7: {
      Poly psi5 = g4 * F * F - psi3.pow(3);
      return psi5 * psi3.pow(3) - F * F * g4.pow(3);
    }
    default:
      throw std::invalid_argument("division polynomial only for n in {1,2,3,5,7}");
  }
}

std::string WeierstrassCurve::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < 5; ++i) out += (i ? "," : "") + ecfam::to_string(a_[i]);
  return out + "]";
}

WeierstrassCurve Isomorphism::apply(const WeierstrassCurve& E) const {
  const Rational &a1 = E.a1(), &a2 = E.a2(), &a3 = E.a3(), &a4 = E.a4(), &a6 = E.a6();
  Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  return WeierstrassCurve((a1 + 2 * s) / u, (a2 - s * a1 + 3 * r - s * s) / u2,
                          (a3 + r * a1 + 2 * t) / u3,
                          (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4,
                          (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6);
}

Point Isomorphism::map(const Point& P) const {
  if (P.inf) return P;
  Rational u2 = u * u;
  return Point{(P.x - r) / u2, (P.y - s * (P.x - r) - t) / (u2 * u)};
}

Point Isomorphism::unmap(const Point& P) const {
  if (P.inf) return P;
  Rational u2 = u * u;
  return Point{u2 * P.x + r, u2 * u * P.y + s * u2 * P.x + t};
}

Isomorphism Isomorphism::inverse() const {
  Rational u2 = u * u;
  return Isomorphism{1 / u, -r / u2, -s / u, (r * s - t) / (u2 * u)};
}

Isomorphism Isomorphism::then(const Isomorphism& next) const {
  Rational u2 = u * u;
  return Isomorphism{u * next.u, r + u2 * next.r, s + u * next.s,
                     t + u2 * s * next.r + u2 * u * next.t};
}

namespace {

std::optional<Rational> rational_root(const Rational& q, unsigned k) {
  if (q == 0) return Rational(0);
  bool negative = q < 0;
  if (negative && k % 2 == 0) return std::nullopt;
  Integer n = abs(q.get_num()), d = q.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k)) return std::nullopt;
  return make_rational(negative ? Integer(-rn) : rn, rd);
}

std::optional<Isomorphism> with_scale(const WeierstrassCurve& from, const WeierstrassCurve& to,
                                      const Rational& u) {
  Isomorphism iso;
  iso.u = u;
  iso.s = (u * to.a1() - from.a1()) / 2;
  iso.r = (u * u * to.a2() - from.a2() + iso.s * from.a1() + iso.s * iso.s) / 3;
  iso.t = (u * u * u * to.a3() - from.a3() - iso.r * from.a1()) / 2;
  if (iso.apply(from) == to) return iso;
  return std::nullopt;
}

}  // namespace

std::optional<Isomorphism> isomorphism(const WeierstrassCurve& from, const WeierstrassCurve& to) {
  if (from.j() != to.j()) return std::nullopt;
  // c4' = c4 / u^4, c6' = c6 / u^6
  std::optional<Rational> u;
  if (from.c4() == 0) {
    u = rational_root(from.c6() / to.c6(), 6);
  } else if (from.c6() == 0) {
    u = rational_root(from.c4() / to.c4(), 4);
  } else {
    auto u2 = square_test(from.c6() * to.c4() / (to.c6() * from.c4()));
    if (u2) u = *u2;
  }
  if (!u) return std::nullopt;
  if (auto iso = with_scale(from, to, *u)) return iso;
  return with_scale(from, to, -*u);
}

bool isomorphic_over_q(const WeierstrassCurve& a, const WeierstrassCurve& b) {
  return isomorphism(a, b).has_value();
}

ModelChange integral_model(const WeierstrassCurve& E) {
  Integer D = lcm_of_denominators(E.ainvs());
  Integer lambda = 1;
  if (D != 1) {
    auto f = factor(D);
    for (const auto& pp : f.factors) {
      unsigned e = 0;
      for (unsigned i = 0; i < 5; ++i) {
        static constexpr unsigned weight[5] = {1, 2, 3, 4, 6};
        unsigned v = valuation(Integer(E.ainvs()[i].get_den()), pp.p);
        e = std::max(e, (v + weight[i] - 1) / weight[i]);
      }
      Integer pe;
      mpz_pow_ui(pe.get_mpz_t(), pp.p.get_mpz_t(), e);
      lambda *= pe;
    }
    lambda *= f.residue;
  }
  Isomorphism iso;
  iso.u = make_rational(1, lambda);
  return ModelChange{iso.apply(E), iso};
}

ModelChange completed_square(const WeierstrassCurve& E) {
  Isomorphism iso;
  iso.s = -E.a1() / 2;
  iso.t = -E.a3() / 2;
  return ModelChange{iso.apply(E), iso};
}

long count_points(const WeierstrassCurve& E, unsigned long p) {
  auto red = [p](const Rational& q) {
    return mod(Integer(q.get_num()) * *inverse_mod(Integer(q.get_den()), Integer(p)), Integer(p))
        .get_ui();
  };
  unsigned long b2 = red(E.b2()), b4 = red(E.b4()), b6 = red(E.b6());
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (unsigned long y = 1; y < p; ++y) chi[y * y % p] = 1;
  long total = static_cast<long>(p) + 1;
  for (unsigned long x = 0; x < p; ++x) {
    unsigned long v = (((4 * x + b2) % p * x + 2 * b4) % p * x + b6) % p;
    total += chi[v];
  }
  return total;
}

unsigned torsion_bound(const WeierstrassCurve& E, unsigned primes) {
  WeierstrassCurve Z = integral_model(E).curve;
  Integer disc = Z.disc().get_num();
  long g = 0;
  unsigned used = 0;
  for (std::uint32_t p : small_primes(100000)) {
    if (p == 2 || mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
    g = std::gcd(g, count_points(Z, p));
    if (++used == primes) break;
  }
  return static_cast<unsigned>(g);
}

unsigned TorsionGroup::order() const { return static_cast<unsigned>(points.size()); }

std::string TorsionGroup::label() const {
  if (invariants.empty()) return "trivial";
  if (invariants.size() == 1) return "Z/" + std::to_string(invariants[0]) + "Z";
  return "Z/" + std::to_string(invariants[1]) + "Z x Z/" + std::to_string(invariants[0]) + "Z";
}

namespace {

void insert_unique(std::vector<Point>& pts, const Point& P) {
  if (std::find(pts.begin(), pts.end(), P) == pts.end()) pts.push_back(P);
}

std::vector<Point> points_over_roots(const WeierstrassCurve& E, const Poly& f) {
  std::vector<Point> out;
  if (f.is_zero()) return out;
  for (const auto& x : rational_roots(f))
    for (const auto& P : E.points_with_x(x)) out.push_back(P);
  return out;
}

// Q with 2Q = P.
std::vector<Point> halves(const WeierstrassCurve& E, const Point& P) {
  Poly F = E.two_division();
  if (P.inf) {
    std::vector<Point> out;
    for (const auto& Q : points_over_roots(E, F))
      if (E.dbl(Q).inf) out.push_back(Q);
    return out;
  }
  Poly phi2(std::vector<Rational>{-E.b8(), -2 * E.b6(), -E.b4(), Rational(0), Rational(1)});
  std::vector<Point> out;
  for (const auto& Q : points_over_roots(E, phi2 - F.scaled(P.x)))
    if (E.dbl(Q) == P) out.push_back(Q);
  return out;
}

// Q with 3Q = P for P != O.
std::vector<Point> thirds(const WeierstrassCurve& E, const Point& P) {
  Poly psi3 = E.division_polynomial(3);
  Poly f = (Poly::x() - Poly(P.x)) * psi3 * psi3 - E.two_division() * E.psi4_over_psi2();
  std::vector<Point> out;
  for (const auto& Q : points_over_roots(E, f))
    if (E.mul(Q, 3) == P) out.push_back(Q);
  return out;
}

}  // namespace

TorsionGroup torsion_subgroup(const WeierstrassCurve& E) {
  unsigned bound = torsion_bound(E, 12);
  TorsionGroup T;
  T.points.push_back(Point::infinity());
  if (bound == 1) return T;

  std::vector<Point> two_part{Point::infinity()};
  if (bound % 2 == 0) {
    unsigned cap = 1;
    while (bound % (cap * 2) == 0) cap *= 2;
    std::vector<Point> frontier{Point::infinity()};
    for (unsigned ord = 2; ord <= cap && !frontier.empty(); ord *= 2) {
      std::vector<Point> next;
      for (const auto& P : frontier)
        for (const auto& Q : halves(E, P)) {
          insert_unique(two_part, Q);
          insert_unique(next, Q);
        }
      frontier = std::move(next);
    }
  }

  std::vector<std::vector<Point>> parts{two_part};
  for (unsigned l : {3u, 5u, 7u}) {
    if (bound % l != 0) continue;
    std::vector<Point> part{Point::infinity()};
    for (const auto& P : points_over_roots(E, E.division_polynomial(l)))
      if (E.mul(P, static_cast<long>(l)).inf) insert_unique(part, P);
    if (l == 3 && bound % 9 == 0) {
      std::vector<Point> base(part.begin() + 1, part.end());
      for (const auto& P : base)
        for (const auto& Q : thirds(E, P)) insert_unique(part, Q);
    }
    parts.push_back(part);
  }

  std::vector<Point> all{Point::infinity()};
  for (const auto& part : parts) {
    std::vector<Point> combined;
    for (const auto& P : all)
      for (const auto& Q : part) insert_unique(combined, E.add(P, Q));
    all = std::move(combined);
  }
  T.points = all;
  unsigned n = T.order();
  if (n == 1) return T;

  Point gen;
  unsigned n1 = 0;
  for (const auto& P : all) {
    unsigned o = E.order(P);
    if (o > n1) {
      n1 = o;
      gen = P;
    }
  }
  T.invariants.push_back(n1);
  T.generators.push_back(gen);
  unsigned n2 = n / n1;
  if (n2 > 1) {
    std::vector<Point> cyclic;
    Point M = Point::infinity();
    for (unsigned k = 0; k < n1; ++k, M = E.add(M, gen)) cyclic.push_back(M);
    for (const auto& P : all) {
      if (E.order(P) == n2 && std::find(cyclic.begin(), cyclic.end(), P) == cyclic.end()) {
        T.invariants.push_back(n2);
        T.generators.push_back(P);
        break;
      }
    }
  }
  return T;
}

}  // namespace ecfam
