#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecfam/arith.hpp"
#include "ecfam/polyq.hpp"

namespace ecfam {

class SingularCurve : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PointNotOnCurve : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Point {
  Rational x, y;
  bool inf = false;

  static Point infinity() { return Point{Rational(0), Rational(1), true}; }
  friend bool operator==(const Point& a, const Point& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  std::string to_string() const;
};

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
class WeierstrassCurve {
 public:
  WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6);
  explicit WeierstrassCurve(const std::vector<Rational>& ainvs);
  // y^2 = x^3 + A x^2 + B x
  static WeierstrassCurve from_ab(const Rational& A, const Rational& B);

  const Rational& a1() const { return a_[0]; }
  const Rational& a2() const { return a_[1]; }
  const Rational& a3() const { return a_[2]; }
  const Rational& a4() const { return a_[3]; }
  const Rational& a6() const { return a_[4]; }
  const std::vector<Rational>& ainvs() const { return a_; }
  const Rational& b2() const { return b2_; }
  const Rational& b4() const { return b4_; }
  const Rational& b6() const { return b6_; }
  const Rational& b8() const { return b8_; }
  const Rational& c4() const { return c4_; }
  const Rational& c6() const { return c6_; }
  const Rational& disc() const { return disc_; }
  Rational j() const { return c4_ * c4_ * c4_ / disc_; }
  bool is_integral() const;

  bool on_curve(const Point& P) const;
  void check(const Point& P) const;  // throws PointNotOnCurve
  Point neg(const Point& P) const;
  Point add(const Point& P, const Point& Q) const;
  Point dbl(const Point& P) const { return add(P, P); }
  Point mul(const Point& P, long n) const;
  Point mul(const Point& P, const Integer& n) const;
  // Order of a torsion point, 0 when P has order > 12 (so infinite over Q).
  unsigned order(const Point& P) const;
  // Points with the given x (0, 1 or 2 of them).
  std::vector<Point> points_with_x(const Rational& x) const;

  // psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, and related x-only polynomials.
  Poly two_division() const;
  Poly division_polynomial(unsigned n) const;  // psi_n for odd n <= 7, psi_2^2 for n = 2
  Poly psi4_over_psi2() const;

  friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) { return a.a_ == b.a_; }
  friend bool operator!=(const WeierstrassCurve& a, const WeierstrassCurve& b) { return !(a == b); }
  std::string to_string() const;

 private:
  std::vector<Rational> a_;
  Rational b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

// x = u^2 x' + r, y = u^3 y' + s u^2 x' + t maps E' (image) back onto E.
struct Isomorphism {
  Rational u = 1, r = 0, s = 0, t = 0;

  WeierstrassCurve apply(const WeierstrassCurve& E) const;
  Point map(const Point& P) const;      // E -> E'
  Point unmap(const Point& P) const;    // E' -> E
  Isomorphism inverse() const;
  Isomorphism then(const Isomorphism& next) const;  // first this, then next
};

std::optional<Isomorphism> isomorphism(const WeierstrassCurve& from, const WeierstrassCurve& to);
bool isomorphic_over_q(const WeierstrassCurve& a, const WeierstrassCurve& b);

struct ModelChange {
  WeierstrassCurve curve;
  Isomorphism iso;  // from the input curve to `curve`
};
// Integral model with the smallest scaling for each prime in the denominators.
ModelChange integral_model(const WeierstrassCurve& E);
// y^2 = x^3 + a2 x^2 + a4 x + a6 with the same x (a1 = a3 = 0).
ModelChange completed_square(const WeierstrassCurve& E);

// #E(F_p) for a prime p of good reduction on an integral model, p odd.
long count_points(const WeierstrassCurve& integral, unsigned long p);

struct TorsionGroup {
  std::vector<unsigned> invariants;  // empty (trivial), {n}, or {n1, n2} with n2 | n1
  std::vector<Point> generators;
  std::vector<Point> points;  // every torsion point, including infinity

  unsigned order() const;
  std::string label() const;  // "trivial", "Z/nZ", "Z/n1Z x Z/n2Z" (smaller first)
};

TorsionGroup torsion_subgroup(const WeierstrassCurve& E);
// gcd of #E(F_p) over the first `primes` odd primes of good reduction.
unsigned torsion_bound(const WeierstrassCurve& E, unsigned primes = 12);

}  // namespace ecfam
