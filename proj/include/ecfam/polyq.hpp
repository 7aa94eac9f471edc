#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecfam/arith.hpp"

namespace ecfam {

// Dense univariate polynomial over Q, coefficients stored low degree first.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT: constants convert implicitly
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT
  explicit Poly(std::vector<Rational> coeffs);

  static Poly x();
  static Poly monomial(const Rational& c, unsigned k);
  static Poly from_integers(const std::vector<Integer>& coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& lead() const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const;
  // Homogeneous value den^deg * p(num/den), an integer when p has integer coefficients.
  Rational eval_homogeneous(const Integer& num, const Integer& den, int deg) const;
  Poly derivative() const;
  Poly compose(const Poly& inner) const;
  Poly monic() const;
  Poly scaled(const Rational& c) const;
  Poly shift(const Rational& a) const { return compose(x() + Poly(a)); }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  Poly pow(unsigned e) const;

  std::string to_string(std::string_view var = "x") const;

 private:
  std::vector<Rational> c_;
  void trim();
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact division, throws if remainder != 0
Poly operator%(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic, gcd(0,0) = 0

// p = content * primitive with primitive integral, positive leading coefficient.
Rational content(const Poly& p);
std::vector<Integer> primitive_integer(const Poly& p, Rational* content_out = nullptr);

Poly parse_poly(std::string_view text, std::string_view var);

// Yun: p = lead * prod f_i^i with f_i monic squarefree and coprime.
std::vector<std::pair<Poly, unsigned>> squarefree_factorization(const Poly& p);

struct PolyFactorization {
  Rational unit;
  std::vector<std::pair<Poly, unsigned>> factors;  // primitive integral, positive lead, irreducible
  Poly expand() const;
};
PolyFactorization factor_poly(const Poly& p);
std::vector<Poly> factor_squarefree_primitive(const std::vector<Integer>& f);

std::vector<Rational> rational_roots(const Poly& p);

std::optional<Poly> poly_sqrt(const Poly& p);

// p = s^2 * q with q squarefree (as a polynomial), s with positive leading coefficient.
struct SquareDecomposition {
  Poly s;
  Poly q;
};
SquareDecomposition square_decompose(const Poly& p, const FactorBudget& budget = FactorBudget{});

// Reduced rational function num/den, gcd(num, den) = 1, den monic.
class RatFunc {
 public:
  RatFunc() : num_(Poly()), den_(Poly(1)) {}
  RatFunc(const Rational& c) : num_(c), den_(Poly(1)) {}  // NOLINT
  RatFunc(long c) : RatFunc(Rational(c)) {}               // NOLINT
  RatFunc(const Poly& p) : num_(p), den_(Poly(1)) {}      // NOLINT
  RatFunc(const Poly& num, const Poly& den);

  static RatFunc x() { return RatFunc(Poly::x()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.degree() <= 0; }

  // Throws std::domain_error at a pole.
  Rational eval(const Rational& x) const;
  bool has_pole_at(const Rational& x) const { return den_.eval(x) == 0; }
  RatFunc compose(const RatFunc& inner) const;
  RatFunc derivative() const;
  RatFunc pow(int e) const;

  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string to_string(std::string_view var = "x") const;

 private:
  Poly num_, den_;
};

RatFunc parse_ratfunc(std::string_view text, std::string_view var);
std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f);
// Decomposes num*den, so that f * den^2 = s^2 * q.
SquareDecomposition square_decompose(const RatFunc& f, const FactorBudget& budget = FactorBudget{});

// B^2 (A^2 - 4B): discriminant of X^3 + A X^2 + B X.
Poly disc_shifted_cubic(const Poly& A, const Poly& B);
RatFunc disc_shifted_cubic(const RatFunc& A, const RatFunc& B);

// Polynomial in s with coefficients in Q[r]: sum_j coeff[j](r) s^j.
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(const Rational& c) : c_{Poly(c)} { trim(); }  // NOLINT
  explicit BiPoly(std::vector<Poly> coeffs_in_s) : c_(std::move(coeffs_in_s)) { trim(); }
  static BiPoly r();
  static BiPoly s();

  int degree_s() const { return static_cast<int>(c_.size()) - 1; }
  int degree_r() const;
  Poly coeff_s(std::size_t j) const { return j < c_.size() ? c_[j] : Poly(); }
  Rational eval(const Rational& r, const Rational& s) const;
  Poly at_r(const Rational& r) const;  // polynomial in s
  Poly at_s(const Rational& s) const;  // polynomial in r
  BiPoly swapped() const;

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator/(const BiPoly& a, const BiPoly& b);  // divisor must be a nonzero constant
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }

  std::string to_string(std::string_view r = "r", std::string_view s = "s") const;

 private:
  std::vector<Poly> c_;
  void trim();
};

BiPoly parse_bipoly(std::string_view text, std::string_view r, std::string_view s);

}  // namespace ecfam
