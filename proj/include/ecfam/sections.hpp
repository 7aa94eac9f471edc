#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecfam/curves.hpp"
#include "ecfam/families.hpp"
#include "ecfam/polyq.hpp"

namespace ecfam {

class DegenerateQuartic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateConic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Divisor-driven conditions: x = d gives a point iff d + A + B/d is a square.
struct DivisorCondition {
  RatFunc d;
  Poly condition;  // squarefree representative of d + A + B/d
};

struct DivisorOptions {
  bool constant_divisors = true;  // multiply by the +-divisors of the content of B
  std::size_t limit = 20000;      // stop enumerating after this many d
  unsigned threads = 0;           // 0: hardware concurrency
};

std::vector<DivisorCondition> divisor_conditions(const CurveFamily& F,
                                                 const DivisorOptions& opt = DivisorOptions{},
                                                 const FactorBudget& budget = FactorBudget{});

// Squarefree q with X^3 + A X^2 + B X = (square) * q, content a squarefree integer.
Poly condition_for_x(const CurveFamily& F, const RatFunc& X,
                     const FactorBudget& budget = FactorBudget{});

// Same squarefree normalization, applied to any nonzero polynomial.
Poly square_class(const Poly& p, const FactorBudget& budget = FactorBudget{});

// d U^4 + A U^2 V^2 + (B/d) V^4; a square value gives the point x = d U^2 / V^2.
struct HomogeneousSpace {
  RatFunc d, A, e;

  RatFunc value(const RatFunc& U, const RatFunc& V) const;
  RatFunc x(const RatFunc& U, const RatFunc& V) const { return d * U * U / (V * V); }
  Poly condition(const RatFunc& U, const RatFunc& V,
                 const FactorBudget& budget = FactorBudget{}) const;
};
HomogeneousSpace homogeneous_space(const CurveFamily& F, const RatFunc& d);

// X = d * U^2 with d a squarefree representative (rational constant times a
// squarefree polynomial).
std::pair<RatFunc, RatFunc> split_square(const RatFunc& X, const FactorBudget& budget = FactorBudget{});

using ProjPoint = std::array<Integer, 3>;

// x^T M x = 0 with M symmetric, integral, content 1 and det M != 0.
class Conic {
 public:
  explicit Conic(const std::array<std::array<Integer, 3>, 3>& M);
  // a x^2 + b y^2 + c z^2 + d xy + e xz + f yz
  static Conic from_form(const Rational& a, const Rational& b, const Rational& c,
                         const Rational& d, const Rational& e, const Rational& f);

  const std::array<std::array<Integer, 3>, 3>& matrix() const { return M_; }
  Integer value(const ProjPoint& p) const;
  Rational value(const std::array<Rational, 3>& p) const;
  Rational bilinear(const std::array<Rational, 3>& p, const std::array<Rational, 3>& q) const;
  Integer det() const;
  std::string to_string() const;

 private:
  std::array<std::array<Integer, 3>, 3> M_;
};

struct ConicSolution {
  std::optional<ProjPoint> point;
  // Prime with Hilbert symbol -1 when there is no point; 0 stands for the real place.
  std::optional<Integer> witness;
  bool solvable() const { return point.has_value(); }
};

// Diagonalization followed by Lagrange descent.  When the descent cannot
// factor a coefficient a small search runs before UnfactoredError is raised.
ConicSolution solve_conic(const Conic& C, const FactorBudget& budget = FactorBudget{});

// Lines through p0: every entry has degree <= 2, the form vanishes identically.
std::array<Poly, 3> parametrize_conic(const Conic& C, const ProjPoint& p0);

// t^2 = q(v) for q of degree 2 as a conic in (v : t : z).
Conic condition_conic(const Poly& q);

// v(w) with q(v(w)) a square in Q(w), for q of degree 1 or 2; nullopt if the
// conic has no rational point.
std::optional<RatFunc> condition_parametrization(const Poly& q,
                                                 const FactorBudget& budget = FactorBudget{});

struct QuarticModel {
  Poly q;
  std::optional<std::pair<Rational, Rational>> point;  // (u0, t0), t0^2 = q(u0)

  void check() const;  // DegenerateQuartic or std::invalid_argument
};

// Birational map t^2 = q(u)  <->  Weierstrass cubic, sending the known point to O.
class QuarticJacobian {
 public:
  const QuarticModel& quartic() const { return Q_; }
  const WeierstrassCurve& curve() const { return E_; }

  // nullopt where the rational map is undefined
  std::optional<Point> forward(const Rational& u, const Rational& t) const;
  std::optional<std::pair<Rational, Rational>> inverse(const Point& P) const;

 private:
  friend QuarticJacobian quartic_jacobian(const QuarticModel& Q);
  QuarticJacobian(QuarticModel Q, WeierstrassCurve E) : Q_(std::move(Q)), E_(std::move(E)) {}

  enum class Kind { Washington, Root, Cubic } kind_ = Kind::Washington;
  QuarticModel Q_;
  WeierstrassCurve E_;
  Rational u0_, t0_;
  Rational a_, b_, c_, d_;  // coefficients of q(u + u0) in the relevant normalization
};

QuarticJacobian quartic_jacobian(const QuarticModel& Q);

}  // namespace ecfam
