#pragma once

#include <array>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecfam/families.hpp"
#include "ecfam/sections.hpp"

namespace ecfam {

class DegenerateFiber : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct RS {
  Rational r, s;
  friend bool operator==(const RS& a, const RS& b) { return a.r == b.r && a.s == b.s; }
  friend bool operator!=(const RS& a, const RS& b) { return !(a == b); }
};

enum class Var { R, S };

// sum c[i][j] r^i s^j = 0 with i, j <= 2
class BiquadraticCurve {
 public:
  explicit BiquadraticCurve(const std::array<std::array<Rational, 3>, 3>& c);
  // polynomial expression in r and s, e.g. "r^2*s^2 - 29*r^2 + 10*r*s^2"
  static BiquadraticCurve parse(const std::string& text);

  const std::array<std::array<Rational, 3>, 3>& coeffs() const { return c_; }
  Rational eval(const RS& p) const;
  bool on_curve(const RS& p) const { return eval(p) == 0; }
  // the curve as a polynomial in `v` whose coefficients are polynomials in the other variable
  std::array<Poly, 3> in(Var v) const;
  Poly discriminant(Var v) const;  // b^2 - 4ac of the quadratic in v
  std::string to_string() const;

 private:
  std::array<std::array<Rational, 3>, 3> c_;
};

// tau1 swaps the two roots in s, tau2 the two roots in r.
RS tau1(const BiquadraticCurve& C, const RS& p);
RS tau2(const BiquadraticCurve& C, const RS& p);
std::pair<RS, RS> involutions(const BiquadraticCurve& C, const RS& p);

// (r, s) -> (-r, s') with the root chosen by sqrt(disc) = 2 a(r) s + b(r); needs disc in s even in r.
RS psi1(const BiquadraticCurve& C, const RS& p);
RS psi2(const BiquadraticCurve& C, const RS& p);  // tau1 o psi1

// Eliminating `v`: the discriminant in v with its square content removed.
QuarticModel quartic_correspondence(const BiquadraticCurve& C, Var eliminate);

// (n, m) -> (-n + dn, -m + dm); identity when `identity` is set.
struct Symmetry {
  int dn = 0, dm = 0;
  bool identity = false;

  std::pair<int, int> apply(int n, int m) const {
    return identity ? std::pair{n, m} : std::pair{-n + dn, -m + dm};
  }
  std::string to_string() const;
};

struct ScanSpec {
  std::string name;
  WeierstrassCurve parametrizer{0, 0, 0, -1, 0};
  std::vector<Point> generators;       // G1, G2
  std::vector<Point> torsion;          // torsion generators of the parametrizer
  std::optional<Point> translate;      // coset representative added to every lattice point
  std::string condition;               // rank-3 condition: quartic, base point and family
  std::string family;                  // family specialized at u; defaults to the condition's family
  std::optional<BiquadraticCurve> curve;  // the quartic is the discriminant of `curve` in `partner`
  std::optional<RS> base_point;        // image of O on `curve`
  std::string partner_family;          // family specialized at the partner coordinate
  int orientation = 1;                 // lattice point T or -T (f versus f composed with [-1])
  int radius = 2;                      // |n|, |m| <= radius
  Symmetry symmetry;
  FactorBudget budget;                 // builtin scans: no time limit, so grids are reproducible
  unsigned threads = 0;

  void validate(const Catalog& cat) const;  // std::invalid_argument
  nlohmann::json to_json() const;
  static ScanSpec from_json(const nlohmann::json& j);
};

// The three parametrizing curves with their generators: "first", "second", "third".
ScanSpec builtin_scan(const std::string& name);
std::vector<std::string> builtin_scan_names();

struct ScanCell {
  int n = 0, m = 0;
  int root = 0;  // +-1, 0 when unknown
  bool complete = false;
  bool skipped = false;
  std::string note;
  std::optional<Rational> u;        // family parameter
  std::optional<Rational> partner;  // the other coordinate on `curve`
  std::optional<WeierstrassCurve> curve;  // global minimal model of the specialization
  std::string torsion;
  std::optional<bool> partner_isomorphic;
  std::vector<Integer> unresolved;
};

struct ScanCounts {
  int plus = 0, minus = 0, incomplete = 0, skipped = 0;
};

struct ScanGrid {
  std::string name;
  std::vector<ScanCell> cells;  // sorted by (n, m)
  ScanCounts counts;

  const ScanCell* find(int n, int m) const;
  ScanCounts tally() const;
  std::string to_csv() const;
  nlohmann::json to_json(bool with_curves = false) const;
};

// The point of the parametrizer for cell (n, m), after orientation and translate.
Point lattice_point(const ScanSpec& spec, int n, int m);

// Family parameter and partner coordinate for a parametrizer point; nullopt where the map is undefined.
struct ScanMap {
  ScanMap(const ScanSpec& spec, const Catalog& cat);

  std::optional<std::pair<Rational, std::optional<Rational>>> operator()(const Point& T) const;
  const QuarticJacobian& jacobian() const { return J_; }

 private:
  const ScanSpec& spec_;
  Rational mu_;  // sqrt of disc / quartic
  QuarticJacobian J_;
  Isomorphism to_jacobian_;
};

ScanGrid lattice_scan(const ScanSpec& spec, const Catalog& cat = Catalog::builtin());

struct AuditReport {
  Symmetry symmetry;
  int pairs = 0;  // complete symmetric pairs compared
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> violations;
  int isomorphism_checked = 0;
  int isomorphism_failures = 0;

  nlohmann::json to_json() const;
};

AuditReport symmetry_audit(const ScanGrid& grid, const Symmetry& sym, int isomorphism_samples = 8);

}  // namespace ecfam
