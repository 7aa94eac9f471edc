#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecfam/curves.hpp"
#include "ecfam/polyq.hpp"

namespace ecfam {

class NotASection : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateSubstitution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class BadSpecialization : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Chord-tangent law on a long Weierstrass model over any field type F
// (Rational, RatFunc).
template <class F>
struct GenericPoint {
  F x, y;
  bool inf = false;
  friend bool operator==(const GenericPoint& a, const GenericPoint& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.x == b.x && a.y == b.y;
  }
};

template <class F>
GenericPoint<F> generic_add(const std::array<F, 5>& a, const GenericPoint<F>& P,
                            const GenericPoint<F>& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  F lambda, nu;
  if (P.x == Q.x) {
    F d = P.y + Q.y + a[0] * Q.x + a[2];
    if (d == F(0)) return GenericPoint<F>{F(0), F(1), true};
    F den = F(2) * P.y + a[0] * P.x + a[2];
    lambda = (F(3) * P.x * P.x + F(2) * a[1] * P.x + a[3] - a[0] * P.y) / den;
    nu = (-(P.x * P.x * P.x) + a[3] * P.x + F(2) * a[4] - a[2] * P.y) / den;
  } else {
    F dx = Q.x - P.x;
    lambda = (Q.y - P.y) / dx;
    nu = (P.y * Q.x - Q.y * P.x) / dx;
  }
  F x3 = lambda * lambda + a[0] * lambda - a[1] - P.x - Q.x;
  F y3 = -((lambda + a[0]) * x3) - nu - a[2];
  return GenericPoint<F>{x3, y3, false};
}

template <class F>
GenericPoint<F> generic_neg(const std::array<F, 5>& a, const GenericPoint<F>& P) {
  if (P.inf) return P;
  return GenericPoint<F>{P.x, -P.y - a[0] * P.x - a[2], false};
}

template <class F>
bool generic_on_curve(const std::array<F, 5>& a, const GenericPoint<F>& P) {
  if (P.inf) return true;
  return P.y * P.y + a[0] * P.x * P.y + a[2] * P.y ==
         P.x * P.x * P.x + a[1] * P.x * P.x + a[3] * P.x + a[4];
}

// y^2 + (1-c)xy - by = x^3 - bx^2
template <class F>
std::array<F, 5> tate_normal_form(const F& b, const F& c) {
  return {F(1) - c, -b, -b, F(0), F(0)};
}

// kP for k in {-4..4} \ {0}, P = (0,0) on E(b,c), by the group law.
template <class F>
std::map<int, GenericPoint<F>> tate_point_multiples(const F& b, const F& c) {
  auto a = tate_normal_form(b, c);
  std::map<int, GenericPoint<F>> out;
  GenericPoint<F> P{F(0), F(0), false}, M = P;
  for (int k = 1; k <= 4; ++k) {
    out[k] = M;
    out[-k] = generic_neg(a, M);
    M = generic_add(a, M, P);
  }
  return out;
}

struct Section {
  RatFunc X, Y;
  std::string origin;  // "listed", "condition", "torsion", "inherited:<id>", "user"
};

struct RecipeStep {
  std::string parent;
  std::string parent_var;
  RatFunc sub;
  RatFunc scale;  // sections move by X -> scale^2 X(sub), Y -> scale^3 Y(sub)
};

// y^2 = x^3 + A(u) x^2 + B(u) x over Q(u).
struct CurveFamily {
  std::string id;
  std::string var = "u";
  std::string torsion;  // label as in TorsionGroup::label()
  RatFunc A, B;
  unsigned rank_lower_bound = 0;
  std::vector<Section> sections;
  std::vector<Section> torsion_generators;
  std::vector<RecipeStep> recipe;
  std::optional<Poly> condition;  // in the parent variable
  std::optional<Rational> specialization;

  RatFunc discriminant() const;  // B^2 (A^2 - 4B)
  RatFunc j() const;
  std::vector<Section> listed_sections() const;
};

struct NormalizedModel {
  RatFunc A, B;
  RatFunc scale;  // A_new = scale^2 A, B_new = scale^4 B
};
// Clears denominators one irreducible factor at a time and removes p^2 / p^4
// pairs from the contents, leaving polynomial coefficients.
NormalizedModel normalize_model(const RatFunc& A, const RatFunc& B,
                                const FactorBudget& budget = FactorBudget{});

CurveFamily model_z8();
CurveFamily model_z2x6();
CurveFamily model_z6();  // y^2 = x^3 + A6(d) x^2 + B6(d) x

CurveFamily substitute_parameter(const CurveFamily& F, const RatFunc& sub,
                                 const std::string& new_var = "w", const std::string& new_id = "");

// Y with Y^2 = X^3 + A X^2 + B X, or NotASection.
RatFunc verify_section(const CurveFamily& F, const RatFunc& X);
const Section& add_section(CurveFamily& F, const RatFunc& X, const std::string& origin = "user");

struct Specialization {
  Rational u;
  Rational A, B;
  WeierstrassCurve curve;
  std::vector<Point> sections;  // same order as family.sections
  std::vector<Point> torsion;   // same order as family.torsion_generators
};
Specialization specialize(const CurveFamily& F, const Rational& u0);

// |g(u0)| (homogenized) for the irreducible factors g of the discriminant, for factor() hints.
std::vector<Integer> discriminant_hints(const CurveFamily& F, const Rational& u0);

struct Rank3Condition {
  std::string id, family;
  RatFunc X;
  Poly quartic;
  Rational u0, t0;
  std::optional<std::vector<Rational>> model;  // printed cubic model
};

struct CatalogEntry {
  std::string id;
  std::string var;
  std::string parent;  // empty for base models
  std::string model;   // "z8" or "z2x6" for base models
  std::string sub;
  std::string torsion;
  unsigned rank_lower_bound = 0;
  std::vector<std::string> parent_sections;
  std::vector<std::string> sections;
  std::string condition;
  std::string specialization;
};

class Catalog {
 public:
  static Catalog load(const std::string& path);
  static const Catalog& builtin();  // ECFAM_CATALOG or the compiled-in path
  static std::string default_path();

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry& entry(const std::string& id) const;
  bool contains(const std::string& id) const;
  std::vector<std::string> ids() const;
  const std::vector<Rank3Condition>& rank3_conditions() const { return rank3_; }

  // Materialized on demand and cached; thread-safe.
  const CurveFamily& family(const std::string& id) const;

  Catalog(Catalog&& other) noexcept;
  Catalog() = default;

 private:
  std::vector<CatalogEntry> entries_;
  std::vector<Rank3Condition> rank3_;
  mutable std::map<std::string, std::shared_ptr<const CurveFamily>> cache_;
  mutable std::unique_ptr<std::recursive_mutex> mu_ = std::make_unique<std::recursive_mutex>();
};

}  // namespace ecfam
