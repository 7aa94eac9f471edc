#include <doctest.h>

#include <map>
#include <mutex>
#include <random>

#include "fixtures.hpp"
#include "ecfam/scan.hpp"

using namespace ecfam;
using testing::curve_of;

namespace {

const char* kC = "r^2*s^2 - 29*r^2 + 10*r*s^2 - 120*r*s + 290*r - 11*s^2 + 319";
const char* kD1 = "r^2*s - 24*r*s^2 + 168*r*s - 336*r + 360*s^2 - 2700*s + 5040";
const char* kD2 = "r^2*s^2 - 15/2*r^2*s + 14*r^2 - 12*r*s^2 + 84*r*s - 168*r + 90*s";

}  // namespace

TEST_CASE("biquadratic curves and involutions") {
  auto C = BiquadraticCurve::parse(kC);
  CHECK(C.on_curve({-1, 0}));
  auto [t1, t2] = involutions(C, {-1, 0});
  CHECK(t1 == RS{-1, 6});
  CHECK(C.on_curve(t1));
  CHECK(C.on_curve(t2));
  CHECK(tau1(C, t1) == RS{-1, 0});
  CHECK(BiquadraticCurve::parse(C.to_string()).coeffs() == C.coeffs());
  CHECK_THROWS_AS(tau1(C, {0, 0}), PointNotOnCurve);
  CHECK_THROWS_AS(BiquadraticCurve::parse("r*s^3 + 1"), std::invalid_argument);
  // s~ = 120 r / (r^2 + 10 r - 11) - s
  CHECK(t1.s == Rational(-120) / Rational(1 - 10 - 11) - 0);
}

TEST_CASE("involutions are involutive on random points") {
  std::mt19937_64 rng(53);
  for (const char* text : {kC, kD1, kD2}) {
    CAPTURE(text);
    auto C = BiquadraticCurve::parse(text);
    auto pts = testing::involution_samples(C, std::string(text) == kC, rng);
    int checked = 0;
    for (const auto& p : pts) {
      REQUIRE(C.on_curve(p));
      try {
        RS a = tau1(C, p);
        CHECK(C.on_curve(a));
        CHECK(tau1(C, a) == p);
        RS b = tau2(C, p);
        CHECK(C.on_curve(b));
        CHECK(tau2(C, b) == p);
        ++checked;
      } catch (const DegenerateFiber&) {
      }
    }
    CHECK(checked >= 100);
  }
}

TEST_CASE("psi involutions on the first curve") {
  auto C = BiquadraticCurve::parse(kC);
  ScanSpec first = builtin_scan("first");
  ScanMap map(first, Catalog::builtin());
  int checked = 0;
  for (int n = -3; n <= 3; ++n)
    for (int m = -3; m <= 3; ++m) {
      auto v = map(lattice_point(first, n, m));
      if (!v || !v->second) continue;
      RS p{v->first, *v->second};
      Rational r = p.r;
      if (r * r - 10 * r - 11 == 0 || r * r + 10 * r - 11 == 0) continue;
      RS a = psi1(C, p);
      CHECK(C.on_curve(a));
      CHECK(a == RS{-r, (p.s * (r * r + 10 * r - 11) - 120 * r) / (r * r - 10 * r - 11)});
      CHECK(psi1(C, a) == p);
      RS b = psi2(C, p);
      CHECK(C.on_curve(b));
      CHECK(b == tau1(C, a));
      ++checked;
    }
  CHECK(checked >= 20);
  CHECK_THROWS_AS(psi1(C, {-1, 0}), DegenerateFiber);
}

TEST_CASE("quartic correspondence") {
  auto C = BiquadraticCurve::parse(kC);
  CHECK(quartic_correspondence(C, Var::S).q == parse_poly("29*r^4 + 62*r^2 + 3509", "r"));
  auto D1 = BiquadraticCurve::parse(kD1), D2 = BiquadraticCurve::parse(kD2);
  Poly q1 = quartic_correspondence(D1, Var::R).q, q2 = quartic_correspondence(D2, Var::R).q;
  CHECK(q1 == q2);
  CHECK(q1 == parse_poly("4*r^4 - 66*r^3 + 383*r^2 - 924*r + 784", "r"));
  CHECK(quartic_correspondence(D1, Var::S).q == quartic_correspondence(D2, Var::S).q);
  CHECK(quartic_correspondence(BiquadraticCurve::parse("s^2 - 2*r^2 - 3*r - 5"), Var::S).q ==
        parse_poly("2*r^2 + 3*r + 5", "r"));
}

namespace {

const ScanGrid& radius2(const std::string& name) {
  static std::map<std::string, ScanGrid> grids;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = grids.find(name);
  if (it == grids.end()) it = grids.emplace(name, lattice_scan(builtin_scan(name))).first;
  return it->second;
}

}  // namespace

TEST_CASE("radius-2 grids agree with PARI") {
  const auto data = testing::oracle_json("scan_oracle.json");
  for (const auto& name : builtin_scan_names()) {
    CAPTURE(name);
    const ScanGrid& g = radius2(name);
    CHECK(g.cells.size() == 25);
    int matched = 0;
    for (const auto& rec : data.at(name)) {
      const ScanCell* c = g.find(rec["n"].get<int>(), rec["m"].get<int>());
      REQUIRE(c);
      CAPTURE(c->n);
      CAPTURE(c->m);
      CHECK(to_string(*c->u) == rec["u"].get<std::string>());
      if (!c->complete) continue;
      CHECK(c->root == rec["w"].get<int>());
      REQUIRE(c->curve);
      CHECK(*c->curve == curve_of(rec["minimal"]));
      ++matched;
    }
    CHECK(matched == g.counts.plus + g.counts.minus);
    CHECK(matched >= 20);
  }
  const ScanCell* origin = radius2("first").find(0, 0);
  REQUIRE(origin);
  CHECK(origin->skipped);
  CHECK(origin->note == "degenerate parameter");
}

TEST_CASE("symmetry audit") {
  for (const auto& name : builtin_scan_names()) {
    CAPTURE(name);
    ScanSpec spec = builtin_scan(name);
    const ScanGrid& g = radius2(name);
    auto audit = symmetry_audit(g, spec.symmetry);
    CHECK(audit.violations.empty());
    CHECK(audit.pairs >= 5);
    CHECK(audit.isomorphism_checked > 0);
    CHECK(audit.isomorphism_failures == 0);

    auto same = symmetry_audit(g, Symmetry{0, 0, true});
    CHECK(same.violations.empty());

    // flip one complete cell whose partner is complete
    ScanGrid bad = g;
    for (auto& c : bad.cells) {
      auto [n2, m2] = spec.symmetry.apply(c.n, c.m);
      const ScanCell* p = g.find(n2, m2);
      if (!c.complete || !p || !p->complete || (n2 == c.n && m2 == c.m)) continue;
      c.root = -c.root;
      break;
    }
    CHECK(symmetry_audit(bad, spec.symmetry, 0).violations.size() == 1);
  }
}

TEST_CASE("scans are deterministic") {
  ScanSpec spec = builtin_scan("third");
  spec.threads = 3;
  CHECK(lattice_scan(spec).to_csv() == radius2("third").to_csv());
  CHECK(lattice_scan(spec).to_json(true) == radius2("third").to_json(true));
}

TEST_CASE("2-torsion translates give isomorphic curves") {
  for (const auto& name : builtin_scan_names()) {
    CAPTURE(name);
    ScanSpec spec = builtin_scan(name);
    ScanMap map(spec, Catalog::builtin());
    const CurveFamily& F = Catalog::builtin().family(spec.family);
    const auto& E = spec.parametrizer;
    int checked = 0;
    for (const auto& t : torsion_subgroup(E).points) {
      if (t.inf) continue;
      for (int n = -1; n <= 1; ++n)
        for (int m = -1; m <= 1; ++m) {
          Point P = lattice_point(spec, n, m);
          auto a = map(P), b = map(E.add(P, t));
          if (!a || !b) continue;
          try {
            auto sa = specialize(F, a->first), sb = specialize(F, b->first);
            CHECK(isomorphic_over_q(sa.curve, sb.curve));
            ++checked;
          } catch (const BadSpecialization&) {
          }
        }
    }
    CHECK(checked >= 15);
  }
}

TEST_CASE("scan spec JSON round trip") {
  for (const auto& name : builtin_scan_names()) {
    ScanSpec spec = builtin_scan(name);
    auto j = spec.to_json();
    ScanSpec back = ScanSpec::from_json(j);
    CHECK(back.to_json() == j);
    back.validate(Catalog::builtin());
  }
  auto j = builtin_scan("first").to_json();
  j["generators"][0][1] = "1";
  CHECK_THROWS_AS(ScanSpec::from_json(j).validate(Catalog::builtin()), std::invalid_argument);
}
