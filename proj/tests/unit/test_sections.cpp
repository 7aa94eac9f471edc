#include <doctest.h>

#include <fstream>
#include <json.hpp>

#include "fixtures.hpp"
#include "ecfam/sections.hpp"

using namespace ecfam;
using testing::curve_of;
using testing::point_of;

namespace {

nlohmann::json oracle() { return testing::oracle_json("sections_oracle.json"); }

Poly P(const char* s, const char* var) { return parse_poly(s, var); }
RatFunc R(const char* s, const char* var) { return parse_ratfunc(s, var); }

std::vector<Point> small_points(const WeierstrassCurve& E, std::size_t want) {
  std::vector<Point> out;
  for (long b = 1; b <= 3 && out.size() < want; ++b)
    for (long a = -3000; a <= 3000 && out.size() < want; ++a) {
      if (std::gcd(a, b) != 1) continue;
      for (const auto& P : E.points_with_x(make_rational(a, b * b))) out.push_back(P);
    }
  return out;
}

}  // namespace

TEST_CASE("divisor conditions on the Z/8 model") {
  CurveFamily z8 = model_z8();
  auto conds = divisor_conditions(z8);
  CHECK(conds.size() == 250);
  auto find = [&](const RatFunc& d) -> const DivisorCondition* {
    for (const auto& c : conds)
      if (c.d == d) return &c;
    return nullptr;
  };
  const auto* c1 = find(R("4*v^4", "v"));
  REQUIRE(c1);
  CHECK(c1->condition == P("4*v^2-4*v+5", "v"));
  const auto* c2 = find(R("-(v-1)*v", "v"));
  REQUIRE(c2);
  CHECK(c2->condition == square_class(P("1+v-v^2", "v")));
  for (const auto& c : conds) {
    const auto* dual = find(z8.B / c.d);
    REQUIRE(dual);
    CHECK(dual->condition == c.condition);
  }
  // x = 4 v^4
  RatFunc X = R("4*v^4", "v");
  RatFunc el = X * (X * X + z8.A * X + z8.B);
  auto sd = square_decompose(el.num());
  CHECK(sd.s == P("4*v^4*(2*v-1)", "v"));
  CHECK(sd.q == P("4*v^2-4*v+5", "v"));
  CHECK(condition_for_x(z8, X) == sd.q);
  CHECK(homogeneous_space(z8, X).condition(RatFunc(1), RatFunc(1)) == sd.q);
}

TEST_CASE("homogeneous spaces of rank-1 families") {
  const Catalog& cat = Catalog::builtin();
  struct Case {
    std::string family, child, expected;
  };
  for (const Case& c : {Case{"DP8-17", "DP8R2-6", "30*(3+2*w^2)"}, Case{"DP8-18", "DP8R2-7", "-3+7*w^2"}}) {
    CAPTURE(c.family);
    const CurveFamily& F = cat.family(c.family);
    RatFunc X = parse_ratfunc(cat.entry(c.child).parent_sections.at(0), F.var);
    auto [d, U] = split_square(X);
    CHECK(d * U * U == X);
    HomogeneousSpace H = homogeneous_space(F, d);
    CHECK(H.x(U, RatFunc(1)) == X);
    CHECK(H.condition(U, RatFunc(1)) == square_class(parse_poly(c.expected, F.var)));
    CHECK(condition_for_x(F, X) == square_class(parse_poly(c.expected, F.var)));
  }
}

TEST_CASE("conics") {
  Conic C = Conic::from_form(1, 1, -2, 0, 0, 0);
  auto s = solve_conic(C);
  REQUIRE(s.point);
  CHECK(C.value(*s.point) == 0);

  Conic N = Conic::from_form(1, 1, -3, 0, 0, 0);
  auto n = solve_conic(N);
  CHECK_FALSE(n.point);
  REQUIRE(n.witness);
  CHECK(hilbert_symbol(-1, 3, *n.witness) == -1);
  for (long x = 0; x <= 30; ++x)
    for (long y = 0; y <= 30; ++y)
      for (long z = 1; z <= 30; ++z) CHECK_FALSE(x * x + y * y == 3 * z * z);

  CHECK_THROWS_AS(Conic::from_form(1, -1, 0, 0, 0, 0), DegenerateConic);
  Conic S = Conic::from_form(2, 3, 5, 1, 0, 0);
  CHECK(S.matrix()[0][1] == 1);
  CHECK(S.matrix()[0][0] == 4);

  int solvable = 0;
  const auto data_conics = oracle()["conics"];
  for (const auto& rec : data_conics) {
    std::array<std::array<Integer, 3>, 3> M;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M[i][j] = rec["M"][i][j].get<long>();
    Conic K(M);
    CAPTURE(K.to_string());
    auto r = solve_conic(K);
    CHECK(r.solvable() == rec["solvable"].get<bool>());
    if (r.point) {
      ++solvable;
      CHECK(K.value(*r.point) == 0);
      auto par = parametrize_conic(K, *r.point);
      Poly v;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v += (par[i] * par[j]).scaled(Rational(K.matrix()[i][j]));
      CHECK(v.is_zero());
    } else {
      REQUIRE(r.witness);
      const Integer& p = *r.witness;
      CHECK((p == 0 || mpz_divisible_p(Integer(2 * K.det()).get_mpz_t(), p.get_mpz_t())));
    }
  }
  CHECK(solvable >= 30);
}

TEST_CASE("conic parametrizations") {
  Conic circle = Conic::from_form(1, 1, -1, 0, 0, 0);
  auto par = parametrize_conic(circle, {1, 0, 1});
  CHECK(par[0] == P("1-t^2", "t"));
  CHECK(par[1] == P("2*t", "t"));
  CHECK(par[2] == P("1+t^2", "t"));
  CHECK_THROWS_AS(parametrize_conic(circle, {1, 1, 1}), std::invalid_argument);

  // t^2 = 4v^2 - 4vz + 5z^2 in (v : t : z) through (1 : 4 : 2)
  Poly q = P("4*v^2-4*v+5", "v");
  Conic C = condition_conic(q);
  CHECK(C.value(ProjPoint{-1, 3, 1}) != 0);
  auto pc = parametrize_conic(C, {1, 4, 2});
  RatFunc v(pc[0], pc[2]);
  CHECK(ratfunc_sqrt(RatFunc(q).compose(v)).has_value());
  CHECK(ratfunc_sqrt(RatFunc(q).compose(R("(5-w^2)/(4*(w+1))", "w"))).has_value());
  // the base point is attained: the cross product with p0 vanishes at some t in P^1
  std::array<Integer, 3> p0{1, 4, 2};
  std::array<Poly, 3> cross;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    cross[i] = pc[k].scaled(Rational(p0[j])) - pc[j].scaled(Rational(p0[k]));
  }
  Poly g = gcd(gcd(cross[0], cross[1]), cross[2]);
  bool at_infinity = std::all_of(cross.begin(), cross.end(), [](const Poly& c) { return c.degree() < 2; });
  CHECK((at_infinity || !rational_roots(g).empty()));
  auto v2 = condition_parametrization(P("1+v-v^2", "v"));
  REQUIRE(v2);
  CHECK(ratfunc_sqrt(RatFunc(P("1+v-v^2", "v")).compose(R("(w-2)*w/(w^2+1)", "w"))).has_value());
  CHECK_FALSE(condition_parametrization(P("-1-v^2", "v")).has_value());
  CHECK(condition_parametrization(P("3*v-7", "v")).has_value());

  const Catalog& cat = Catalog::builtin();
  for (const auto& e : cat.entries()) {
    if (e.condition.empty()) continue;
    CAPTURE(e.id);
    Poly cond = parse_poly(e.condition, cat.entry(e.parent).var);
    if (cond.degree() != 2 && cond.degree() != 1) continue;
    auto sub = condition_parametrization(cond);
    CHECK(sub.has_value());
  }
}

TEST_CASE("quartic to cubic") {
  struct Printed {
    const char* id;
    std::vector<std::vector<long>> models;
  };
  std::vector<Printed> printed{
      {"R3-8-1", {{0, -463, 0, 45936, 0}, {1, 1, 1, -1595, -4768}}},
      {"R3-8-2", {{0, 1770, 0, -108900, -192753000}}},
      {"R3-8-3", {{0, 453, 0, -37584, -817452}, {0, 0, 0, -105987, 11743634}}},
      {"R3-26-3", {{0, -1, 0, -456, 3456}}},
      {"R3-26-4", {{0, -1, 0, -456, 3456}}},
  };
  int matched = 0, total = 0;
  const auto data_quartics = oracle()["quartics"];
  for (const auto& rec : data_quartics) {
    std::string id = rec["id"];
    CAPTURE(id);
    std::vector<Integer> c;
    for (const auto& x : rec["q"]) c.emplace_back(x.get<long>());
    QuarticModel Q{Poly::from_integers(c), std::make_pair(parse_rational(rec["point"][0].get<std::string>()),
                                                         parse_rational(rec["point"][1].get<std::string>()))};
    QuarticJacobian J = quartic_jacobian(Q);
    CHECK(isomorphic_over_q(J.curve(), curve_of(rec["jacobian"])));
    for (const auto& p : printed)
      if (p.id == id)
        for (const auto& m : p.models) {
          std::vector<Rational> a(m.begin(), m.end());
          CHECK(isomorphic_over_q(J.curve(), WeierstrassCurve(a)));
          ++matched;
        }
    auto O = J.forward(Q.point->first, Q.point->second);
    REQUIRE(O);
    CHECK(O->inf);
    auto back = J.inverse(Point::infinity());
    REQUIRE(back);
    CHECK(*back == *Q.point);

    auto gens = small_points(J.curve(), 4);
    for (long a = -40; a <= 40 && gens.size() < 8; ++a)
      for (long b = 1; b <= 6; ++b) {
        Rational u = make_rational(a, b);
        if (auto t = square_test(Q.q.eval(u)))
          if (auto img = J.forward(u, *t); img && !img->inf) gens.push_back(*img);
      }
    std::vector<Point> pts;
    for (const auto& g : gens)
      for (long k = 1; k <= 6 && pts.size() < 50; ++k) {
        pts.push_back(J.curve().mul(g, k));
        if (gens.size() > 1) pts.push_back(J.curve().add(J.curve().mul(g, k), gens[0]));
      }
    int checked = 0;
    for (const auto& P : pts) {
      auto ut = J.inverse(P);
      if (!ut) continue;
      CHECK(ut->second * ut->second == Q.q.eval(ut->first));
      auto P2 = J.forward(ut->first, ut->second);
      if (!P2) continue;
      CHECK(*P2 == P);
      ++checked;
    }
    if (!pts.empty()) CHECK(checked > 0);
    total += checked;
  }
  CHECK(total >= 500);
  CHECK(matched == 7);

  QuarticModel square{P("(u^2-1)^2", "u"), std::nullopt}, conic{P("u^2+1", "u"), std::nullopt};
  QuarticModel off{P("u^4+1", "u"), std::make_pair(Rational(1), Rational(1))};
  CHECK_THROWS_AS(square.check(), DegenerateQuartic);
  CHECK_THROWS_AS(conic.check(), DegenerateQuartic);
  CHECK_THROWS_AS(quartic_jacobian(off), std::invalid_argument);
  // a rational root as the known point
  QuarticModel root{P("(u-2)*(u^3+u+5)", "u"), std::make_pair(Rational(2), Rational(0))};
  QuarticJacobian JR = quartic_jacobian(root);
  auto ut = JR.inverse(JR.curve().mul(small_points(JR.curve(), 1).at(0), 1));
  if (ut) CHECK(ut->second * ut->second == root.q.eval(ut->first));
}

TEST_CASE("rank-3 conditions of the catalog") {
  const Catalog& cat = Catalog::builtin();
  int with_model = 0;
  for (const auto& r : cat.rank3_conditions()) {
    CAPTURE(r.id);
    const CurveFamily& F = cat.family(r.family);
    CHECK(condition_for_x(F, r.X) == square_class(r.quartic));
    QuarticJacobian J = quartic_jacobian(QuarticModel{r.quartic, std::make_pair(r.u0, r.t0)});
    if (r.model) {
      CHECK(isomorphic_over_q(J.curve(), WeierstrassCurve(*r.model)));
      ++with_model;
    }
  }
  CHECK(with_model == 3);
}
