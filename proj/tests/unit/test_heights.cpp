#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <random>

#include "fixtures.hpp"
#include "ecfam/families.hpp"
#include "ecfam/heights.hpp"

using namespace ecfam;
using testing::curve_of;
using testing::point_of;

namespace {

nlohmann::json oracle() { return testing::oracle_json("heights_oracle.json"); }

Real real(const nlohmann::json& s) { return Real(s.get<std::string>()); }

}  // namespace

TEST_CASE("heights against PARI") {
  const auto data = oracle();
  REQUIRE(data["curves"].size() >= 100);
  int checked = 0;
  for (const auto* group : {&data["curves"], &data["named"]}) {
    for (const auto& rec : *group) {
      WeierstrassCurve E = curve_of(rec["a"]);
      CAPTURE(E.to_string());
      HeightContext ctx(E);
      std::vector<Point> pts;
      for (const auto& p : rec["points"]) pts.push_back(point_of(p));
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CAPTURE(pts[i].to_string());
        HeightValue h = ctx.height(pts[i]);
        CHECK(h.error <= Real(1e-10));
        CHECK(abs(h.value - real(rec["heights"][i])) < Real(1e-10));
        ++checked;
      }
      auto M = height_pairing_matrix(E, pts);
      CHECK(M.symmetric());
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
          CHECK(abs(M.entries[i][j] - real(rec["pairing"][i][j])) < Real(1e-9));
      for (const auto& t : rec["torsion"]) CHECK(abs(ctx.height(point_of(t)).value) < Real(1e-10));
    }
  }
  CHECK(checked >= 150);
}

TEST_CASE("independence certificates") {
  WeierstrassCurve E(1, 1, 1, -1595, -4768);
  Point P1{make_rational(-57, 4), make_rational(1043, 8)}, P2{42, -89};
  auto C = independence_certificate(E, {P1, P2});
  CHECK(C.independent());
  CHECK(C.gram.det > Real(1e-6));
  CHECK(abs(C.gram.entries[0][0] - Real("1.671787854157769094051715694424027363663")) < Real(1e-10));

  auto D = independence_certificate(E, {P1, E.dbl(P1)});
  CHECK(D.result == Independence::Inconclusive);
  CHECK(abs(D.gram.det) < Real(1e-8));

  CHECK(independence_certificate(WeierstrassCurve(0, 0, 0, -105987, 11743634), {Point{-77, -4410}, Point{805, 21168}})
            .independent());
  CHECK(independence_certificate(WeierstrassCurve(0, -1, 0, -456, 3456),
                                 {Point{20, -44}, Point{make_rational(4, 9), make_rational(-1540, 27)}})
            .independent());
}

TEST_CASE("rank-2 specializations are certified") {
  const Catalog& cat = Catalog::builtin();
  int rows = 0;
  for (const auto& e : cat.entries()) {
    const CurveFamily& F = cat.family(e.id);
    if (!F.specialization) continue;
    CAPTURE(e.id);
    auto s = specialize(F, *F.specialization);
    std::vector<Point> listed;
    for (std::size_t i = 0; i < F.sections.size(); ++i)
      if (F.sections[i].origin == "listed") listed.push_back(s.sections[i]);
    REQUIRE(listed.size() == 2);
    HeightOptions opt;
    opt.hints = discriminant_hints(F, *F.specialization);
    auto C = independence_certificate(s.curve, listed, opt);
    CAPTURE(to_string(C.gram.det));
    CHECK(C.independent());
    ++rows;
  }
  CHECK(rows == 12);
}

TEST_CASE("height quadraticity, parallelogram law and torsion invariance") {
  const auto data = oracle();
  std::mt19937_64 rng(47);
  int samples = 0;
  for (const auto& rec : data["curves"]) {
    WeierstrassCurve E = curve_of(rec["a"]);
    HeightContext ctx(E);
    std::vector<Point> pts;
    for (const auto& p : rec["points"]) pts.push_back(point_of(p));
    const Point& P = pts[rng() % pts.size()];
    Point Q = pts.size() > 1 ? pts[rng() % pts.size()] : E.add(P, P);
    Real eps(1e-10);
    HeightValue hP = ctx.height(P), hQ = ctx.height(Q);
    CHECK(abs(ctx.height(E.dbl(P)).value - 4 * hP.value) < 5 * eps);
    Real lhs = ctx.height(E.add(P, Q)).value + ctx.height(E.add(P, E.neg(Q))).value;
    CHECK(abs(lhs - 2 * hP.value - 2 * hQ.value) < 6 * eps);
    for (const auto& t : rec["torsion"]) {
      Point T = point_of(t);
      CHECK(abs(ctx.pairing(E.add(P, T), Q).value - ctx.pairing(P, Q).value) < 4 * eps);
    }
    ++samples;
  }
  CHECK(samples >= 100);
}
