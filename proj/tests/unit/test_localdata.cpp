#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <random>

#include "fixtures.hpp"
#include "ecfam/localdata.hpp"

using namespace ecfam;
using testing::curve_of;
using testing::point_of;

namespace {

nlohmann::json oracle() { return testing::oracle_json("localdata_oracle.json"); }

}  // namespace

TEST_CASE("Kodaira symbols") {
  CHECK(Kodaira{1}.symbol() == "I0");
  CHECK(Kodaira{5}.symbol() == "I1");
  CHECK(Kodaira{-1}.symbol() == "I0*");
  CHECK(Kodaira{-7}.symbol() == "I3*");
  CHECK(Kodaira{-2}.symbol() == "II*");
  CHECK(Kodaira{3}.symbol() == "III");
}

TEST_CASE("local data examples") {
  auto E = WeierstrassCurve::from_ab(49, 256);
  auto ld = tate_local(E, 17);
  CHECK(ld.f == 1);
  CHECK(ld.vp_disc_min == 1);
  CHECK(ld.kodaira.symbol() == "I1");
  auto good = tate_local(E, 5);
  CHECK(good.reduction == Reduction::Good);
  CHECK(good.f == 0);
  CHECK(good.c == 1);
  for (long p : {5, 7, 11, 13}) {
    auto A = tate_local(WeierstrassCurve(0, 0, 0, 0, p * p), p);
    CHECK(A.reduction == Reduction::Additive);
    CHECK(A.f == 2);
  }
  auto N11 = conductor(WeierstrassCurve(0, -1, 1, 0, 0));
  CHECK(N11.value() == 11);
  WeierstrassCurve F(1, 1, 1, -1595, -4768);
  Integer N = conductor(F).value();
  CHECK(mpz_divisible_p(F.disc().get_num().get_mpz_t(), N.get_mpz_t()));

  // scaling (x, y) -> (4x, 8y) is undone
  WeierstrassCurve S = Isomorphism{make_rational(1, 2), 0, 0, 0}.apply(F);
  CHECK(S.is_integral());
  CHECK(minimal_model(S).curve == minimal_model(F).curve);
  CHECK(minimal_model(F).curve == F);
}

TEST_CASE("Tate's algorithm against PARI") {
  auto data = oracle();
  REQUIRE(data.size() >= 300);
  std::mt19937_64 rng(41);
  for (const auto& rec : data) {
    WeierstrassCurve E = curve_of(rec["a"]);
    CAPTURE(E.to_string());
    MinimalModel M = minimal_model(E);
    CHECK(M.curve == curve_of(rec["minimal"]));
    CHECK(M.iso.apply(E) == M.curve);
    GlobalReduction G = global_reduction(E);
    REQUIRE(G.complete());
    CHECK(to_string(G.conductor.value()) == rec["N"].get<std::string>());
    std::size_t bad = 0;
    for (const auto& ld : G.local) {
      if (ld.f == 0) continue;
      REQUIRE(bad < rec["local"].size());
      const auto& L = rec["local"][bad++];
      CAPTURE(ld.p);
      CHECK(ld.p == L[0].get<long>());
      CHECK(ld.f == L[1].get<int>());
      CHECK(ld.kodaira.code == L[2].get<int>());
      CHECK(ld.c == L[3].get<int>());
      CHECK(ld.f <= (ld.p == 2 ? 8 : ld.p == 3 ? 5 : 2));
      CHECK((ld.f == 1) == (ld.reduction == Reduction::Split || ld.reduction == Reduction::Nonsplit));
    }
    CHECK(bad == rec["local"].size());
    // invariance under a random integral change of model
    Isomorphism iso{1, Rational(static_cast<long>(rng() % 11) - 5), Rational(static_cast<long>(rng() % 5) - 2),
                    Rational(static_cast<long>(rng() % 9) - 4)};
    WeierstrassCurve E2 = iso.apply(M.curve);
    for (const auto& ld : G.local) {
      auto l2 = tate_local(E2, ld.p);
      CHECK(l2.kodaira.code == ld.kodaira.code);
      CHECK(l2.c == ld.c);
      CHECK(l2.f == ld.f);
    }
  }
}
