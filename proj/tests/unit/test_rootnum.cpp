#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <random>

#include "fixtures.hpp"
#include "ecfam/rootnum.hpp"

using namespace ecfam;
using testing::curve_of;
using testing::point_of;

namespace {

nlohmann::json oracle() { return testing::oracle_json("localdata_oracle.json"); }

}  // namespace

TEST_CASE("root number examples") {
  CHECK(global_root_number(WeierstrassCurve(0, -1, 1, 0, 0)).value == 1);   // 11a
  CHECK(global_root_number(WeierstrassCurve(0, 0, 1, -1, 0)).value == -1);  // 37a
  auto R = global_root_number(WeierstrassCurve(0, 0, 1, -7, 6));            // 5077a
  CHECK(R.value == -1);
  CHECK(R.complete);
  CHECK(R.local.at(Integer(5077)) == 1);
}

TEST_CASE("root numbers against PARI") {
  auto data = oracle();
  REQUIRE(data.size() >= 200);
  std::mt19937_64 rng(43);
  int plus = 0, minus = 0;
  for (const auto& rec : data) {
    WeierstrassCurve E = curve_of(rec["a"]);
    CAPTURE(E.to_string());
    RootNumber R = global_root_number(E);
    REQUIRE(R.complete);
    CHECK(R.value == rec["w"].get<int>());
    (R.value == 1 ? plus : minus)++;
    for (const auto& L : rec["local"]) {
      Integer p(L[0].get<long>());
      CAPTURE(p);
      REQUIRE(R.local.count(p));
      CHECK(R.local.at(p) == L[4].get<int>());
    }
    Isomorphism iso{make_rational(1, 1 + static_cast<long>(rng() % 3)), Rational(static_cast<long>(rng() % 7) - 3),
                    Rational(static_cast<long>(rng() % 3) - 1), make_rational(static_cast<long>(rng() % 5) - 2, 3)};
    CHECK(global_root_number(iso.apply(E)).value == R.value);
  }
  CHECK(plus > 50);
  CHECK(minus > 50);
}
