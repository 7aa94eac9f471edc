#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <random>

#include "fixtures.hpp"
#include "ecfam/expr_parser.hpp"
#include "ecfam/polyq.hpp"

using namespace ecfam;

namespace {

Poly P(const char* s, const char* var = "x") { return parse_poly(s, var); }

std::vector<std::pair<int, unsigned>> pattern(const PolyFactorization& f) {
  std::vector<std::pair<int, unsigned>> out;
  for (const auto& [g, e] : f.factors) out.emplace_back(g.degree(), e);
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json printed() { return testing::printed_json(); }

Poly random_poly(std::mt19937_64& rng, int deg, int range) {
  std::vector<Rational> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(static_cast<long>(rng() % (2 * range + 1)) - range);
  if (c.back() == 0) c.back() = 1;
  return Poly(c);
}

}  // namespace

TEST_CASE("parser and printer") {
  Poly p = P("-16*(x-11)^3*(x-1)");
  CHECK(p.degree() == 4);
  CHECK(p.lead() == -16);
  CHECK(p.eval(0) == Rational(16 * -1331 * -1) * -1);
  CHECK(P("2x(x+1)") == P("2*x^2 + 2*x"));
  CHECK(P("x**3") == P("x^3"));
  CHECK(P(P("3*x^4 - 1/2*x + 7").to_string().c_str()) == P("3*x^4 - 1/2*x + 7"));
  CHECK_THROWS_AS(P("x + y"), ParseError);
  CHECK_THROWS_AS(P("(x+1"), ParseError);
  RatFunc f = parse_ratfunc("(5-w^2)/(4*(w+1))", "w");
  CHECK(f.den() == P("x + 1"));
  CHECK(f.eval(1) == Rational(1, 2));
  CHECK_THROWS(f.eval(-1));
}

TEST_CASE("division, gcd and composition") {
  Poly a = P("x^5 - 3*x^3 + x - 7"), b = P("2*x^2 + 1");
  auto [q, r] = divmod(a, b);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());
  Poly g = gcd(P("(x-1)*(x+2)^2*(3*x-5)"), P("(x+2)*(3*x-5)*(x^2+1)"));
  CHECK(g == P("(x+2)*(x-5/3)"));
  CHECK(P("x^2+1").compose(P("x-1")) == P("x^2 - 2*x + 2"));
  RatFunc w = parse_ratfunc("x/(x+1)", "x");
  CHECK(w.compose(w) == parse_ratfunc("x/(2*x+1)", "x"));
}

TEST_CASE("squarefree factorization and square decomposition") {
  auto sf = squarefree_factorization(P("3*x^2*(x-1)^3*(x+4)"));
  REQUIRE(sf.size() == 3);
  Poly A8 = P("1-8*v+16*v^2-16*v^3+8*v^4", "v");
  Poly B8 = P("16*(v-1)^4*v^4", "v");
  Poly d = P("4*v^4", "v");
  Poly el = d * d * d + A8 * d * d + B8 * d;
  auto sd = square_decompose(el);
  CHECK(sd.s == P("4*v^4*(2*v-1)", "v"));
  CHECK(sd.q == P("4*v^2-4*v+5", "v"));
  auto sd2 = square_decompose(B8 * P("8*v^2-8*v+1", "v"));
  CHECK(sd2.s == P("4*(v-1)^2*v^2", "v"));
  CHECK(sd2.q == P("8*v^2-8*v+1", "v"));
  auto sd3 = square_decompose(P("-12*x^3"));
  CHECK(sd3.s == P("2*x"));
  CHECK(sd3.q == P("-3*x"));
}

TEST_CASE("disc_shifted_cubic") {
  Poly A6 = P("1+6*d-3*d^2", "d"), B6 = P("-16*d^3", "d");
  CHECK(disc_shifted_cubic(A6, B6) == P("256*d^6*(d+1)^3*(9*d+1)", "d"));
  CHECK(disc_shifted_cubic(Poly(0), Poly(1)) == Poly(-4));
  Poly A8 = P("1-8*v+16*v^2-16*v^3+8*v^4", "v");
  Poly B8 = P("16*(v-1)^4*v^4", "v");
  CHECK(A8 * A8 - B8.scaled(4) == P("(8*v^2-8*v+1)*(2*v-1)^4", "v"));
}

TEST_CASE("poly_sqrt") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Poly s = random_poly(rng, static_cast<int>(rng() % 9), 50);
    if (s.lead() < 0) s = -s;
    auto r = poly_sqrt(s * s);
    REQUIRE(r.has_value());
    CHECK(*r == s);
    if (s.degree() >= 1) CHECK_FALSE(poly_sqrt(s * s * P("x^2+x+1") * P("x^2+2")).has_value());
  }
  CHECK_FALSE(poly_sqrt(P("2*x^2")).has_value());
  CHECK(poly_sqrt(P("1/4*x^2 + x + 1")) == P("1/2*x + 1"));
}

TEST_CASE("factorization over Q") {
  auto f1 = factor_poly(P("x^8-1"));
  CHECK(pattern(f1) == std::vector<std::pair<int, unsigned>>{{1, 1}, {1, 1}, {2, 1}, {4, 1}});
  auto f2 = factor_poly(P("x^4 - 10*x^2 + 1"));
  CHECK(f2.factors.size() == 1);
  Poly p3 = P("(3*x^2-5*x+7)*(2*x^3+x-9)^2*(x+4)*5/7");
  auto f3 = factor_poly(p3);
  CHECK(f3.expand() == p3);
  CHECK(pattern(f3) == std::vector<std::pair<int, unsigned>>{{1, 1}, {2, 1}, {3, 2}});
  Poly w(1);
  for (int i = 1; i <= 20; ++i) w *= P("x") - Poly(i);
  auto f4 = factor_poly(w);
  CHECK(f4.factors.size() == 20);
  CHECK(f4.expand() == w);
}

TEST_CASE("factorization: discriminants of printed rank-2 families") {
  auto fam = printed();
  // Degree patterns computed independently with sympy.
  const std::vector<std::pair<int, unsigned>> pat8{{2, 4}, {2, 4}, {4, 2}, {8, 1}};
  const std::vector<std::pair<int, unsigned>> pat26{{2, 6}, {2, 6}, {4, 2}};
  for (auto [id, pat] : {std::pair{"DP8R2-1", pat8}, std::pair{"DP8R2-2", pat8},
                         std::pair{"DP26R2-1", pat26}}) {
    Poly A = parse_poly(fam[id]["A"].get<std::string>(), "u");
    Poly B = parse_poly(fam[id]["B"].get<std::string>(), "u");
    Poly D = A * A - B.scaled(4);
    auto f = factor_poly(D);
    CHECK(f.expand() == D);
    CHECK(pattern(f) == pat);
    CHECK(factor_poly(A).factors.size() == 1);
  }
}

TEST_CASE("factorization: random products") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 40; ++i) {
    Poly a = random_poly(rng, 1 + static_cast<int>(rng() % 4), 30);
    Poly b = random_poly(rng, 1 + static_cast<int>(rng() % 4), 30);
    Poly c = random_poly(rng, 1 + static_cast<int>(rng() % 3), 30);
    Poly p = a * b * b * c;
    auto f = factor_poly(p);
    CHECK(f.expand() == p);
    std::size_t count = 0;
    for (const auto& [g, e] : f.factors) count += e;
    std::size_t expected = factor_poly(a).factors.size() + 2 * factor_poly(b).factors.size() +
                           factor_poly(c).factors.size();
    CHECK(count <= expected);
  }
}

TEST_CASE("rational roots") {
  auto r = rational_roots(P("(2*x-3)*(x+5)^2*(7*x+1)*(x^2+1)*x"));
  REQUIRE(r.size() == 4);
  CHECK(r[0] == -5);
  CHECK(r[1] == Rational(-1, 7));
  CHECK(r[2] == 0);
  CHECK(r[3] == Rational(3, 2));
  CHECK(rational_roots(P("x^2-2")).empty());
  Integer big("123456789012345678901234567890");
  Poly q = (P("x").scaled(Rational(big)) - Poly(Rational(big + 1))) * P("x^3 + 17*x + 5");
  auto rq = rational_roots(q);
  REQUIRE(rq.size() == 1);
  CHECK(rq[0] == make_rational(big + 1, big));
}

TEST_CASE("bivariate polynomials") {
  BiPoly c = parse_bipoly("r^2*s^2 - 29*r^2 + 10*r*s^2 - 120*r*s + 290*r - 11*s^2 + 319", "r", "s");
  CHECK(c.degree_s() == 2);
  CHECK(c.degree_r() == 2);
  CHECK(c.eval(-1, 0) == 0);
  CHECK(c.coeff_s(2) == P("x^2 + 10*x - 11"));
  CHECK(c.swapped().swapped() == c);
  CHECK(c.swapped().eval(0, -1) == 0);
}
