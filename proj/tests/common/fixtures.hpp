#pragma once

#include <fstream>
#include <json.hpp>
#include <random>
#include <string>
#include <vector>

#include "ecfam/curves.hpp"
#include "ecfam/report.hpp"
#include "ecfam/scan.hpp"

namespace ecfam::testing {

inline nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

// Frozen oracle tables under tests/data.
inline nlohmann::json oracle_json(const std::string& name) { return load_json(std::string(ECFAM_TEST_DATA) + "/" + name); }

inline nlohmann::json printed_json() {
  return load_json(std::string(ECFAM_DATA_DIR) + "/printed_coefficients.json")["families"];
}

inline WeierstrassCurve curve_of(const nlohmann::json& a) { return curve_from_json(a); }

inline Point point_of(const nlohmann::json& p) { return point_from_json(p); }

// Rational points of a biquadratic curve: r random, s from a square discriminant.
inline std::vector<RS> sample_points(const BiquadraticCurve& C, int want, std::mt19937_64& rng) {
  std::vector<RS> out;
  auto q = C.in(Var::S);
  Poly D = C.discriminant(Var::S);
  for (int tries = 0; tries < 200000 && static_cast<int>(out.size()) < want; ++tries) {
    Rational r = make_rational(static_cast<long>(rng() % 401) - 200, 1 + static_cast<long>(rng() % 30));
    Rational d = D.eval(r), a = q[2].eval(r);
    if (a == 0 || d < 0) continue;
    Integer n = d.get_num(), e = d.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(e.get_mpz_t())) continue;
    Integer rn, re;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(re.get_mpz_t(), e.get_mpz_t());
    Rational t = make_rational(rn, re);
    out.push_back({r, (t - q[1].eval(r)) / (2 * a)});
  }
  return out;
}

// Points of C for involution checks: lattice images (C is the first scan's curve),
// square-discriminant samples, then orbits of tau2 o tau1.
inline std::vector<RS> involution_samples(const BiquadraticCurve& C, bool from_lattice, std::mt19937_64& rng,
                                          std::size_t want = 150) {
  std::vector<RS> pts;
  if (from_lattice) {
    ScanSpec first = builtin_scan("first");
    ScanMap map(first, Catalog::builtin());
    for (int n = -6; n <= 6 && pts.size() < 100; ++n)
      for (int m = -6; m <= 6 && pts.size() < 100; ++m) {
        auto v = map(lattice_point(first, n, m));
        if (v && v->second) pts.push_back({v->first, *v->second});
      }
  }
  for (const auto& p : sample_points(C, 100, rng)) pts.push_back(p);
  for (std::size_t i = 0; pts.size() < want && i < pts.size(); ++i) {
    try {
      pts.push_back(tau2(C, tau1(C, pts[i])));
    } catch (const DegenerateFiber&) {
    }
  }
  return pts;
}

}  // namespace ecfam::testing
