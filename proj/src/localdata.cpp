#include "ecfam/localdata.hpp"

#include <algorithm>
#include <array>
#include <climits>

namespace ecfam {

std::string to_string(Reduction r) {
  switch (r) {
    case Reduction::Good:
      return "good";
    case Reduction::Split:
      return "split-multiplicative";
    case Reduction::Nonsplit:
      return "nonsplit-multiplicative";
    case Reduction::Additive:
      return "additive";
  }
  return "?";
}

std::string Kodaira::symbol() const {
  switch (code) {
    case 1:
      return "I0";
    case 2:
      return "II";
    case 3:
      return "III";
    case 4:
      return "IV";
    case -1:
      return "I0*";
    case -2:
      return "II*";
    case -3:
      return "III*";
    case -4:
      return "IV*";
    default:
      break;
  }
  if (code > 4) return "I" + std::to_string(code - 4);
  return "I" + std::to_string(-code - 4) + "*";
}

namespace {

using Coeffs = std::vector<Integer>;  // low degree first, reduced mod p

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeffs polymod(Coeffs a, const Coeffs& m, const Integer& p) {
  trim(a);
  Integer inv = *inverse_mod(m.back(), p);
  while (a.size() >= m.size()) {
    Integer c = mod(a.back() * inv, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = mod(a[shift + i] - c * m[i], p);
    trim(a);
  }
  return a;
}

Coeffs polymul(const Coeffs& a, const Coeffs& b, const Integer& p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& x : r) x = mod(x, p);
  trim(r);
  return r;
}

// Number of distinct roots in F_p of a polynomial f (coefficients mod p).
int count_roots(Coeffs f, const Integer& p) {
  for (auto& x : f) x = mod(x, p);
  trim(f);
  if (f.size() <= 1) return 0;
  if (p < 64) {
    int n = 0;
    for (long x = 0; x < p.get_si(); ++x) {
      Integer v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = mod(v * x + f[i], p);
      if (v == 0) ++n;
    }
    return n;
  }
  // deg gcd(T^p - T, f)
  Coeffs result{1}, base{0, 1};
  base = polymod(base, f, p);
  Integer e = p;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = polymod(polymul(result, base, p), f, p);
    base = polymod(polymul(base, base, p), f, p);
    e >>= 1;
  }
  if (result.size() < 2) result.resize(2, Integer(0));
  result[1] = mod(result[1] - 1, p);
  trim(result);
  Coeffs a = f, b = result;
  while (!b.empty()) {
    Coeffs r = polymod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return static_cast<int>(a.size()) - 1;
}

bool has_root(const Coeffs& f, const Integer& p) { return count_roots(f, p) > 0; }

struct State {
  WeierstrassCurve C;
  Isomorphism acc;
  void change(const Isomorphism& iso) {
    C = iso.apply(C);
    acc = acc.then(iso);
  }
};

Integer num(const Rational& q) { return q.get_num(); }

}  // namespace

LocalData tate_local(const WeierstrassCurve& E, const Integer& p) {
  if (!E.is_integral()) throw std::invalid_argument("tate_local needs an integral model");
  if (p < 2) throw std::invalid_argument("tate_local: p must be prime");
  auto v = [&](const Integer& n) { return n == 0 ? INT_MAX / 4 : static_cast<int>(valuation(n, p)); };
  auto divides = [&](const Integer& n, int k) { return v(n) >= k; };
  Integer half = p == 2 ? Integer(0) : *inverse_mod(2, p);
  State S{E, Isomorphism{}};
  LocalData ld;
  ld.p = p;

  for (;;) {
    const WeierstrassCurve& C0 = S.C;
    int n = v(num(C0.disc()));
    if (n == 0) {
      ld.vp_disc_min = 0;
      ld.to_minimal = S.acc;
      return ld;
    }
    // move the singular point of the reduction to (0, 0)
    Integer r, t;
    if (p <= 3) {
      bool found = false;
      Integer a1 = num(C0.a1()), a2 = num(C0.a2()), a3 = num(C0.a3()), a4 = num(C0.a4()), a6 = num(C0.a6());
      for (long x = 0; x < p.get_si() && !found; ++x)
        for (long y = 0; y < p.get_si() && !found; ++y) {
          Integer F = y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6;
          Integer Fx = a1 * y - 3 * x * x - 2 * a2 * x - a4;
          Integer Fy = 2 * y + a1 * x + a3;
          if (mod(F, p) == 0 && mod(Fx, p) == 0 && mod(Fy, p) == 0) {
            r = x;
            t = y;
            found = true;
          }
        }
      if (!found) throw std::logic_error("tate_local: no singular point mod p");
    } else {
      Integer b2 = num(C0.b2()), c4 = num(C0.c4()), c6 = num(C0.c6());
      if (mod(c4, p) == 0)
        r = mod(-b2 * *inverse_mod(12, p), p);
      else
        r = mod(-(c6 + b2 * c4) * *inverse_mod(mod(12 * c4, p), p), p);
      t = mod(-(num(C0.a1()) * r + num(C0.a3())) * half, p);
    }
    S.change(Isomorphism{1, Rational(r), 0, Rational(t)});

    const WeierstrassCurve& C = S.C;
    Integer a1 = num(C.a1()), a2 = num(C.a2()), a3 = num(C.a3()), a4 = num(C.a4()), a6 = num(C.a6());
    Integer b6 = num(C.b6()), b8 = num(C.b8()), c4 = num(C.c4());
    ld.vp_disc_min = n;

    if (!divides(c4, 1)) {
      bool split = has_root({-a2, a1, 1}, p);
      ld.reduction = split ? Reduction::Split : Reduction::Nonsplit;
      ld.kodaira.code = 4 + n;
      ld.f = 1;
      ld.c = split ? n : (n % 2 ? 1 : 2);
      ld.to_minimal = S.acc;
      return ld;
    }
    ld.reduction = Reduction::Additive;
    ld.to_minimal = S.acc;
    if (!divides(a6, 2)) {
      ld.kodaira.code = 2;
      ld.f = n;
      ld.c = 1;
      return ld;
    }
    if (!divides(b8, 3)) {
      ld.kodaira.code = 3;
      ld.f = n - 1;
      ld.c = 2;
      return ld;
    }
    if (!divides(b6, 3)) {
      ld.kodaira.code = 4;
      ld.f = n - 2;
      ld.c = has_root({-(a6 / (p * p)), a3 / p, 1}, p) ? 3 : 1;
      return ld;
    }

    // p | a1, a2; p^2 | a3, a4; p^3 | a6
    Integer s0, t0;
    if (p <= 3) {
      bool found = false;
      for (long ss = 0; ss < p.get_si() && !found; ++ss)
        for (long tt = 0; tt < p.get_si() * p.get_si() && !found; ++tt) {
          WeierstrassCurve T = Isomorphism{1, 0, ss, tt}.apply(S.C);
          if (divides(num(T.a1()), 1) && divides(num(T.a2()), 1) && divides(num(T.a3()), 2) &&
              divides(num(T.a4()), 2) && divides(num(T.a6()), 3)) {
            s0 = ss;
            t0 = tt;
            found = true;
          }
        }
    } else {
      s0 = mod(-a1 * half, p);
      t0 = p * mod(-(a3 / p) * half, p);
    }
    S.change(Isomorphism{1, 0, Rational(s0), Rational(t0)});
    auto refresh = [&] {
      a1 = num(S.C.a1());
      a2 = num(S.C.a2());
      a3 = num(S.C.a3());
      a4 = num(S.C.a4());
      a6 = num(S.C.a6());
    };
    refresh();
    if (!(divides(a1, 1) && divides(a2, 1) && divides(a3, 2) && divides(a4, 2) && divides(a6, 3)))
      throw std::logic_error("tate_local: coordinate change failed");
    Integer pp = p * p;
    Integer b = a2 / p, c = a4 / pp, d = a6 / (pp * p);
    Integer w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
    Integer x = 3 * c - b * b;

    if (mod(w, p) != 0) {
      ld.kodaira.code = -1;
      ld.f = n - 4;
      ld.c = 1 + count_roots({d, c, b, 1}, p);
      ld.to_minimal = S.acc;
      return ld;
    }

    auto cubic_root = [&](bool triple) -> Integer {
      if (p > 3) {
        if (triple) return mod(-b * *inverse_mod(3, p), p);
        return mod((b * c - 9 * d) * *inverse_mod(mod(2 * x, p), p), p);
      }
      for (long rr = 0; rr < p.get_si(); ++rr) {
        Integer P = rr * rr * rr + b * rr * rr + c * rr + d;
        Integer dP = 3 * rr * rr + 2 * b * rr + c;
        if (mod(P, p) == 0 && mod(dP, p) == 0) return Integer(rr);
      }
      throw std::logic_error("tate_local: multiple root not found");
    };

    if (mod(x, p) != 0) {
      // I_m*: double root moved to 0, then alternate between the y- and x-quadratics
      S.change(Isomorphism{1, Rational(p * cubic_root(false)), 0, 0});
      refresh();
      int ix = 3, iy = 3;
      Integer mx = pp, my = pp;
      int cp = 0;
      for (;;) {
        Integer a2t = a2 / p, a3t = a3 / my, a4t = a4 / (p * mx), a6t = a6 / (mx * my);
        if (mod(a3t * a3t + 4 * a6t, p) != 0) {
          cp = has_root({-a6t, a3t, 1}, p) ? 4 : 2;
          break;
        }
        Integer tt = p == 2 ? my * mod(a6t, 2) : my * mod(-a3t * half, p);
        S.change(Isomorphism{1, 0, 0, Rational(tt)});
        refresh();
        my *= p;
        ++iy;
        a2t = a2 / p;
        a3t = a3 / my;
        a4t = a4 / (p * mx);
        a6t = a6 / (mx * my);
        if (mod(a4t * a4t - 4 * a6t * a2t, p) != 0) {
          cp = has_root({a6t, a4t, a2t}, p) ? 4 : 2;
          break;
        }
        Integer rr = p == 2 ? mx * mod(a6t * a2t, 2) : mx * mod(-a4t * *inverse_mod(mod(2 * a2t, p), p), p);
        S.change(Isomorphism{1, Rational(rr), 0, 0});
        refresh();
        mx *= p;
        ++ix;
      }
      int m = ix + iy - 5;
      ld.kodaira.code = -4 - m;
      ld.f = n - m - 4;
      ld.c = cp;
      ld.to_minimal = S.acc;
      return ld;
    }

    // triple root
    S.change(Isomorphism{1, Rational(p * cubic_root(true)), 0, 0});
    refresh();
    Integer a3t = a3 / pp, a6t = a6 / (pp * pp);
    if (mod(a3t * a3t + 4 * a6t, p) != 0) {
      ld.kodaira.code = -4;
      ld.f = n - 6;
      ld.c = has_root({-a6t, a3t, 1}, p) ? 3 : 1;
      ld.to_minimal = S.acc;
      return ld;
    }
    Integer tt = p == 2 ? pp * mod(a6t, 2) : pp * mod(-a3t * half, p);
    S.change(Isomorphism{1, 0, 0, Rational(tt)});
    refresh();
    ld.to_minimal = S.acc;
    if (!divides(a4, 4)) {
      ld.kodaira.code = -3;
      ld.f = n - 7;
      ld.c = 2;
      return ld;
    }
    if (!divides(a6, 6)) {
      ld.kodaira.code = -2;
      ld.f = n - 8;
      ld.c = 1;
      return ld;
    }
    // not minimal at p
    S.change(Isomorphism{Rational(p), 0, 0, 0});
  }
}

MinimalModel minimal_model(const WeierstrassCurve& E, const FactorBudget& budget,
                           const std::vector<Integer>& hints) {
  ModelChange Z = integral_model(E);
  WeierstrassCurve C = Z.curve;
  Isomorphism iso = Z.iso;
  Integer c4 = num(C.c4()), c6 = num(C.c6()), D = num(C.disc());
  Integer g;
  mpz_gcd(g.get_mpz_t(), c4.get_mpz_t(), c6.get_mpz_t());
  bool certain = true;
  if (abs(g) > 1) {
    FactoredInt f = factor(abs(g), budget, hints);
    certain = f.complete();
    for (const auto& pp : f.factors) {
      if (valuation(D, pp.p) < 12) continue;
      LocalData ld = tate_local(C, pp.p);
      if (ld.to_minimal.u == 1) continue;
      C = ld.to_minimal.apply(C);
      iso = iso.then(ld.to_minimal);
    }
  }
  // a1, a3 in {0, 1}, a2 in {-1, 0, 1}
  Integer a1 = num(C.a1()), a2 = num(C.a2()), a3 = num(C.a3());
  Integer s = -(a1 - mod(a1, 2)) / 2;
  Integer a2s = a2 - s * a1 - s * s;
  Integer m = mod(a2s + 1, 3) - 1;  // target a2 in {-1,0,1}
  Integer r = (m - a2s) / 3;
  Integer a3r = a3 + r * a1;
  Integer t = -(a3r - mod(a3r, 2)) / 2;
  Isomorphism norm{1, Rational(r), Rational(s), Rational(t)};
  C = norm.apply(C);
  iso = iso.then(norm);
  return {C, iso, certain};
}

GlobalReduction global_reduction(const WeierstrassCurve& E, const FactorBudget& budget,
                                 const std::vector<Integer>& hints) {
  MinimalModel M = minimal_model(E, budget, hints);
  Integer D = num(M.curve.disc());
  FactoredInt fac = factor(abs(D), budget, hints);
  GlobalReduction G{M.curve, M.iso, fac, {}, fac.residue, FactoredInt{}, M.certain};
  for (const auto& pp : fac.factors) {
    LocalData ld = tate_local(M.curve, pp.p);
    if (ld.f > 0) G.conductor.factors.push_back({pp.p, static_cast<unsigned>(ld.f)});
    G.local.push_back(std::move(ld));
  }
  std::sort(G.local.begin(), G.local.end(), [](const LocalData& a, const LocalData& b) { return a.p < b.p; });
  std::sort(G.conductor.factors.begin(), G.conductor.factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.p < b.p; });
  G.conductor.residue = fac.residue;
  return G;
}

FactoredInt conductor(const WeierstrassCurve& E, const FactorBudget& budget, const std::vector<Integer>& hints) {
  return global_reduction(E, budget, hints).conductor;
}

}  // namespace ecfam
