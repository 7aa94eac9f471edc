// Factorization over Z[x]: Cantor-Zassenhaus mod p, Hensel lifting, recombination.
#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

#include "ecfam/polyq.hpp"

namespace ecfam {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using MP = std::vector<u64>;
using ZP = std::vector<Integer>;

struct Field {
  u64 p;
  u64 add(u64 a, u64 b) const { return a + b >= p ? a + b - p : a + b; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
  u64 from(const Integer& z) const { return mpz_fdiv_ui(z.get_mpz_t(), p); }
};

void trim(MP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const MP& a) { return static_cast<int>(a.size()) - 1; }

MP mp_from(const ZP& f, const Field& F) {
  MP a;
  for (const auto& c : f) a.push_back(F.from(c));
  trim(a);
  return a;
}

MP mp_sub(const MP& a, const MP& b, const Field& F) {
  MP r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

MP mp_mul(const MP& a, const MP& b, const Field& F) {
  if (a.empty() || b.empty()) return {};
  std::vector<u128> acc(a.size() + b.size() - 1, 0);
  MP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
  }
  trim(r);
  return r;
}

MP mp_scale(const MP& a, u64 c, const Field& F) {
  MP r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  trim(r);
  return r;
}

void mp_divmod(const MP& a, const MP& b, const Field& F, MP* q, MP* r) {
  if (b.empty()) throw std::domain_error("mod-p division by zero");
  MP rem = a;
  const int db = deg(b);
  u64 inv = F.inv(b.back());
  MP quo(std::max(0, deg(a) - db + 1), 0);
  for (int i = deg(a); i >= db; --i) {
    u64 c = rem[i];
    if (!c) continue;
    u64 t = F.mul(c, inv);
    quo[i - db] = t;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = F.sub(rem[i - db + j], F.mul(t, b[j]));
  }
  rem.resize(std::max(0, std::min(static_cast<int>(rem.size()), db)));
  trim(rem);
  trim(quo);
  if (q) *q = quo;
  if (r) *r = rem;
}

MP mp_mod(const MP& a, const MP& b, const Field& F) {
  MP r;
  mp_divmod(a, b, F, nullptr, &r);
  return r;
}

MP mp_monic(const MP& a, const Field& F) {
  if (a.empty()) return a;
  return mp_scale(a, F.inv(a.back()), F);
}

MP mp_gcd(MP a, MP b, const Field& F) {
  while (!b.empty()) {
    MP r = mp_mod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(a, F);
}

// s*a + t*b = g (monic)
MP mp_ext_gcd(const MP& a, const MP& b, const Field& F, MP& s, MP& t) {
  MP r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    MP q, r;
    mp_divmod(r0, r1, F, &q, &r);
    MP s2 = mp_sub(s0, mp_mul(q, s1, F), F);
    MP t2 = mp_sub(t0, mp_mul(q, t1, F), F);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 inv = F.inv(r0.back());
  s = mp_scale(s0, inv, F);
  t = mp_scale(t0, inv, F);
  return mp_scale(r0, inv, F);
}

MP mp_powmod(MP base, const Integer& e, const MP& m, const Field& F) {
  MP r{1};
  base = mp_mod(base, m, F);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mp_mod(mp_mul(r, r, F), m, F);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mp_mod(mp_mul(r, base, F), m, F);
  }
  return r;
}

MP mp_derivative(const MP& a, const Field& F) {
  MP r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(F.mul(a[i], i % F.p));
  trim(r);
  return r;
}

std::vector<std::pair<MP, int>> distinct_degree(MP f, const Field& F) {
  std::vector<std::pair<MP, int>> out;
  MP x{0, 1};
  MP h = x;
  for (int d = 1; 2 * d <= deg(f); ++d) {
    h = mp_powmod(h, Integer(static_cast<unsigned long>(F.p)), f, F);
    MP g = mp_gcd(f, mp_sub(h, x, F), F);
    if (deg(g) > 0) {
      out.emplace_back(g, d);
      MP q;
      mp_divmod(f, g, F, &q, nullptr);
      f = q;
      h = mp_mod(h, f, F);
    }
  }
  if (deg(f) > 0) out.emplace_back(mp_monic(f, F), deg(f));
  return out;
}

void equal_degree(const MP& g, int d, const Field& F, std::mt19937_64& rng, std::vector<MP>& out) {
  if (deg(g) == d) {
    out.push_back(g);
    return;
  }
  Integer pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), F.p, d);
  Integer e = (pd - 1) / 2;
  while (true) {
    MP a(deg(g));
    for (auto& c : a) c = rng() % F.p;
    trim(a);
    if (deg(a) < 1) continue;
    MP b = mp_powmod(a, e, g, F);
    b = mp_sub(b, MP{1}, F);
    MP h = mp_gcd(g, b, F);
    if (deg(h) > 0 && deg(h) < deg(g)) {
      MP q;
      mp_divmod(g, h, F, &q, nullptr);
      equal_degree(h, d, F, rng, out);
      equal_degree(mp_monic(q, F), d, F, rng, out);
      return;
    }
  }
}

std::vector<MP> factor_mod_p(const MP& f, const Field& F) {
  std::mt19937_64 rng(F.p * 7919 + deg(f));
  std::vector<MP> out;
  for (auto& [g, d] : distinct_degree(mp_monic(f, F), F)) equal_degree(g, d, F, rng, out);
  return out;
}

bool squarefree_mod_p(const MP& f, const Field& F) {
  MP g = mp_gcd(f, mp_derivative(f, F), F);
  return deg(g) == 0;
}

// Integer polynomial helpers.

void ztrim(ZP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZP zmul(const ZP& a, const ZP& b) {
  if (a.empty() || b.empty()) return {};
  ZP r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

ZP zmod(const ZP& a, const Integer& m) {
  ZP r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i], m);
  ztrim(r);
  return r;
}

ZP zsym(const ZP& a, const Integer& m) {
  Integer half = m / 2;
  ZP r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer v = mod(a[i], m);
    if (v > half) v -= m;
    r[i] = v;
  }
  ztrim(r);
  return r;
}

ZP zfrom(const MP& a) {
  ZP r;
  for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
  ztrim(r);
  return r;
}

// Exact division of integer polynomials; nullopt when b does not divide a over Z.
std::optional<ZP> zdiv_exact(const ZP& a, const ZP& b) {
  if (b.empty()) return std::nullopt;
  if (a.size() < b.size()) return a.empty() ? std::optional<ZP>(ZP{}) : std::nullopt;
  ZP rem = a;
  const std::size_t db = b.size() - 1;
  ZP q(a.size() - db, Integer(0));
  for (std::size_t i = a.size(); i-- > db;) {
    if (rem[i] == 0) continue;
    if (!mpz_divisible_p(rem[i].get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    Integer t = rem[i] / b.back();
    q[i - db] = t;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= t * b[j];
  }
  for (const auto& c : rem)
    if (c != 0) return std::nullopt;
  ztrim(q);
  return q;
}

ZP zprimitive(ZP a) {
  Integer g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

// Lift f = L*g0*h0 (mod p), g0 monic, to modulus p^k.
void hensel_lift(const ZP& f, const MP& g0, const MP& h0, const Field& F, unsigned k, ZP& g,
                 ZP& h) {
  MP s, t;
  MP one = mp_ext_gcd(g0, h0, F, s, t);
  if (deg(one) != 0) throw std::logic_error("hensel_lift: factors not coprime mod p");
  g = zfrom(g0);
  h = zfrom(h0);
  Integer P = static_cast<unsigned long>(F.p);
  Integer pp = P;
  for (unsigned j = 1; j < k; ++j) {
    ZP e = f;
    ZP gh = zmul(g, h);
    if (e.size() < gh.size()) e.resize(gh.size(), Integer(0));
    for (std::size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
    ztrim(e);
    for (auto& c : e) c /= pp;
    MP em = mp_from(e, F);
    MP sigma = mp_mod(mp_mul(em, t, F), g0, F);
    MP tau;
    MP rest = mp_sub(em, mp_mul(sigma, h0, F), F);
    mp_divmod(rest, g0, F, &tau, nullptr);
    ZP zs = zfrom(sigma), zt = zfrom(tau);
    if (g.size() < zs.size()) g.resize(zs.size(), Integer(0));
    if (h.size() < zt.size()) h.resize(zt.size(), Integer(0));
    for (std::size_t i = 0; i < zs.size(); ++i) g[i] += pp * zs[i];
    for (std::size_t i = 0; i < zt.size(); ++i) h[i] += pp * zt[i];
    pp *= P;
    g = zmod(g, pp);
    h = zmod(h, pp);
  }
}

Integer coefficient_bound(const ZP& f) {
  // 2^n * ||f||_2 bounds every factor's coefficients (Mignotte).
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer b = isqrt(norm2) + 1;
  b <<= static_cast<unsigned long>(f.size());
  return b;
}

void enumerate_subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                       const std::function<bool(const std::vector<std::size_t>&)>& visit, bool& stop) {
  if (stop) return;
  if (cur.size() == k) {
    if (visit(cur)) stop = true;
    return;
  }
  for (std::size_t i = start; i < n && !stop; ++i) {
    cur.push_back(i);
    enumerate_subsets(n, k, i + 1, cur, visit, stop);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Poly> factor_squarefree_primitive(const std::vector<Integer>& f0) {
  ZP f = f0;
  ztrim(f);
  if (f.size() <= 2) return {Poly::from_integers(f)};
  if (f.back() < 0)
    for (auto& c : f) c = -c;

  // Pull out x^k first so the constant term is nonzero.
  std::vector<Poly> out;
  if (f[0] == 0) {
    std::size_t z = 0;
    while (f[z] == 0) ++z;
    out.push_back(Poly::x());
    f.erase(f.begin(), f.begin() + static_cast<long>(z));
    if (f.size() <= 2) {
      if (f.size() == 2) out.push_back(Poly::from_integers(f));
      return out;
    }
  }

  const int n = static_cast<int>(f.size()) - 1;
  // Pick the prime giving the fewest modular factors among a handful of candidates.
  std::vector<MP> best;
  u64 best_p = 0;
  int tried = 0;
  for (u64 p = 3; tried < 6 && p < 100000; p += 2) {
    bool prime = true;
    for (u64 d = 3; d * d <= p; d += 2)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
    Field F{p};
    MP fm = mp_from(f, F);
    if (!squarefree_mod_p(fm, F)) continue;
    ++tried;
    auto facs = factor_mod_p(fm, F);
    if (best_p == 0 || facs.size() < best.size()) {
      best = facs;
      best_p = p;
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) throw std::logic_error("no suitable prime for factorization");
  if (best.size() == 1) {
    out.push_back(Poly::from_integers(f));
    return out;
  }

  Field F{best_p};
  Integer lc = f.back();
  Integer bound = 2 * abs(lc) * coefficient_bound(f) + 1;
  unsigned k = 1;
  Integer M = static_cast<unsigned long>(best_p);
  while (M <= bound) {
    M *= static_cast<unsigned long>(best_p);
    ++k;
  }

  // Multifactor lift by peeling one factor at a time.
  std::vector<ZP> lifted;
  ZP cur = f;
  u64 lcm = F.from(lc);
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    MP rest{lcm};
    for (std::size_t j = i + 1; j < best.size(); ++j) rest = mp_mul(rest, best[j], F);
    ZP g, h;
    hensel_lift(cur, best[i], rest, F, k, g, h);
    lifted.push_back(g);
    cur = h;
  }
  {
    auto inv = inverse_mod(lc, M);
    ZP last = cur;
    for (auto& c : last) c = mod(c * *inv, M);
    lifted.push_back(last);
  }

  // Recombination.
  std::vector<bool> used(lifted.size(), false);
  ZP rem = f;
  std::size_t remaining = lifted.size();
  for (std::size_t s = 1; 2 * s <= remaining; ++s) {
    bool again = true;
    while (again && 2 * s <= remaining) {
      again = false;
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < lifted.size(); ++i)
        if (!used[i]) idx.push_back(i);
      Integer L = rem.back();
      std::vector<std::size_t> cur_subset;
      bool stop = false;
      std::vector<std::size_t> hit;
      ZP hit_factor, hit_quot;
      enumerate_subsets(idx.size(), s, 0, cur_subset,
                        [&](const std::vector<std::size_t>& sub) {
                          // Constant-term test before building the product.
                          Integer c0 = L;
                          for (auto j : sub) c0 = mod(c0 * lifted[idx[j]][0], M);
                          if (c0 > M / 2) c0 -= M;
                          if (c0 == 0 || !mpz_divisible_p(Integer(L * rem[0]).get_mpz_t(), c0.get_mpz_t()))
                            return false;
                          ZP g{L};
                          for (auto j : sub) g = zmod(zmul(g, lifted[idx[j]]), M);
                          g = zprimitive(zsym(g, M));
                          auto q = zdiv_exact(rem, g);
                          if (!q) return false;
                          hit.clear();
                          for (auto j : sub) hit.push_back(idx[j]);
                          hit_factor = g;
                          hit_quot = *q;
                          return true;
                        },
                        stop);
      if (stop) {
        out.push_back(Poly::from_integers(hit_factor));
        for (auto j : hit) used[j] = true;
        remaining -= hit.size();
        rem = hit_quot;
        again = true;
      }
    }
  }
  if (rem.size() > 1) out.push_back(Poly::from_integers(zprimitive(rem)));
  return out;
}

std::vector<Rational> rational_roots(const Poly& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  Poly sq = p / gcd(p, p.derivative());
  ZP f = primitive_integer(sq);
  if (f[0] == 0) {
    roots.emplace_back(0);
    f.erase(f.begin());
  }
  if (f.size() <= 1) return roots;
  if (f.size() == 2) {
    roots.push_back(make_rational(-f[0], f[1]));
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  Integer lc = f.back();
  u64 prime = 0;
  for (u64 q = 3; q < 1000000; q += 2) {
    bool isp = true;
    for (u64 d = 3; d * d <= q; d += 2)
      if (q % d == 0) {
        isp = false;
        break;
      }
    if (!isp || mpz_divisible_ui_p(lc.get_mpz_t(), q)) continue;
    Field F{q};
    if (squarefree_mod_p(mp_from(f, F), F)) {
      prime = q;
      break;
    }
  }
  if (!prime) throw std::logic_error("rational_roots: no good prime");
  Field F{prime};
  MP fm = mp_monic(mp_from(f, F), F);
  MP x{0, 1};
  MP xp = mp_powmod(x, Integer(static_cast<unsigned long>(prime)), fm, F);
  MP lin = mp_gcd(fm, mp_sub(xp, x, F), F);
  if (deg(lin) <= 0) {
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  std::vector<MP> lins;
  std::mt19937_64 rng(prime);
  equal_degree(lin, 1, F, rng, lins);

  Integer maxc = 0;
  for (const auto& c : f) maxc = std::max(maxc, Integer(abs(c)));
  Integer bound = 2 * (abs(lc) + maxc) * abs(lc) + 1;
  Integer P = static_cast<unsigned long>(prime);
  Poly fq = Poly::from_integers(f);
  Poly fd = fq.derivative();
  for (const auto& l : lins) {
    // l = x - r
    Integer r = static_cast<unsigned long>(F.sub(0, l[0]));
    Integer M = P;
    while (M <= bound) {
      M = M * M;
      Rational fv = fq.eval(Rational(r));
      Rational dv = fd.eval(Rational(r));
      auto inv = inverse_mod(Integer(dv.get_num()), M);
      if (!inv) break;
      r = mod(r - Integer(fv.get_num()) * *inv, M);
    }
    Integer a = mod(lc * r, M);
    if (a > M / 2) a -= M;
    Rational cand = make_rational(a, lc);
    if (fq.eval(cand) == 0) roots.push_back(cand);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace ecfam
