#include "ecfam/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

namespace ecfam {

namespace {

using Clock = std::chrono::steady_clock;

const std::uint32_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool miller_rabin(const Integer& n, unsigned long base) {
  Integer d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  Integer x;
  Integer a = base;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  auto slash = s.find('/');
  Integer num, den = 1;
  auto parse_int = [](const std::string& t) {
    Integer v;
    if (t.empty() || v.set_str(t, 10) != 0) throw std::invalid_argument("bad integer: " + t);
    return v;
  };
  if (slash == std::string::npos) {
    num = parse_int(s);
  } else {
    num = parse_int(s.substr(0, slash));
    den = parse_int(s.substr(slash + 1));
  }
  return make_rational(num, den);
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

FactorBudget FactorBudget::parse(std::string_view text) {
  FactorBudget b;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("budget item without '=': " + item);
    std::string key = item.substr(0, eq);
    std::uint64_t value = std::stoull(item.substr(eq + 1));
    if (key == "trial") b.trial_bound = value;
    else if (key == "rho") b.rho_iterations = value;
    else if (key == "ecm") b.ecm_curves = static_cast<unsigned>(value);
    else if (key == "b1") b.ecm_b1 = value;
    else if (key == "ms") b.time_limit = std::chrono::milliseconds(value);
    else throw std::invalid_argument("unknown budget key: " + key);
  }
  return b;
}

FactorBudget FactorBudget::from_env() {
  if (const char* env = std::getenv("ECFAM_BUDGET")) return parse(env);
  return FactorBudget{};
}

std::string FactorBudget::to_string() const {
  std::ostringstream os;
  os << "trial=" << trial_bound << ",rho=" << rho_iterations << ",ecm=" << ecm_curves
     << ",b1=" << ecm_b1 << ",ms=" << time_limit.count();
  return os.str();
}

Integer FactoredInt::value() const {
  Integer v = residue;
  for (const auto& pp : factors) {
    Integer t;
    mpz_pow_ui(t.get_mpz_t(), pp.p.get_mpz_t(), pp.e);
    v *= t;
  }
  return sign < 0 ? Integer(-v) : v;
}

unsigned FactoredInt::valuation(const Integer& p) const {
  for (const auto& pp : factors)
    if (pp.p == p) return pp.e;
  return 0;
}

std::vector<Integer> FactoredInt::primes() const {
  std::vector<Integer> out;
  for (const auto& pp : factors) out.push_back(pp.p);
  return out;
}

const Integer& deterministic_prime_bound() {
  static const Integer bound("3317044064679887385961981");
  return bound;
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  for (auto p : kWitnesses) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < 43 * 43) return true;
  for (auto p : kWitnesses)
    if (!miller_rabin(n, p)) return false;
  if (n < deterministic_prime_bound()) return true;
  // Beyond the deterministic range GMP adds a Baillie-PSW check.
  return mpz_probab_prime_p(n.get_mpz_t(), 24) > 0;
}

std::vector<std::uint32_t> small_primes(std::uint32_t bound) {
  std::vector<bool> sieve(bound + 1, true);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  return out;
}

namespace {

const std::vector<std::uint32_t>& prime_table(std::uint64_t bound) {
  static std::vector<std::uint32_t> table;
  static std::uint64_t built = 0;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (bound > built) {
    table = small_primes(static_cast<std::uint32_t>(std::max<std::uint64_t>(bound, 1000)));
    built = std::max<std::uint64_t>(bound, 1000);
  }
  return table;
}

}  // namespace

Integer pollard_brent(const Integer& n, std::uint64_t iterations, std::mt19937_64& rng) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  const std::uint64_t m = 128;
  for (int attempt = 0; attempt < 8 && iterations > 0; ++attempt) {
    Integer c = Integer(static_cast<unsigned long>(rng() % 1000003)) + 1;
    Integer y = Integer(static_cast<unsigned long>(rng() % 1000003));
    Integer x, ys, q = 1, g = 1;
    std::uint64_t r = 1, used = 0;
    auto step = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1 && used < iterations) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          step(y);
          Integer d = x - y;
          q = q * d % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
        used += lim;
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time.
      do {
        step(ys);
        Integer d = x - ys;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
    iterations = iterations > used ? iterations - used : 0;
  }
  return 0;
}

namespace {

// Montgomery curve arithmetic in projective x-only coordinates.
struct MontPoint {
  Integer x, z;
};

struct MontCurve {
  const Integer& n;
  Integer a24;  // (A + 2) / 4

  void reduce(Integer& v) const { mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t()); }

  MontPoint dbl(const MontPoint& p) const {
    Integer s = p.x + p.z, d = p.x - p.z;
    Integer s2 = s * s, d2 = d * d;
    reduce(s2);
    reduce(d2);
    Integer t = s2 - d2;
    MontPoint r;
    r.x = s2 * d2;
    reduce(r.x);
    r.z = t * (d2 + a24 * t);
    reduce(r.z);
    return r;
  }

  MontPoint add(const MontPoint& p, const MontPoint& q, const MontPoint& diff) const {
    Integer u = (p.x - p.z) * (q.x + q.z);
    Integer v = (p.x + p.z) * (q.x - q.z);
    reduce(u);
    reduce(v);
    Integer s = u + v, d = u - v;
    MontPoint r;
    r.x = diff.z * s * s;
    reduce(r.x);
    r.z = diff.x * d * d;
    reduce(r.z);
    return r;
  }

  MontPoint mul(const MontPoint& p, std::uint64_t k) const {
    if (k == 1) return p;
    MontPoint r0 = p, r1 = dbl(p);
    int top = 63;
    while (!((k >> top) & 1)) --top;
    for (int i = top - 1; i >= 0; --i) {
      if ((k >> i) & 1) {
        r0 = add(r1, r0, p);
        r1 = dbl(r1);
      } else {
        r1 = add(r0, r1, p);
        r0 = dbl(r0);
      }
    }
    return r0;
  }
};

}  // namespace

Integer ecm_factor(const Integer& n, unsigned curves, std::uint64_t b1, std::mt19937_64& rng,
                   Clock::time_point deadline) {
  if (b1 < 100) b1 = 100;
  const std::uint64_t b2 = 50 * b1;
  const auto& primes = prime_table(b2);
  const std::uint64_t D = 210;
  for (unsigned c = 0; c < curves; ++c) {
    if (Clock::now() > deadline) return 0;
    Integer sigma = Integer(static_cast<unsigned long>(6 + rng() % 1000000000ULL));
    Integer u = sigma * sigma - 5, v = 4 * sigma;
    Integer x0 = u * u * u, z0 = v * v * v;
    Integer num = (v - u) * (v - u) * (v - u) * (3 * u + v);
    Integer den = 16 * x0 * v;
    mpz_mod(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
    mpz_mod(den.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t());
    Integer g;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t());
    if (g != 1) {
      if (g != n) return g;
      continue;
    }
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t());
    MontCurve curve{n, num * inv % n};
    MontPoint P{x0 % n, z0 % n};
    for (auto p : primes) {
      if (p > b1) break;
      std::uint64_t q = p;
      while (q * p <= b1) q *= p;
      P = curve.mul(P, q);
    }
    mpz_gcd(g.get_mpz_t(), P.z.get_mpz_t(), n.get_mpz_t());
    if (g != 1 && g != n) return g;
    if (g == n) continue;

    // Stage 2: each prime q in (b1, b2] is k*D +- j with j odd and j <= D/2.
    const std::uint64_t half = D / 2;
    std::vector<MontPoint> baby(half + 1);
    baby[1] = P;
    MontPoint P2 = curve.dbl(P);
    baby[3] = curve.add(P2, P, P);
    for (std::uint64_t j = 5; j <= half; j += 2) baby[j] = curve.add(baby[j - 2], P2, baby[j - 4]);
    MontPoint W = curve.mul(P, D);
    std::uint64_t k = std::max<std::uint64_t>(1, b1 / D);
    MontPoint G = curve.mul(W, k);
    MontPoint Gprev = k > 1 ? curve.mul(W, k - 1) : MontPoint{1, 0};
    Integer acc = 1;
    auto it = std::upper_bound(primes.begin(), primes.end(), static_cast<std::uint32_t>(b1));
    for (unsigned counter = 1; k * D <= b2 + half; ++k, ++counter) {
      const std::uint64_t hi = k * D + half;
      for (; it != primes.end() && *it <= hi && *it <= b2; ++it) {
        std::uint64_t p = *it;
        std::uint64_t j = p > k * D ? p - k * D : k * D - p;
        Integer t = G.x * baby[j].z - baby[j].x * G.z;
        acc = acc * t % n;
      }
      if (counter % 32 == 0) {
        mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), n.get_mpz_t());
        if (g != 1 || Clock::now() > deadline) break;
      }
      MontPoint next = Gprev.z == 0 ? curve.dbl(G) : curve.add(G, W, Gprev);
      Gprev = G;
      G = next;
    }
    mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), n.get_mpz_t());
    if (g != 1 && g != n) return g;
  }
  return 0;
}

FactoredInt factor(const Integer& n, const FactorBudget& budget, const std::vector<Integer>& hints) {
  if (n == 0) throw std::domain_error("factor(0)");
  FactoredInt out;
  out.sign = n < 0 ? -1 : 1;
  const auto deadline = budget.time_limit.count() > 0 ? Clock::now() + budget.time_limit : Clock::time_point::max();

  // Coprime refinement of |n| against the hints: pieces with multiplicities.
  std::vector<std::pair<Integer, unsigned>> pieces{{abs(n), 1}};
  std::vector<Integer> splitters;
  for (const auto& h : hints)
    if (h != 0 && abs(h) != 1) splitters.push_back(abs(h));
  bool changed = !splitters.empty();
  while (changed) {
    changed = false;
    for (const auto& h : splitters) {
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), pieces[i].first.get_mpz_t(), h.get_mpz_t());
        if (g != 1 && g != pieces[i].first) {
          unsigned m = pieces[i].second;
          pieces[i].first /= g;
          pieces.emplace_back(g, m);
          changed = true;
        }
      }
    }
    for (std::size_t i = 0; i < pieces.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < pieces.size() && !changed; ++j) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), pieces[i].first.get_mpz_t(), pieces[j].first.get_mpz_t());
        if (g == 1) continue;
        if (pieces[i].first == pieces[j].first) {
          pieces[i].second += pieces[j].second;
          pieces.erase(pieces.begin() + static_cast<long>(j));
        } else {
          auto a = pieces[i], b = pieces[j];
          pieces.erase(pieces.begin() + static_cast<long>(j));
          pieces.erase(pieces.begin() + static_cast<long>(i));
          pieces.emplace_back(g, a.second + b.second);
          if (a.first != g) pieces.emplace_back(a.first / g, a.second);
          if (b.first != g) pieces.emplace_back(b.first / g, b.second);
        }
        changed = true;
      }
    }
  }

  std::map<Integer, unsigned> found;
  Integer residue = 1;
  const auto& primes = prime_table(budget.trial_bound);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  Integer trial_sq = Integer(static_cast<unsigned long>(budget.trial_bound)) *
                     Integer(static_cast<unsigned long>(budget.trial_bound));

  std::vector<std::pair<Integer, unsigned>> work;
  for (auto& [x, mult] : pieces) {
    if (x == 1) continue;
    for (auto p : primes) {
      if (p > budget.trial_bound) break;
      if (Integer(p) * p > x) break;
      if (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
        unsigned e = 0;
        do {
          mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
          ++e;
        } while (mpz_divisible_ui_p(x.get_mpz_t(), p));
        found[Integer(p)] += e * mult;
      }
    }
    if (x != 1) work.emplace_back(x, mult);
  }

  while (!work.empty()) {
    auto [x, mult] = work.back();
    work.pop_back();
    if (x == 1) continue;
    if (x <= trial_sq && budget.trial_bound > 0) {
      found[x] += mult;
      continue;
    }
    if (is_probable_prime(x)) {
      found[x] += mult;
      continue;
    }
    if (mpz_perfect_power_p(x.get_mpz_t())) {
      bool split = false;
      for (unsigned k = 2; k < 64 * mpz_sizeinbase(x.get_mpz_t(), 2); ++k) {
        Integer r;
        if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), k)) {
          work.emplace_back(r, mult * k);
          split = true;
          break;
        }
        if (r < 2) break;
      }
      if (split) continue;
    }
    Integer d = 0;
    if (Clock::now() < deadline && budget.rho_iterations > 0)
      d = pollard_brent(x, budget.rho_iterations, rng);
    if (d == 0 && budget.ecm_curves > 0 && Clock::now() < deadline)
      d = ecm_factor(x, budget.ecm_curves, budget.ecm_b1, rng, deadline);
    if (d == 0) {
      Integer t;
      mpz_pow_ui(t.get_mpz_t(), x.get_mpz_t(), mult);
      residue *= t;
      continue;
    }
    Integer e = x / d;
    Integer g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
    if (g != 1) {
      // Keep pieces coprime so multiplicities are counted once.
      work.emplace_back(g, mult * 2);
      work.emplace_back(d / g, mult);
      work.emplace_back(e / g, mult);
    } else {
      work.emplace_back(d, mult);
      work.emplace_back(e, mult);
    }
  }
  // Composite residue parts may still share primes found elsewhere.
  for (auto& [p, e] : found) {
    while (residue != 1 && mpz_divisible_p(residue.get_mpz_t(), p.get_mpz_t())) {
      residue /= p;
      ++e;
    }
  }
  for (auto& [p, e] : found) out.factors.push_back({p, e});
  out.residue = residue;
  return out;
}

std::optional<Integer> square_test(const Integer& n) {
  if (n < 0) return std::nullopt;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<Rational> square_test(const Rational& q) {
  auto a = square_test(Integer(q.get_num()));
  if (!a) return std::nullopt;
  auto b = square_test(Integer(q.get_den()));
  if (!b) return std::nullopt;
  return make_rational(*a, *b);
}

SquarefreeDecomposition squarefree_decompose(const Integer& n, const FactorBudget& budget) {
  if (n == 0) throw std::domain_error("squarefree_decompose(0)");
  auto f = factor(n, budget);
  if (!f.complete()) throw UnfactoredError("squarefree_decompose: incomplete factorization", f.residue);
  SquarefreeDecomposition d{1, f.sign};
  for (const auto& pp : f.factors) {
    Integer t;
    mpz_pow_ui(t.get_mpz_t(), pp.p.get_mpz_t(), pp.e / 2);
    d.s *= t;
    if (pp.e % 2) d.f *= pp.p;
  }
  return d;
}

int jacobi(const Integer& a, const Integer& n) {
  if (n <= 0 || mpz_even_p(n.get_mpz_t())) throw std::domain_error("jacobi: n must be odd positive");
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker(const Integer& a, const Integer& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

unsigned valuation(Integer n, const Integer& p) {
  if (n == 0) throw std::domain_error("valuation of 0");
  return static_cast<unsigned>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

int valuation(const Rational& q, const Integer& p) {
  if (q == 0) throw std::domain_error("valuation of 0");
  Integer num = q.get_num(), den = q.get_den();
  if (num < 0) num = -num;
  return static_cast<int>(valuation(num, p)) - static_cast<int>(valuation(den, p));
}

Integer strip_prime(Integer n, const Integer& p) {
  if (n == 0) return 0;
  mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  return n;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::optional<Integer> inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) return std::nullopt;
  return r;
}

std::optional<Integer> sqrt_mod_prime(const Integer& a0, const Integer& p) {
  Integer a = mod(a0, p);
  if (a == 0) return Integer(0);
  if (p == 2) return a;
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
  Integer q = p - 1;
  unsigned s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q >>= 1;
    ++s;
  }
  Integer z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Integer c, x, t, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    Integer tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Integer b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % p;
    x = x * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return x;
}

Integer crt(const std::vector<Integer>& residues, const std::vector<Integer>& moduli) {
  Integer x = 0, m = 1;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    auto inv = inverse_mod(m, moduli[i]);
    if (!inv) throw std::domain_error("crt: moduli not coprime");
    Integer t = mod((residues[i] - x) * *inv, moduli[i]);
    x += m * t;
    m *= moduli[i];
  }
  return mod(x, m);
}

std::optional<Integer> sqrt_mod(const Integer& a, const std::vector<Integer>& primes) {
  std::vector<Integer> rs, ms;
  for (const auto& p : primes) {
    auto r = sqrt_mod_prime(a, p);
    if (!r) return std::nullopt;
    rs.push_back(*r);
    ms.push_back(p);
  }
  if (rs.empty()) return Integer(0);
  return crt(rs, ms);
}

std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m) {
  Integer bound = isqrt(m / 2);
  Integer r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return std::nullopt;
  return make_rational(r1, s1);
}

int hilbert_symbol(const Rational& a, const Rational& b, const Integer& p) {
  if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol of 0");
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  Integer A = a.get_num() * a.get_den();
  Integer B = b.get_num() * b.get_den();
  unsigned alpha = valuation(A, p), beta = valuation(B, p);
  Integer u = strip_prime(A, p), v = strip_prime(B, p);
  if (p == 2) {
    auto eps = [](const Integer& x) { return mod(x, 4) == 3 ? 1 : 0; };
    auto omega = [](const Integer& x) {
      Integer r = mod(x, 8);
      return (r == 3 || r == 5) ? 1 : 0;
    };
    int e = eps(u) * eps(v) + static_cast<int>(alpha % 2) * omega(v) + static_cast<int>(beta % 2) * omega(u);
    return e % 2 ? -1 : 1;
  }
  int s = 1;
  if ((alpha % 2) && (beta % 2) && mod(p, 4) == 3) s = -s;
  if (beta % 2) s *= mpz_legendre(mod(u, p).get_mpz_t(), p.get_mpz_t());
  if (alpha % 2) s *= mpz_legendre(mod(v, p).get_mpz_t(), p.get_mpz_t());
  return s;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer lcm_of_denominators(const std::vector<Rational>& qs) {
  Integer l = 1;
  for (const auto& q : qs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

}  // namespace ecfam
