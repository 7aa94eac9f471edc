#include "ecfam/heights.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace ecfam {

namespace {

Real real_of(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real real_of(const Integer& n) {
  Real r;
  mpfr_set_z(r.backend().data(), n.get_mpz_t(), MPFR_RNDN);
  return r;
}

struct Chart {
  Real b2, b4, b6, b8;
};

// b-invariants for the coordinate x + shift
Chart chart(const WeierstrassCurve& E, long shift) {
  Rational r(-shift);
  Rational b2 = E.b2(), b4 = E.b4(), b6 = E.b6(), b8 = E.b8();
  Rational c2 = b2 + 12 * r;
  Rational c4 = b4 + r * b2 + 6 * r * r;
  Rational c6 = b6 + 2 * r * b4 + r * r * b2 + 4 * r * r * r;
  Rational c8 = b8 + 3 * r * b6 + 3 * r * r * b4 + r * r * r * b2 + 3 * r * r * r * r;
  return {real_of(c2), real_of(c4), real_of(c6), real_of(c8)};
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex m;
  for (unsigned k = 0; k < threads; ++k)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

std::string to_string(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

std::string to_string(Independence r) { return r == Independence::Independent ? "independent" : "inconclusive"; }

HeightContext::HeightContext(const WeierstrassCurve& E, const HeightOptions& opt)
    : E_(E), opt_(opt), G_(global_reduction(E, opt.budget, opt.hints)) {}

HeightValue HeightContext::archimedean(const Point& P) const {
  if (P.inf) return {Real(0), Real(0)};
  const WeierstrassCurve& E = G_.minimal;
  Chart ch[2] = {chart(E, 0), chart(E, 1)};
  Rational H = 4;
  for (const Rational& b : std::vector<Rational>{E.b2(), 2 * E.b4(), 2 * E.b6(), E.b8()}) H = std::max(H, Rational(abs(b)));
  double logH = std::log(std::max(4.0, H.get_d()));
  double lmax = 5 + 2 * logH;
  int terms = std::max(40, static_cast<int>(std::ceil((std::log(lmax / opt_.eps) + 3) / std::log(4.0))));

  Real x = real_of(P.x);
  int s = abs(x) < Real(0.5) ? 1 : 0;
  Real t = 1 / (x + s);
  Real mu = -log(abs(t));
  Real f = 1;
  for (int n = 0; n <= terms; ++n) {
    f /= 4;
    const Chart& c = ch[s];
    Real t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    Real w = 4 * t + c.b2 * t2 + 2 * c.b4 * t3 + c.b6 * t4;
    Real z = 1 - c.b4 * t2 - 2 * c.b6 * t3 - c.b8 * t4;
    if (abs(w) <= 2 * abs(z)) {
      mu += f * log(abs(z));
      t = w / z;
    } else {
      Real zw = s == 0 ? Real(z + w) : Real(z - w);
      mu += f * log(abs(zw));
      t = w / zw;
      s = 1 - s;
    }
  }
  Real tail = Real(lmax) * pow(Real(4), -(terms + 1)) / 3;
  return {mu, tail + Real(1e-60)};
}

Real HeightContext::non_archimedean(const Point& P) const {
  if (P.inf) return 0;
  const WeierstrassCurve& E = G_.minimal;
  const Rational &x = P.x, &y = P.y;
  Real total = log(real_of(x.get_den()));
  Rational psi2 = 2 * y + E.a1() * x + E.a3();
  Rational dA = 3 * x * x + 2 * E.a2() * x + E.a4() - E.a1() * y;
  Rational psi3 = 3 * x * x * x * x + E.b2() * x * x * x + 3 * E.b4() * x * x + 3 * E.b6() * x + E.b8();
  std::vector<Integer> primes;
  for (const auto& ld : G_.local) primes.push_back(ld.p);
  if (G_.unfactored != 1) {
    Integer g = gcd(G_.unfactored, psi2.get_num());
    g = gcd(g, dA.get_num());
    if (g != 1) {
      auto fg = factor(g, opt_.budget, opt_.hints);
      if (!fg.complete()) throw UnfactoredError("height correction", fg.residue);
      for (const auto& p : fg.primes()) primes.push_back(p);
    }
  }
  Integer D = E.disc().get_num();
  Real corr = 0;
  for (const Integer& p : primes) {
    if (mpz_divisible_p(x.get_den().get_mpz_t(), p.get_mpz_t())) continue;
    int N = static_cast<int>(valuation(D, p));
    long A = dA == 0 ? 1L << 30 : valuation(dA, p);
    long B = psi2 == 0 ? 1L << 30 : valuation(psi2, p);
    if (A <= 0 || B <= 0) continue;
    Rational c;
    if (!mpz_divisible_p(E.c4().get_num().get_mpz_t(), p.get_mpz_t())) {
      Rational M = std::min(Rational(B), Rational(N, 2));
      c = M * (M - N) / N;
    } else {
      long C = psi3 == 0 ? 1L << 30 : valuation(psi3, p);
      c = C >= 3 * B ? Rational(-2 * B, 3) : Rational(-C, 4);
    }
    corr += real_of(c) * log(real_of(p));
  }
  return total + corr;
}

HeightValue HeightContext::height(const Point& P) const {
  E_.check(P);
  Point Q = G_.iso.map(P);
  if (Q.inf) return {Real(0), Real(0)};
  HeightValue a = archimedean(Q);
  Real v = a.value + non_archimedean(Q);
  return {v, a.error};
}

HeightValue HeightContext::pairing(const Point& P, const Point& Q) const {
  if (P == Q) return height(P);
  HeightValue s = height(E_.add(P, Q)), a = height(P), b = height(Q);
  return {(s.value - a.value - b.value) / 2, (s.error + a.error + b.error) / 2};
}

HeightValue canonical_height(const WeierstrassCurve& E, const Point& P, const HeightOptions& opt) {
  return HeightContext(E, opt).height(P);
}

bool HeightPairingMatrix::symmetric() const {
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (entries[i][j] != entries[j][i]) return false;
  return true;
}

HeightPairingMatrix height_pairing_matrix(const WeierstrassCurve& E, const std::vector<Point>& pts,
                                          const HeightOptions& opt) {
  HeightContext ctx(E, opt);
  std::size_t n = pts.size();
  HeightPairingMatrix M;
  M.points = pts;
  M.entries.assign(n, std::vector<Real>(n, Real(0)));
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) cells.emplace_back(i, j);
  std::vector<Real> err(cells.size());
  parallel_for(cells.size(), opt.threads, [&](std::size_t k) {
    auto [i, j] = cells[k];
    HeightValue h = ctx.pairing(pts[i], pts[j]);
    M.entries[i][j] = h.value;
    err[k] = h.error;
  });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) M.entries[i][j] = M.entries[j][i];
  for (const auto& e : err) M.entry_error = std::max(M.entry_error, e);

  // determinant by elimination with partial pivoting
  std::vector<std::vector<Real>> a = M.entries;
  Real det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0) {
      det = 0;
      break;
    }
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Real m = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= m * a[c][k];
    }
  }
  M.det = det;
  // Hadamard: |det(M + E) - det(M)| <= prod(|m_i| + |e_i|) - prod |m_i|
  Real e_row = sqrt(Real(n)) * M.entry_error, with = 1, without = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Real norm = 0;
    for (const auto& v : M.entries[i]) norm += v * v;
    norm = sqrt(norm);
    with *= norm + e_row;
    without *= norm;
  }
  M.det_error = with - without + Real(1e-50);
  return M;
}

IndependenceCertificate independence_certificate(const WeierstrassCurve& E, const std::vector<Point>& pts,
                                                 const HeightOptions& opt) {
  IndependenceCertificate C;
  C.threshold = opt.threshold;
  C.gram = height_pairing_matrix(E, pts, opt);
  if (C.gram.det > Real(opt.threshold) && C.gram.det > C.gram.det_error) C.result = Independence::Independent;
  return C;
}

}  // namespace ecfam
