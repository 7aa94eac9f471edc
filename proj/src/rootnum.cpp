#include "ecfam/rootnum.hpp"

#include <algorithm>

namespace ecfam {

namespace {

struct LocalSignRow {
  int v4, v6, vD;
  int k4, k6, kd;
  int r4, r6, rd;
  int w;
};

#include "rootnum_tables.inc"

template <std::size_t N>
int lookup(const LocalSignRow (&rows)[N], int p, int cap4, int cap6, const WeierstrassCurve& E) {
  Integer c4 = E.c4().get_num(), c6 = E.c6().get_num(), D = E.disc().get_num();
  Integer P(p);
  auto v = [&](const Integer& n, int cap) { return n == 0 ? cap : std::min<int>(valuation(n, P), cap); };
  int v4 = v(c4, cap4), v6 = v(c6, cap6), vD = static_cast<int>(valuation(D, P));
  auto unit = [&](const Integer& n) { return n == 0 ? Integer(0) : strip_prime(n, P); };
  auto residue = [&](const Integer& n, int k) {
    Integer m;
    mpz_ui_pow_ui(m.get_mpz_t(), p, k);
    return mod(unit(n), m);
  };
  for (const auto& r : rows) {
    if (r.v4 != v4 || r.v6 != v6 || r.vD != vD) continue;
    if (residue(c4, r.k4) == r.r4 && residue(c6, r.k6) == r.r6 && residue(D, r.kd) == r.rd) return r.w;
  }
  return 0;
}

int kronecker_sign(long a, const Integer& p) { return kronecker(Integer(a), p); }

}  // namespace

int local_root_number(const WeierstrassCurve& E, const LocalData& ld) {
  const Integer& p = ld.p;
  switch (ld.reduction) {
    case Reduction::Good:
    case Reduction::Nonsplit:
      return 1;
    case Reduction::Split:
      return -1;
    case Reduction::Additive:
      break;
  }
  Integer c4 = E.c4().get_num(), c6 = E.c6().get_num(), D = E.disc().get_num();
  int vD = static_cast<int>(valuation(D, p));
  bool pot_mult = c4 != 0 && 3 * static_cast<int>(valuation(c4, p)) < vD;
  if (pot_mult) {
    if (p == 2) return mod(strip_prime(c6, p), 4) == 1 ? -1 : 1;
    return kronecker_sign(-1, p);
  }
  if (p == 2) return lookup(kRows2, 2, 8, 12, E);
  if (p == 3) return lookup(kRows3, 3, 5, 8, E);
  int e = 12 / std::gcd(12, vD);
  if (e == 2 || e == 6) return kronecker_sign(-1, p);
  if (e == 3) return kronecker_sign(-3, p);
  if (e == 4) return kronecker_sign(-2, p);
  throw std::logic_error("local_root_number: unexpected semistability defect");
}

RootNumber root_number(const GlobalReduction& G) {
  RootNumber R;
  R.value = -1;
  for (const auto& ld : G.local) {
    if (ld.f == 0) continue;
    int w = local_root_number(G.minimal, ld);
    R.local[ld.p] = w;
    if (w == 0) {
      R.unresolved.push_back(ld.p);
      continue;
    }
    R.value *= w;
  }
  R.complete = G.complete() && R.unresolved.empty();
  return R;
}

RootNumber global_root_number(const WeierstrassCurve& E, const FactorBudget& budget,
                              const std::vector<Integer>& hints) {
  return root_number(global_reduction(E, budget, hints));
}

}  // namespace ecfam
