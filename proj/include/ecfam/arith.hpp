#pragma once

#include <gmpxx.h>

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ecfam {

using Integer = mpz_class;
using Rational = mpq_class;

// Raised when an operation needs a complete factorization and the budget ran out.
class UnfactoredError : public std::runtime_error {
 public:
  UnfactoredError(const std::string& what, Integer residue)
      : std::runtime_error(what), residue_(std::move(residue)) {}
  const Integer& residue() const { return residue_; }

 private:
  Integer residue_;
};

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(std::string_view text);
std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

// Limits for factor().  Zero means "skip that stage".
struct FactorBudget {
  std::uint64_t trial_bound = 1000000;
  std::uint64_t rho_iterations = 200000;
  unsigned ecm_curves = 30;
  std::uint64_t ecm_b1 = 20000;
  std::chrono::milliseconds time_limit{20000};  // 0: no limit, results depend on the counts only

  // "trial=N,rho=N,ecm=N,b1=N,ms=N"; unknown keys raise std::invalid_argument.
  static FactorBudget parse(std::string_view text);
  // Reads ECFAM_BUDGET if set, otherwise the defaults.
  static FactorBudget from_env();
  std::string to_string() const;
};

struct PrimePower {
  Integer p;
  unsigned e = 0;
};

// sign * prod p^e * residue; residue == 1 iff the factorization is complete.
// A residue > 1 is a product of composites nobody managed to split.
struct FactoredInt {
  int sign = 1;
  std::vector<PrimePower> factors;
  Integer residue = 1;

  bool complete() const { return residue == 1; }
  Integer value() const;
  unsigned valuation(const Integer& p) const;
  std::vector<Integer> primes() const;
};

bool is_probable_prime(const Integer& n);

// Witness set {2,...,41} is deterministic below this bound.
const Integer& deterministic_prime_bound();

FactoredInt factor(const Integer& n, const FactorBudget& budget = FactorBudget{},
                   const std::vector<Integer>& hints = {});

// One nontrivial factor or 0 on failure.
Integer pollard_brent(const Integer& n, std::uint64_t iterations, std::mt19937_64& rng);
Integer ecm_factor(const Integer& n, unsigned curves, std::uint64_t b1, std::mt19937_64& rng,
                   std::chrono::steady_clock::time_point deadline);

std::vector<std::uint32_t> small_primes(std::uint32_t bound);

std::optional<Rational> square_test(const Rational& q);
std::optional<Integer> square_test(const Integer& n);

// |n| = s^2 * |f| with f squarefree carrying the sign of n.
struct SquarefreeDecomposition {
  Integer s;
  Integer f;
};
SquarefreeDecomposition squarefree_decompose(const Integer& n,
                                             const FactorBudget& budget = FactorBudget{});

int jacobi(const Integer& a, const Integer& n);
int kronecker(const Integer& a, const Integer& n);

unsigned valuation(Integer n, const Integer& p);
int valuation(const Rational& q, const Integer& p);  // throws on q == 0
Integer strip_prime(Integer n, const Integer& p);     // n with all factors p removed

Integer mod(const Integer& a, const Integer& m);  // in [0, m)
std::optional<Integer> inverse_mod(const Integer& a, const Integer& m);
std::optional<Integer> sqrt_mod_prime(const Integer& a, const Integer& p);
// Square root modulo a squarefree positive modulus with known prime factors.
std::optional<Integer> sqrt_mod(const Integer& a, const std::vector<Integer>& primes);
Integer crt(const std::vector<Integer>& residues, const std::vector<Integer>& moduli);
std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m);

// Hilbert symbol (a,b)_p for nonzero rationals; p == 0 means the real place.
int hilbert_symbol(const Rational& a, const Rational& b, const Integer& p);

Integer isqrt(const Integer& n);
Integer lcm_of_denominators(const std::vector<Rational>& qs);

}  // namespace ecfam
