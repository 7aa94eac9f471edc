#pragma once

#include <string>
#include <vector>

#include "ecfam/arith.hpp"
#include "ecfam/curves.hpp"

namespace ecfam {

enum class Reduction { Good, Split, Nonsplit, Additive };
std::string to_string(Reduction r);

struct Kodaira {
  // PARI numbering: 1 I0, 2 II, 3 III, 4 IV, 4+n I_n, -1 I0*, -4-n I_n*, -2 II*, -3 III*, -4 IV*
  int code = 1;
  std::string symbol() const;
};

struct LocalData {
  Integer p;
  Kodaira kodaira;
  int f = 0;  // conductor exponent
  int c = 1;  // Tamagawa number
  Reduction reduction = Reduction::Good;
  int vp_disc_min = 0;
  Isomorphism to_minimal;  // input model -> model minimal at p
};

// Tate's algorithm on an integral model.
LocalData tate_local(const WeierstrassCurve& E, const Integer& p);

// Global minimal model with a1, a3 in {0,1} and a2 in {-1,0,1}.
struct MinimalModel {
  WeierstrassCurve curve;
  Isomorphism iso;  // from the input curve
  bool certain = true;  // false when gcd(c4, c6) could not be fully factored
};
MinimalModel minimal_model(const WeierstrassCurve& E, const FactorBudget& budget = FactorBudget{},
                           const std::vector<Integer>& hints = {});

struct GlobalReduction {
  WeierstrassCurve minimal;
  Isomorphism iso;
  FactoredInt disc;  // factorization of the minimal discriminant
  std::vector<LocalData> local;  // one per bad prime, increasing p
  Integer unfactored = 1;        // part of the discriminant nobody split
  FactoredInt conductor;         // p^f over the factored primes; residue = unfactored
  bool minimal_certain = true;

  bool complete() const { return unfactored == 1 && minimal_certain; }
};
GlobalReduction global_reduction(const WeierstrassCurve& E, const FactorBudget& budget = FactorBudget{},
                                 const std::vector<Integer>& hints = {});

// N = prod p^f_p; the residue stays > 1 when the discriminant is not fully factored.
FactoredInt conductor(const WeierstrassCurve& E, const FactorBudget& budget = FactorBudget{},
                      const std::vector<Integer>& hints = {});

}  // namespace ecfam
