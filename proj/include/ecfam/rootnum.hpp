#pragma once

#include <map>
#include <vector>

#include "ecfam/localdata.hpp"

namespace ecfam {

struct RootNumber {
  int value = 1;
  std::map<Integer, int> local;  // bad primes only
  bool complete = true;
  std::vector<Integer> unresolved;  // bad primes whose local sign is unknown
};

// Local sign at ld.p on the global minimal model E; 0 when the p = 2, 3 table has no entry.
int local_root_number(const WeierstrassCurve& minimal, const LocalData& ld);

RootNumber root_number(const GlobalReduction& G);
RootNumber global_root_number(const WeierstrassCurve& E, const FactorBudget& budget = FactorBudget{},
                              const std::vector<Integer>& hints = {});

}  // namespace ecfam
