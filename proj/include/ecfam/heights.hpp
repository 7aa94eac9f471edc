#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <string>
#include <vector>

#include "ecfam/localdata.hpp"

namespace ecfam {

using Real = boost::multiprecision::mpfr_float_100;

std::string to_string(const Real& x, int digits = 20);

struct HeightOptions {
  double eps = 1e-10;        // target error per height
  double threshold = 1e-6;   // Gram determinant needed for a certificate
  unsigned threads = 0;      // 0: hardware concurrency
  FactorBudget budget;
  std::vector<Integer> hints;
};

struct HeightValue {
  Real value;
  Real error;  // a priori bound on |value - h(P)|
};

// Canonical height in the normalization h(P) ~ log H(x(P)) (twice Silverman's).
class HeightContext {
 public:
  explicit HeightContext(const WeierstrassCurve& E, const HeightOptions& opt = HeightOptions{});

  const WeierstrassCurve& curve() const { return E_; }
  const WeierstrassCurve& minimal() const { return G_.minimal; }

  HeightValue height(const Point& P) const;            // P on curve()
  HeightValue archimedean(const Point& Pmin) const;    // 2 lambda_inf on the minimal model
  Real non_archimedean(const Point& Pmin) const;       // sum over p of 2 lambda_p
  HeightValue pairing(const Point& P, const Point& Q) const;  // <P,Q> with <P,P> = h(P)

 private:
  WeierstrassCurve E_;
  HeightOptions opt_;
  GlobalReduction G_;
};

HeightValue canonical_height(const WeierstrassCurve& E, const Point& P,
                             const HeightOptions& opt = HeightOptions{});

struct HeightPairingMatrix {
  std::vector<Point> points;
  std::vector<std::vector<Real>> entries;
  Real entry_error = 0;
  Real det = 0;
  Real det_error = 0;

  bool symmetric() const;
};

HeightPairingMatrix height_pairing_matrix(const WeierstrassCurve& E, const std::vector<Point>& pts,
                                          const HeightOptions& opt = HeightOptions{});

enum class Independence { Independent, Inconclusive };
std::string to_string(Independence r);

struct IndependenceCertificate {
  Independence result = Independence::Inconclusive;
  HeightPairingMatrix gram;
  double threshold = 1e-6;

  bool independent() const { return result == Independence::Independent; }
};

// Independent when det > max(threshold, det_error); never claims dependence.
IndependenceCertificate independence_certificate(const WeierstrassCurve& E, const std::vector<Point>& pts,
                                                 const HeightOptions& opt = HeightOptions{});

}  // namespace ecfam
