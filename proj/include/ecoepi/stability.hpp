#pragma once
#include <Eigen/Dense>
#include <string>

#include "ecoepi/equilibrium.hpp"
#include "ecoepi/params.hpp"

namespace ecoepi {

// Characteristic-polynomial coefficients of the community matrix at a steady
// state, Routh-Hurwitz verdict, and the auxiliary constants used by the
// closed-form stability conditions. A, B, C here are the local-analysis
// constants (A = alpha1 v* + alpha2 w*, B = gamma + u*, C = alpha A gamma/B^2)
// and are unrelated to the quadratic coefficients in AprioriBounds.
struct TemporalStabilityReport {
  double A1, A2, A3;       // lambda^3 + A1 lambda^2 + A2 lambda + A3
  double hurwitz_product;  // A1*A2 - A3
  bool stable;
  double A, B, C, D1, M1, E1, M2, P1;
};

// Routh-Hurwitz analysis of an arbitrary 3x3 community matrix:
// A1 = -trace, A2 = sum of principal 2x2 minors, A3 = -det.
TemporalStabilityReport stability_from_jacobian(const Eigen::Matrix3d& J);

// Full report at a feasible steady state (throws if eq is infeasible).
TemporalStabilityReport temporal_stability(const Equilibrium& eq, const ModelParams& p);

// The four sufficient local-stability inequalities:
//   1. M1 > D1
//   2. M2 > E1
//   3. r/k > A/B^2
//   4. u* > max{1/w*, sigma/((M1-D1)+sigma w*), quadratic-root term}
// where the quadratic-root term [-(M1-D1)+sqrt((M1-D1)^2+4(r/k-A/B^2)sigma)]
// / (2(r/k-A/B^2)) is skipped (NaN) when condition 3 fails or the square root
// is undefined; the max in condition 4 then runs over the defined terms.
struct LocalStabilityReport {
  double M1, D1, M2, E1, rk, A_over_B2;
  double term_inv_w, term_sigma, term_quad;  // candidates for the lower bound on u*
  double u_lower_bound;                      // max over the defined terms
  bool cond1, cond2, cond3, cond4;
  bool all_hold;
};
LocalStabilityReport check_local_stability_conditions(const Equilibrium& eq,
                                                      const ModelParams& p);

// The two sufficient global-stability inequalities, with w_prime an upper
// bound on w (defaults to w_max from a_priori_bounds at the call sites):
//   1. (alpha1 v* + alpha2 w*)/(gamma+u*) + alpha gamma (alpha1 + alpha2 w*)
//      / (2(gamma+u*))  <=  r/k
//   2. alpha gamma (alpha1 + alpha2 w*)/(2(gamma+u*)) + c2 sigma (w'+w*+beta)
//      + alpha alpha2 k  <=  sigma beta + sigma (1-c1)
struct GlobalStabilityReport {
  double lhs1, rhs1, lhs2, rhs2;
  double w_prime;
  bool ineq1, ineq2;
  bool all_hold;
};
GlobalStabilityReport check_global_stability_conditions(const Equilibrium& eq,
                                                        const ModelParams& p,
                                                        double w_prime);

// A priori upper bounds on any positive solution: u <= k and, when the
// quadratic A z^2 + B z + C (coefficients unrelated to the local-analysis
// constants above) has the right sign pattern, v <= v_max and w <= w_max.
struct AprioriBounds {
  double u_max, v_max, w_max;
  double A, B, C;
  bool valid;              // A > 0, B < 0, 4AC < B^2
  std::string diagnostic;  // non-empty when invalid or when w_max <= 0
};
AprioriBounds a_priori_bounds(const ModelParams& p);  // throws when sigma == 0

}  // namespace ecoepi
