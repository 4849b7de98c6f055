#pragma once
#include <optional>
#include <string>
#include <vector>

#include "ecoepi/equilibrium.hpp"
#include "ecoepi/params.hpp"

namespace ecoepi {

// One point of the linearized dispersion relation: coefficients of
// mu^3 + rho1 mu^2 + rho2 mu + rho3 at spatial mode k^2 (scalar wave number,
// evaluated on k_y = 0), plus phi = rho1*rho2 - rho3.
struct DispersionSample {
  double k;
  double rho1, rho2, rho3;
  double phi;
};
DispersionSample dispersion(const Equilibrium& eq, const ModelParams& p, double k);

enum class Verdict {
  planar_stable,      // homogeneous state stable at k=0 and no unstable mode found
  turing,             // stable at k=0, destabilized at some k>0
  hopf_unstable,      // already unstable at k=0 (oscillatory/non-Turing regime)
  stable_everywhere,  // representable for completeness; the decision rule
                      // below never emits it (planar_stable covers its cases)
  infeasible          // no interior steady state (region-scan cells only)
};
std::string to_string(Verdict v);

// Diffusion-driven instability test. rho3(z) = q1 z^3 + q2 z^2 + q3 z + q4
// and phi(z) = r1 z^3 + r2 z^2 + r3 z + r4 in z = k^2. kd_sq / kf_sq are the
// positive local minimizers of those cubics when they exist (q1 > 0,
// positive stationary minimum - this admits q2 >= 0 with q3 < 0, which the
// sufficient-condition form q2 < 0 misses but the k-scan validation requires);
// rho3_min / phi_min are the cubic values there, evaluated in extended
// precision because the closed form cancels catastrophically for widely
// separated diffusivities.
struct TuringDiagnostic {
  double q1, q2, q3, q4;
  double r1, r2, r3, r4;
  std::optional<double> kd_sq, kf_sq;
  std::optional<double> rho3_min, phi_min;
  Verdict verdict;
};
// Verdict rule: hopf_unstable if the k=0 stability conditions fail
// (rho1(0) > 0, rho3(0) > 0, phi(0) > 0); turing if they hold and
// rho3_min < 0 or phi_min < 0; planar_stable otherwise.
TuringDiagnostic turing_check(const Equilibrium& eq, const ModelParams& p);

// Two-parameter verdict map. Cells without a feasible interior steady state
// are classified infeasible. Hopf boundary: sign change of phi(0) between
// neighboring cells with rho1(0) > 0 and rho3(0) > 0 on the stable side; the
// zero crossing is refined by bisection to 1e-6 in the scanned parameter.
struct AxisSpec {
  std::string name;            // a ModelParams field name
  std::vector<double> values;  // strictly increasing grid
};
std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> logspace(double lo, double hi, int n);  // lo, hi in linear units

struct HopfCrossing {
  int axis;              // 0: crossing along axis1, 1: along axis2
  int i, j;              // cell on the stable side of the crossing pair
  double param_at_zero;  // refined parameter value where phi(0) = 0
};
struct RegionMap {
  AxisSpec axis1, axis2;
  std::vector<Verdict> cells;  // axis1-major: cells[i * axis2.size() + j]
  std::vector<double> phi0;    // phi(0) per cell (NaN for infeasible cells)
  std::vector<HopfCrossing> hopf;
  Verdict at(int i, int j) const { return cells[i * axis2.values.size() + j]; }
};
RegionMap region_scan(const ModelParams& base, const AxisSpec& axis1, const AxisSpec& axis2,
                      int workers = 0);

// Diffusion thresholds beyond which no nonconstant steady state exists on
// [0, L]^2: mu1 = (pi/L)^2, d1_star = r/mu1, d2_star = sigma w' (c1+c2 beta)/mu1.
// The third-diffusion threshold has no closed form and is reported as a note.
// w' defaults to w_max from a_priori_bounds (invalid bounds throw); pass
// w_prime_override >= 0 to supply it directly.
struct NonexistenceReport {
  double mu1;
  double d1_star, d2_star;
  double w_prime;
  bool d1_threshold_met, d2_threshold_met;  // current d1 >= d1_star etc.
  std::string d3_note;
};
NonexistenceReport nonexistence_thresholds(const ModelParams& p, double L,
                                           double w_prime_override = -1.0);

// Neumann-Laplacian eigenvalues of the square [0, L]^2 in increasing order:
// (i^2 + j^2) (pi/L)^2, starting from mu0 = 0.
std::vector<double> domain_spectrum(double L, int count);

}  // namespace ecoepi
