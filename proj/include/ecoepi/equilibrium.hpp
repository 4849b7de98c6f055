#pragma once
#include <array>
#include <vector>

#include "ecoepi/params.hpp"

namespace ecoepi {

// Candidate constant steady state.
struct Equilibrium {
  double u_star = 0.0;
  double v_star = 0.0;
  double w_star = 0.0;
  double residual_norm = 0.0;  // max |G_i| at the point
  bool feasible = false;       // all coordinates > 0 and p1()*v_star > d+e
};

// Coefficients of the two-equation steady-state system in (u, v) obtained by
// eliminating w = (p1*v - (d+e))/sigma:
//   m1*u^2 + m2*u + m3*v + m4 = 0
//   n1*v^2 + n2*u*v/(gamma+u) + n3*v + n4*u/(gamma+u) + n5 = 0
struct ReducedEquilibriumSystem {
  double m1, m2, m3, m4;
  double n1, n2, n3, n4, n5;
};

// Classical closed-form coefficient grouping. Note: n1 and n3 here group the
// c2-cannibalism gain with sigma*(beta*v+w) approximated by p1*v-(d+e), which
// drops the c2*sigma*beta cross terms; the root solver below uses the exact
// elimination instead (see exact_reduction). Throws when sigma == 0 (the
// coefficients divide by sigma).
ReducedEquilibriumSystem reduce_equilibrium_system(const ModelParams& p);

// Exact elimination of w from the steady-state system: identical to
// reduce_equilibrium_system except n1 += c2*sigma*beta*p1 and
// n3 -= c2*sigma*beta*(d+e). Roots of this system are exact zeros of the
// kinetics.
ReducedEquilibriumSystem exact_reduction(const ModelParams& p);

// Degree-5 polynomial in u (coefficients c[0] + c[1] u + ... + c[5] u^5)
// obtained by substituting v(u) from the first reduced equation into the
// second and clearing the (gamma+u) and m3 denominators.
std::array<double, 6> equilibrium_quintic(const ModelParams& p,
                                          const ReducedEquilibriumSystem& sys);

// All interior steady states: scans the exact quintic for sign changes on
// (0, k], bisects each bracket, Newton-polishes, and keeps roots whose induced
// v and w are positive. Every returned point has residual_norm < 1e-10.
// Throws when sigma == 0.
std::vector<Equilibrium> find_equilibria(const ModelParams& p);

}  // namespace ecoepi
