#include "ecoepi/stability.hpp"

#include <cmath>
#include <limits>

#include "ecoepi/errors.hpp"
#include "ecoepi/kinetics.hpp"

namespace ecoepi {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Eigen::Vector3d state_of(const Equilibrium& eq) {
  return {eq.u_star, eq.v_star, eq.w_star};
}
}  // namespace

TemporalStabilityReport stability_from_jacobian(const Eigen::Matrix3d& J) {
  TemporalStabilityReport r{};
  r.A1 = -J.trace();
  r.A2 = (J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0)) +
         (J(0, 0) * J(2, 2) - J(0, 2) * J(2, 0)) +
         (J(1, 1) * J(2, 2) - J(1, 2) * J(2, 1));
  r.A3 = -J.determinant();
  r.hurwitz_product = r.A1 * r.A2 - r.A3;
  r.stable = r.A1 > 0.0 && r.A2 > 0.0 && r.A3 > 0.0 && r.hurwitz_product > 0.0;
  r.A = r.B = r.C = r.D1 = r.M1 = r.E1 = r.M2 = r.P1 = kNaN;
  return r;
}

TemporalStabilityReport temporal_stability(const Equilibrium& eq, const ModelParams& p) {
  if (!eq.feasible) throw validation_error("temporal_stability requires a feasible equilibrium");
  TemporalStabilityReport r = stability_from_jacobian(jacobian_at(state_of(eq), p));
  const double u = eq.u_star, v = eq.v_star, w = eq.w_star;
  const double slf = p.sigma * p.l * p.f;
  r.A = p.alpha1 * v + p.alpha2 * w;
  r.B = p.gamma + u;
  r.C = p.alpha * r.A * p.gamma / (r.B * r.B);
  r.D1 = p.alpha * p.alpha1 * u / r.B + p.c1 * p.sigma * (2.0 * p.beta * v + w) +
         p.c2 * p.sigma * p.beta * w;
  r.M1 = p.sigma * (2.0 * p.beta * v + w) + slf * w + p.lambda * w + p.d;
  r.E1 = p.alpha * p.alpha2 * u / r.B + p.c1 * p.sigma * v +
         p.c2 * p.sigma * (p.beta * v + 2.0 * w);
  r.M2 = p.sigma * v + slf * v + p.lambda * v;
  r.P1 = p.p1();
  return r;
}

LocalStabilityReport check_local_stability_conditions(const Equilibrium& eq,
                                                      const ModelParams& p) {
  const TemporalStabilityReport t = temporal_stability(eq, p);
  LocalStabilityReport r{};
  r.M1 = t.M1;
  r.D1 = t.D1;
  r.M2 = t.M2;
  r.E1 = t.E1;
  r.rk = p.r / p.k;
  r.A_over_B2 = t.A / (t.B * t.B);
  r.cond1 = r.M1 > r.D1;
  r.cond2 = r.M2 > r.E1;
  r.cond3 = r.rk > r.A_over_B2;

  r.term_inv_w = 1.0 / eq.w_star;
  r.term_sigma = p.sigma / ((r.M1 - r.D1) + p.sigma * eq.w_star);
  r.term_quad = kNaN;
  const double gap = r.rk - r.A_over_B2;
  const double disc = (r.M1 - r.D1) * (r.M1 - r.D1) + 4.0 * gap * p.sigma;
  if (gap > 0.0 && disc >= 0.0)
    r.term_quad = (-(r.M1 - r.D1) + std::sqrt(disc)) / (2.0 * gap);

  r.u_lower_bound = std::max(r.term_inv_w, r.term_sigma);
  if (std::isfinite(r.term_quad)) r.u_lower_bound = std::max(r.u_lower_bound, r.term_quad);
  r.cond4 = eq.u_star > r.u_lower_bound;
  r.all_hold = r.cond1 && r.cond2 && r.cond3 && r.cond4;
  return r;
}

GlobalStabilityReport check_global_stability_conditions(const Equilibrium& eq,
                                                        const ModelParams& p,
                                                        double w_prime) {
  if (!eq.feasible)
    throw validation_error("check_global_stability_conditions requires a feasible equilibrium");
  if (!(w_prime >= 0.0))
    throw validation_error("check_global_stability_conditions: w_prime must be >= 0");
  const double u = eq.u_star, v = eq.v_star, w = eq.w_star;
  const double half_gain = p.alpha * p.gamma * (p.alpha1 + p.alpha2 * w) / (2.0 * (p.gamma + u));
  GlobalStabilityReport r{};
  r.w_prime = w_prime;
  r.lhs1 = (p.alpha1 * v + p.alpha2 * w) / (p.gamma + u) + half_gain;
  r.rhs1 = p.r / p.k;
  r.lhs2 = half_gain + p.c2 * p.sigma * (w_prime + w + p.beta) + p.alpha * p.alpha2 * p.k;
  r.rhs2 = p.sigma * p.beta + p.sigma * (1.0 - p.c1);
  r.ineq1 = r.lhs1 <= r.rhs1;
  r.ineq2 = r.lhs2 <= r.rhs2;
  r.all_hold = r.ineq1 && r.ineq2;
  return r;
}

AprioriBounds a_priori_bounds(const ModelParams& p) {
  if (p.sigma == 0.0)
    throw validation_error("a_priori_bounds undefined without cannibalism (sigma = 0)");
  const double P = p.p1();
  const double D = p.d + p.e;
  const double slf = p.sigma * p.l * p.f;
  const double pk = p.alpha * p.k / (p.gamma + p.k);  // saturated conversion at u = k

  AprioriBounds b{};
  b.u_max = p.k;
  b.A = (1.0 - p.c1) * p.sigma * p.beta - (p.c2 / p.sigma) * P * P +
        (P / p.sigma) * (p.sigma + slf + p.lambda - p.c1 * p.sigma - p.c2 * p.sigma * p.beta);
  b.B = -p.alpha1 * pk + (P / p.sigma) * (2.0 * p.c2 * D - p.alpha2 * pk) +
        D * (p.c1 * p.sigma + p.c2 * p.sigma * p.beta - p.sigma - slf - p.lambda);
  b.C = (D / p.sigma) * (p.alpha2 * pk - p.c2 * D);
  b.valid = b.A > 0.0 && b.B < 0.0 && 4.0 * b.A * b.C < b.B * b.B;
  if (!b.valid) {
    b.v_max = kNaN;
    b.w_max = kNaN;
    b.diagnostic = "bound hypotheses violated: need A > 0, B < 0, 4AC < B^2 (A=" +
                   std::to_string(b.A) + ", B=" + std::to_string(b.B) +
                   ", C=" + std::to_string(b.C) + ")";
    return b;
  }
  b.v_max = (-b.B + std::sqrt(b.B * b.B - 4.0 * b.A * b.C)) / (2.0 * b.A);
  b.w_max = (P * b.v_max - D) / p.sigma;
  if (b.w_max <= 0.0)
    b.diagnostic = "infeasible bound: w_max <= 0 (infection gain too weak, p1*v_max <= d+e)";
  return b;
}

}  // namespace ecoepi
