#include "ecoepi/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "ecoepi/errors.hpp"
#include "ecoepi/kinetics.hpp"

namespace ecoepi {

namespace {

ReducedEquilibriumSystem reduction(const ModelParams& p, bool exact) {
  if (p.sigma == 0.0)
    throw validation_error("equilibrium reduction undefined without cannibalism (sigma = 0)");
  const double P = p.p1();
  const double D = p.d + p.e;
  ReducedEquilibriumSystem s;
  s.m1 = p.r / p.k;
  s.m2 = p.r * (p.gamma / p.k - 1.0);
  s.m3 = p.alpha1 + p.alpha2 * (p.l * p.f - p.beta + p.lambda / p.sigma);
  s.m4 = -(p.r * p.gamma + (p.alpha2 / p.sigma) * D);
  const double slf = p.sigma * p.l * p.f;
  s.n1 = p.c2 * P * P + (p.c1 * p.sigma - p.sigma - slf - p.lambda) * P +
         (p.c1 * p.sigma * p.beta - p.sigma * p.beta) * p.sigma;
  s.n2 = p.alpha * (p.alpha1 * p.sigma + p.alpha2 * P);
  s.n3 = -((p.c1 * p.sigma - p.sigma - slf - p.lambda) * D + 2.0 * p.c2 * D * P +
           p.sigma * p.d);
  s.n4 = -p.alpha * p.alpha2 * D;
  s.n5 = p.c2 * D * D;
  if (exact) {
    s.n1 += p.c2 * p.sigma * p.beta * P;
    s.n3 -= p.c2 * p.sigma * p.beta * D;
  }
  return s;
}

// c = a * b (truncated to degree 5; inputs never exceed it in this use).
template <std::size_t NA, std::size_t NB>
std::array<double, 6> poly_mul(const std::array<double, NA>& a,
                               const std::array<double, NB>& b) {
  std::array<double, 6> c{};
  for (std::size_t i = 0; i < NA; ++i)
    for (std::size_t j = 0; j < NB && i + j < 6; ++j) c[i + j] += a[i] * b[j];
  return c;
}

double poly_eval(const std::array<double, 6>& c, double u) {
  double acc = c[5];
  for (int i = 4; i >= 0; --i) acc = acc * u + c[i];
  return acc;
}

double poly_deriv_eval(const std::array<double, 6>& c, double u) {
  double acc = 5.0 * c[5];
  for (int i = 4; i >= 1; --i) acc = acc * u + i * c[i];
  return acc;
}

}  // namespace

ReducedEquilibriumSystem reduce_equilibrium_system(const ModelParams& p) {
  return reduction(p, /*exact=*/false);
}

ReducedEquilibriumSystem exact_reduction(const ModelParams& p) {
  return reduction(p, /*exact=*/true);
}

std::array<double, 6> equilibrium_quintic(const ModelParams& p,
                                          const ReducedEquilibriumSystem& s) {
  if (std::abs(s.m3) < 1e-300)
    throw numerical_error("reduced steady-state system degenerate: m3 = 0");
  // v(u) = q(u)/m3 with q(u) = -(m1 u^2 + m2 u + m4). Substituting into the
  // second equation and multiplying by (gamma+u)*m3^2:
  //   n1 q^2 (gamma+u) + n2 u q m3 + n3 q (gamma+u) m3 + (n4 u + n5 (gamma+u)) m3^2 = 0
  const std::array<double, 3> q{-s.m4, -s.m2, -s.m1};
  const std::array<double, 2> lin{p.gamma, 1.0};
  const double m3sq = s.m3 * s.m3;

  std::array<double, 6> c = poly_mul(poly_mul(q, q), lin);
  for (auto& x : c) x *= s.n1;
  const auto uq = poly_mul(std::array<double, 2>{0.0, 1.0}, q);
  const auto qlin = poly_mul(q, lin);
  for (int i = 0; i < 6; ++i) c[i] += s.n2 * s.m3 * uq[i] + s.n3 * s.m3 * qlin[i];
  c[0] += s.n5 * p.gamma * m3sq;
  c[1] += (s.n4 + s.n5) * m3sq;
  return c;
}

std::vector<Equilibrium> find_equilibria(const ModelParams& p) {
  const ReducedEquilibriumSystem sys = exact_reduction(p);
  const auto quintic = equilibrium_quintic(p, sys);
  const double P = p.p1();
  const double D = p.d + p.e;

  const auto v_of_u = [&](double u) {
    return -(sys.m1 * u * u + sys.m2 * u + sys.m4) / sys.m3;
  };

  std::vector<Equilibrium> out;
  const double step = p.k / 1e4;
  double u_lo = step * 1e-6;  // open interval at 0
  double f_lo = poly_eval(quintic, u_lo);
  for (long i = 1; i <= 10000; ++i) {
    const double u_hi = i * step;
    const double f_hi = poly_eval(quintic, u_hi);
    if (f_lo == 0.0 || (f_lo < 0.0) != (f_hi < 0.0)) {
      double a = u_lo, b = u_hi, fa = f_lo;
      if (fa == 0.0) {
        b = a;
      } else {
        while (b - a > 1e-12) {
          const double mid = 0.5 * (a + b);
          const double fm = poly_eval(quintic, mid);
          if (fm == 0.0) {
            a = b = mid;
            break;
          }
          if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
      }
      double u = 0.5 * (a + b);
      const double dq = poly_deriv_eval(quintic, u);
      if (dq != 0.0) u -= poly_eval(quintic, u) / dq;

      const double v = v_of_u(u);
      const double w = (P * v - D) / p.sigma;
      if (u > 0.0 && v > 0.0 && w > 0.0) {
        Equilibrium eq;
        eq.u_star = u;
        eq.v_star = v;
        eq.w_star = w;
        Eigen::Vector3d x{u, v, w};
        eq.residual_norm = kinetics(x, p).cwiseAbs().maxCoeff();
        // The quintic root is already the exact steady state; the full-system
        // Newton loop below only mops up the last few ulps if needed.
        for (int it = 0; it < 8 && eq.residual_norm >= 1e-10; ++it) {
          const Eigen::Vector3d g = kinetics(x, p);
          x -= jacobian_at(x, p).partialPivLu().solve(g);
          eq.u_star = x[0];
          eq.v_star = x[1];
          eq.w_star = x[2];
          eq.residual_norm = kinetics(x, p).cwiseAbs().maxCoeff();
        }
        eq.feasible = eq.u_star > 0.0 && eq.v_star > 0.0 && eq.w_star > 0.0 &&
                      P * eq.v_star > D;
        const bool dup = std::any_of(out.begin(), out.end(), [&](const Equilibrium& e) {
          return std::abs(e.u_star - eq.u_star) < 1e-9 * p.k;
        });
        if (!dup && eq.residual_norm < 1e-10) out.push_back(eq);
      }
    }
    u_lo = u_hi;
    f_lo = f_hi;
  }
  std::sort(out.begin(), out.end(),
            [](const Equilibrium& a, const Equilibrium& b) { return a.u_star < b.u_star; });
  return out;
}

}  // namespace ecoepi
