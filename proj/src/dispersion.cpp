#include "ecoepi/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecoepi/errors.hpp"
#include "ecoepi/kinetics.hpp"
#include "ecoepi/parallel.hpp"
#include "ecoepi/stability.hpp"

namespace ecoepi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct CubicPair {
  double q1, q2, q3, q4;  // rho3(z)
  double r1, r2, r3, r4;  // phi(z)
};

// Coefficients of rho3 and phi as cubics in z = k^2, from the community
// matrix entries and the diffusivities.
CubicPair mode_cubics(const Eigen::Matrix3d& a, const ModelParams& p) {
  const double d1 = p.d1, d2 = p.d2, d3 = p.d3;
  CubicPair c{};
  c.q1 = d1 * d2 * d3;
  c.q2 = -(a(0, 0) * d2 * d3 + a(1, 1) * d1 * d3 + a(2, 2) * d1 * d2);
  c.q3 = a(0, 0) * a(2, 2) * d2 + a(1, 1) * a(2, 2) * d1 + a(0, 0) * a(1, 1) * d3 -
         d3 * a(0, 1) * a(1, 0) - d1 * a(1, 2) * a(2, 1);
  c.q4 = a(2, 1) * a(0, 0) * a(1, 2) + a(2, 2) * a(0, 1) * a(1, 0) -
         a(1, 0) * a(2, 1) * a(0, 2) - a(0, 0) * a(1, 1) * a(2, 2);
  const double tr = a(0, 0) + a(1, 1) + a(2, 2);
  const double b = d1 + d2 + d3;
  const double p1 = d1 * d2 + d2 * d3 + d3 * d1;
  const double p2 = -(a(0, 0) * (d2 + d3) + a(1, 1) * (d3 + d1) + a(2, 2) * (d1 + d2));
  const double p3 = (a(0, 0) * a(2, 2) + a(1, 1) * a(2, 2) + a(0, 0) * a(1, 1)) -
                    a(0, 1) * a(1, 0) - a(1, 2) * a(2, 1);
  c.r1 = b * p1 - c.q1;
  c.r2 = b * p2 - tr * p1 - c.q2;
  c.r3 = b * p3 - tr * p2 - c.q3;
  c.r4 = -(tr * p3 + c.q4);
  return c;
}

// Positive local minimizer of c1 z^3 + c2 z^2 + c3 z + c4 (requires c1 > 0).
// Uses the cancellation-free root form when c2 > 0.
std::optional<double> positive_minimizer(double c1, double c2, double c3) {
  if (!(c1 > 0.0)) return std::nullopt;
  const double disc = c2 * c2 - 3.0 * c1 * c3;
  if (!(disc > 0.0)) return std::nullopt;
  const double sq = std::sqrt(disc);
  const double z = c2 <= 0.0 ? (-c2 + sq) / (3.0 * c1) : -c3 / (c2 + sq);
  if (!(z > 0.0)) return std::nullopt;
  return z;
}

// sqrt in __float128 without libquadmath: long-double seed plus one Newton
// step, which squares the seed's relative error (~1e-19 -> ~1e-38).
__float128 qsqrt(__float128 x) {
  __float128 s = sqrtl(static_cast<long double>(x));
  return 0.5 * (s + x / s);
}

// Value of the cubic at its positive local minimizer via the closed form
// (2 c2^3 - 9 c1 c2 c3 + 27 c1^2 c4 - 2 (c2^2 - 3 c1 c3)^{3/2}) / (27 c1^2).
// The terms cancel to ~1e-9 of their magnitude for diffusivities spanning
// many decades, so the arithmetic runs in __float128.
double closed_form_min(double c1, double c2, double c3, double c4) {
  const __float128 q1 = c1, q2 = c2, q3 = c3, q4 = c4;
  const __float128 disc = q2 * q2 - 3.0 * q1 * q3;
  const __float128 num = 2.0 * q2 * q2 * q2 - 9.0 * q1 * q2 * q3 + 27.0 * q1 * q1 * q4 -
                         2.0 * disc * qsqrt(disc);
  return static_cast<double>(num / (27.0 * q1 * q1));
}

ModelParams with_param(ModelParams p, double ModelParams::* field, double value) {
  p.*field = value;
  return p;
}

// phi(0) at the (first) feasible equilibrium for the given parameters;
// nullopt when none exists.
std::optional<double> phi0_at(const ModelParams& p) {
  for (const Equilibrium& eq : find_equilibria(p))
    if (eq.feasible) return dispersion(eq, p, 0.0).phi;
  return std::nullopt;
}

}  // namespace

DispersionSample dispersion(const Equilibrium& eq, const ModelParams& p, double k) {
  if (!eq.feasible) throw validation_error("dispersion requires a feasible equilibrium");
  if (!(k >= 0.0)) throw validation_error("dispersion requires k >= 0");
  const Eigen::Matrix3d a = jacobian_at({eq.u_star, eq.v_star, eq.w_star}, p);
  const double z = k * k;
  const CubicPair c = mode_cubics(a, p);
  DispersionSample s{};
  s.k = k;
  // rho1 = -(trace) + (d1+d2+d3) z; rho2 and rho3 via the same cubics used by
  // the instability test, keeping both code paths identical by construction.
  s.rho1 = -(a(0, 0) + a(1, 1) + a(2, 2)) + (p.d1 + p.d2 + p.d3) * z;
  const double p2 = -(a(0, 0) * (p.d2 + p.d3) + a(1, 1) * (p.d3 + p.d1) +
                      a(2, 2) * (p.d1 + p.d2));
  const double p3 = (a(0, 0) * a(2, 2) + a(1, 1) * a(2, 2) + a(0, 0) * a(1, 1)) -
                    a(0, 1) * a(1, 0) - a(1, 2) * a(2, 1);
  s.rho2 = (p.d1 * p.d2 + p.d2 * p.d3 + p.d3 * p.d1) * z * z + p2 * z + p3;
  s.rho3 = ((c.q1 * z + c.q2) * z + c.q3) * z + c.q4;
  s.phi = s.rho1 * s.rho2 - s.rho3;
  return s;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::planar_stable: return "planar_stable";
    case Verdict::turing: return "turing";
    case Verdict::hopf_unstable: return "hopf_unstable";
    case Verdict::stable_everywhere: return "stable_everywhere";
    case Verdict::infeasible: return "infeasible";
  }
  return "?";
}

TuringDiagnostic turing_check(const Equilibrium& eq, const ModelParams& p) {
  if (!eq.feasible) throw validation_error("turing_check requires a feasible equilibrium");
  const Eigen::Matrix3d a = jacobian_at({eq.u_star, eq.v_star, eq.w_star}, p);
  const CubicPair c = mode_cubics(a, p);
  TuringDiagnostic t{};
  t.q1 = c.q1;
  t.q2 = c.q2;
  t.q3 = c.q3;
  t.q4 = c.q4;
  t.r1 = c.r1;
  t.r2 = c.r2;
  t.r3 = c.r3;
  t.r4 = c.r4;
  t.kd_sq = positive_minimizer(c.q1, c.q2, c.q3);
  if (t.kd_sq) t.rho3_min = closed_form_min(c.q1, c.q2, c.q3, c.q4);
  t.kf_sq = positive_minimizer(c.r1, c.r2, c.r3);
  if (t.kf_sq) t.phi_min = closed_form_min(c.r1, c.r2, c.r3, c.r4);

  const DispersionSample at0 = dispersion(eq, p, 0.0);
  const bool planar_ok = at0.rho1 > 0.0 && at0.rho3 > 0.0 && at0.phi > 0.0;
  if (!planar_ok)
    t.verdict = Verdict::hopf_unstable;
  else if ((t.rho3_min && *t.rho3_min < 0.0) || (t.phi_min && *t.phi_min < 0.0))
    t.verdict = Verdict::turing;
  else
    t.verdict = Verdict::planar_stable;
  return t;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1 || !(hi >= lo)) throw validation_error("linspace: need n >= 1 and hi >= lo");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo)) throw validation_error("logspace: need 0 < lo <= hi");
  std::vector<double> v = linspace(std::log10(lo), std::log10(hi), n);
  for (double& x : v) x = std::pow(10.0, x);
  return v;
}

RegionMap region_scan(const ModelParams& base, const AxisSpec& axis1, const AxisSpec& axis2,
                      int workers) {
  if (axis1.values.empty() || axis2.values.empty())
    throw validation_error("region_scan: empty axis grid");
  double ModelParams::* f1 = param_field(axis1.name);
  double ModelParams::* f2 = param_field(axis2.name);

  RegionMap map;
  map.axis1 = axis1;
  map.axis2 = axis2;
  const long n1 = static_cast<long>(axis1.values.size());
  const long n2 = static_cast<long>(axis2.values.size());
  map.cells.assign(n1 * n2, Verdict::infeasible);
  map.phi0.assign(n1 * n2, kNaN);

  parallel_for(n1 * n2, worker_count(workers), [&](long idx) {
    const long i = idx / n2, j = idx % n2;
    ModelParams p = base;
    p.*f1 = axis1.values[i];
    p.*f2 = axis2.values[j];
    for (const Equilibrium& eq : find_equilibria(p)) {
      if (!eq.feasible) continue;
      const TuringDiagnostic t = turing_check(eq, p);
      map.cells[idx] = t.verdict;
      map.phi0[idx] = dispersion(eq, p, 0.0).phi;
      break;
    }
  });

  // Hopf boundary: phi(0) sign change between neighbors, rho1(0), rho3(0) > 0
  // on the stable (phi > 0) side; refine the crossing parameter by bisection.
  const auto stable_side_ok = [&](long i, long j) {
    ModelParams p = base;
    p.*f1 = axis1.values[i];
    p.*f2 = axis2.values[j];
    for (const Equilibrium& eq : find_equilibria(p))
      if (eq.feasible) {
        const DispersionSample s = dispersion(eq, p, 0.0);
        return s.rho1 > 0.0 && s.rho3 > 0.0;
      }
    return false;
  };
  const auto refine = [&](ModelParams p, double ModelParams::* field, double lo, double hi,
                          double phi_lo) {
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      const std::optional<double> pm = phi0_at(with_param(p, field, mid));
      if (!pm) break;  // steady state vanished mid-interval; keep the bracket edge
      if ((phi_lo < 0.0) == (*pm < 0.0)) {
        lo = mid;
        phi_lo = *pm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  for (long i = 0; i < n1; ++i)
    for (long j = 0; j < n2; ++j) {
      const double a = map.phi0[i * n2 + j];
      if (!std::isfinite(a)) continue;
      // axis1-direction neighbor
      if (i + 1 < n1) {
        const double b = map.phi0[(i + 1) * n2 + j];
        if (std::isfinite(b) && (a < 0.0) != (b < 0.0)) {
          const long si = a > 0.0 ? i : i + 1;  // stable side
          if (stable_side_ok(si, j)) {
            ModelParams p = base;
            p.*f2 = axis2.values[j];
            map.hopf.push_back({0, static_cast<int>(si), static_cast<int>(j),
                                refine(p, f1, axis1.values[i], axis1.values[i + 1], a)});
          }
        }
      }
      // axis2-direction neighbor
      if (j + 1 < n2) {
        const double b = map.phi0[i * n2 + j + 1];
        if (std::isfinite(b) && (a < 0.0) != (b < 0.0)) {
          const long sj = a > 0.0 ? j : j + 1;
          if (stable_side_ok(i, sj)) {
            ModelParams p = base;
            p.*f1 = axis1.values[i];
            map.hopf.push_back({1, static_cast<int>(i), static_cast<int>(sj),
                                refine(p, f2, axis2.values[j], axis2.values[j + 1], a)});
          }
        }
      }
    }
  return map;
}

NonexistenceReport nonexistence_thresholds(const ModelParams& p, double L,
                                           double w_prime_override) {
  if (!(L > 0.0)) throw validation_error("nonexistence_thresholds: L must be positive");
  double w_prime = w_prime_override;
  if (w_prime < 0.0) {
    const AprioriBounds b = a_priori_bounds(p);
    if (!b.valid)
      throw validation_error("nonexistence_thresholds: a priori bounds invalid - " +
                             b.diagnostic);
    w_prime = b.w_max;
  }
  NonexistenceReport r{};
  r.mu1 = (M_PI / L) * (M_PI / L);
  r.d1_star = p.r / r.mu1;
  r.d2_star = p.sigma * w_prime * (p.c1 + p.c2 * p.beta) / r.mu1;
  r.w_prime = w_prime;
  r.d1_threshold_met = p.d1 >= r.d1_star;
  r.d2_threshold_met = p.d2 >= r.d2_star;
  r.d3_note =
      "the threshold on d3 is existence-only (defined through an epsilon choice "
      "in the underlying argument); no closed form is evaluated";
  return r;
}

std::vector<double> domain_spectrum(double L, int count) {
  if (!(L > 0.0) || count < 1) throw validation_error("domain_spectrum: need L > 0, count >= 1");
  const double unit = (M_PI / L) * (M_PI / L);
  std::vector<double> mu;
  // (i^2 + j^2) values up to a safe index bound for the requested count
  const int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)))) + 2;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) mu.push_back((static_cast<double>(i) * i + static_cast<double>(j) * j) * unit);
  std::sort(mu.begin(), mu.end());
  mu.resize(count);
  return mu;
}

}  // namespace ecoepi
