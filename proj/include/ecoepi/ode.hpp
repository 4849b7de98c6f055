#pragma once
#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ecoepi/errors.hpp"
#include "ecoepi/params.hpp"

namespace ecoepi {

// One classic fourth-order Runge-Kutta step of an autonomous field.
template <class F>
Eigen::Vector3d rk4_step(F&& rhs, const Eigen::Vector3d& x, double dt) {
  const Eigen::Vector3d k1 = rhs(x);
  const Eigen::Vector3d k2 = rhs(x + 0.5 * dt * k1);
  const Eigen::Vector3d k3 = rhs(x + 0.5 * dt * k2);
  const Eigen::Vector3d k4 = rhs(x + dt * k3);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::Vector3d> states;
  ModelParams params;
};

// Fixed-step RK4 integration of the temporal system; states recorded every
// `decimate`-th step (plus the initial state). Throws numerical_error naming
// the step when any component exceeds 1e6 or drops below -1e-8.
Trajectory integrate_rk4(const ModelParams& p, const Eigen::Vector3d& init, double dt,
                         double t_end, int decimate = 1);

struct LyapunovSettings {
  double transient = 5000.0;
  double total = 50000.0;  // accumulation time after the transient
  double renorm_interval = 1.0;
  double dt = 0.01;
};

struct LyapunovSpectrum {
  double L1, L2, L3;  // ordered descending
  double transient_time, total_time, renorm_interval;
  bool converged;     // tail-window drift test: half-window vs full-window
                      // estimates agree within 5e-3 per exponent
  double mean_trace;  // time-averaged Jacobian trace over the accumulation
                      // window (the spectrum sum in exact arithmetic)
};

// Benettin tangent-space method: integrates the state together with three
// tangent vectors through the variational equations dQ/dt = J(x(t)) Q,
// re-orthonormalizing by modified Gram-Schmidt every renorm_interval and
// accumulating the log norms after the transient.
LyapunovSpectrum lyapunov_spectrum(const ModelParams& p, const Eigen::Vector3d& init,
                                   const LyapunovSettings& settings = {});

// Same algorithm over a caller-supplied field and Jacobian (test hook for
// systems with known spectra).
template <class F, class DF>
LyapunovSpectrum lyapunov_spectrum_generic(F&& rhs, DF&& jac, Eigen::Vector3d x,
                                           const LyapunovSettings& s);

struct BifurcationSweep {
  std::string parameter;  // "lambda" or "sigma"
  std::vector<double> grid;
  std::vector<std::vector<double>> extrema;  // post-transient local extrema of v
  std::vector<bool> diverged;                // divergent runs are gaps, not failures
};

// For each grid value of the chosen parameter: integrate past the transient
// and record the local extrema of v over the window (sign changes of the
// discrete derivative). Runs that never cross an extremum (monotone settling)
// record the final v value as their single extremum so that every converged
// run has a non-empty list.
BifurcationSweep bifurcation_sweep(const ModelParams& p, const std::string& which,
                                   const std::vector<double>& grid,
                                   const Eigen::Vector3d& init, double transient = 10000.0,
                                   double window = 5000.0, double dt = 0.01,
                                   int workers = 0);

// Width of the extrema band (max - min; 0 for a single extremum). A settled
// run collapses to a narrow band, an oscillatory one stays wide.
double extrema_band_width(const std::vector<double>& extrema);

// --- implementation of the generic Lyapunov driver ---

template <class F, class DF>
LyapunovSpectrum lyapunov_spectrum_generic(F&& rhs, DF&& jac, Eigen::Vector3d x,
                                           const LyapunovSettings& s) {
  if (!(s.dt > 0.0) || !(s.total > 0.0) || !(s.renorm_interval > 0.0) ||
      !(s.transient >= 0.0) || s.transient >= s.transient + s.total)
    throw validation_error("lyapunov_spectrum: invalid settings");

  Eigen::Matrix3d Q = Eigen::Matrix3d::Identity();
  const long steps_per_renorm =
      std::max(1L, static_cast<long>(std::llround(s.renorm_interval / s.dt)));
  const long transient_steps = static_cast<long>(std::llround(s.transient / s.dt));
  const long total_steps = static_cast<long>(std::llround(s.total / s.dt));

  Eigen::Vector3d sums = Eigen::Vector3d::Zero();
  Eigen::Vector3d sums_half = Eigen::Vector3d::Zero();
  double trace_sum = 0.0;
  long accumulated = 0;

  const auto coupled_step = [&](Eigen::Vector3d& xx, Eigen::Matrix3d& QQ) {
    // RK4 on the joint (state, tangent) system.
    const Eigen::Vector3d k1 = rhs(xx);
    const Eigen::Matrix3d K1 = jac(xx) * QQ;
    const Eigen::Vector3d x2 = xx + 0.5 * s.dt * k1;
    const Eigen::Vector3d k2 = rhs(x2);
    const Eigen::Matrix3d K2 = jac(x2) * (QQ + 0.5 * s.dt * K1);
    const Eigen::Vector3d x3 = xx + 0.5 * s.dt * k2;
    const Eigen::Vector3d k3 = rhs(x3);
    const Eigen::Matrix3d K3 = jac(x3) * (QQ + 0.5 * s.dt * K2);
    const Eigen::Vector3d x4 = xx + s.dt * k3;
    const Eigen::Vector3d k4 = rhs(x4);
    const Eigen::Matrix3d K4 = jac(x4) * (QQ + s.dt * K3);
    xx += (s.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    QQ += (s.dt / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4);
  };

  // Modified Gram-Schmidt; returns the log of each pivot norm.
  const auto renorm = [](Eigen::Matrix3d& QQ) {
    Eigen::Vector3d logs;
    for (int c = 0; c < 3; ++c) {
      for (int prev = 0; prev < c; ++prev)
        QQ.col(c) -= QQ.col(prev).dot(QQ.col(c)) * QQ.col(prev);
      const double n = QQ.col(c).norm();
      if (!(n > 0.0) || !std::isfinite(n))
        throw numerical_error("lyapunov_spectrum: tangent frame collapsed");
      QQ.col(c) /= n;
      logs[c] = std::log(n);
    }
    return logs;
  };

  long step = 0;
  for (; step < transient_steps; ++step) {
    coupled_step(x, Q);
    if (!x.allFinite()) throw numerical_error("lyapunov_spectrum: state diverged in transient");
    if ((step + 1) % steps_per_renorm == 0) renorm(Q);
  }
  renorm(Q);

  for (step = 0; step < total_steps; ++step) {
    coupled_step(x, Q);
    if (!x.allFinite()) throw numerical_error("lyapunov_spectrum: state diverged");
    trace_sum += jac(x).trace();
    ++accumulated;
    if ((step + 1) % steps_per_renorm == 0) {
      const Eigen::Vector3d logs = renorm(Q);
      sums += logs;
      if (step + 1 <= total_steps / 2) sums_half += logs;
    }
  }
  // Fold in any unrenormalized tail so the sums cover the full window.
  if (total_steps % steps_per_renorm != 0) sums += renorm(Q);

  const double t_total = static_cast<double>(total_steps) * s.dt;
  const double t_half = static_cast<double>(total_steps / 2 / steps_per_renorm) *
                        steps_per_renorm * s.dt;
  Eigen::Vector3d L = sums / t_total;
  Eigen::Vector3d Lh = t_half > 0.0 ? Eigen::Vector3d(sums_half / t_half) : L;
  std::sort(L.data(), L.data() + 3, std::greater<double>());
  std::sort(Lh.data(), Lh.data() + 3, std::greater<double>());

  LyapunovSpectrum out{};
  out.L1 = L[0];
  out.L2 = L[1];
  out.L3 = L[2];
  out.transient_time = s.transient;
  out.total_time = s.total;
  out.renorm_interval = s.renorm_interval;
  out.converged = (L - Lh).cwiseAbs().maxCoeff() < 5e-3;
  out.mean_trace = accumulated > 0 ? trace_sum / static_cast<double>(accumulated) : 0.0;
  return out;
}

}  // namespace ecoepi
