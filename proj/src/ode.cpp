#include "ecoepi/ode.hpp"

#include <algorithm>
#include <cmath>

#include "ecoepi/kinetics.hpp"
#include "ecoepi/parallel.hpp"

namespace ecoepi {

namespace {

void check_state(const Eigen::Vector3d& x, long step) {
  for (int i = 0; i < 3; ++i) {
    const double v = x[i];
    if (!std::isfinite(v) || v > 1e6)
      throw numerical_error("integrate_rk4: component " + std::to_string(i) +
                            " diverged at step " + std::to_string(step));
    if (v < -1e-8)
      throw numerical_error("integrate_rk4: component " + std::to_string(i) +
                            " went negative at step " + std::to_string(step));
  }
}

}  // namespace

Trajectory integrate_rk4(const ModelParams& p, const Eigen::Vector3d& init, double dt,
                         double t_end, int decimate) {
  validate(p);
  if (!(dt > 0.0) || !(t_end > 0.0) || decimate < 1)
    throw validation_error("integrate_rk4: dt and t_end must be positive, decimate >= 1");
  const auto rhs = [&p](const Eigen::Vector3d& x) { return kinetics(x, p); };
  const long n_steps = static_cast<long>(std::llround(t_end / dt));

  Trajectory traj;
  traj.params = p;
  traj.times.reserve(static_cast<size_t>(n_steps / decimate) + 2);
  traj.states.reserve(traj.times.capacity());
  Eigen::Vector3d x = init;
  check_state(x, 0);
  traj.times.push_back(0.0);
  traj.states.push_back(x);
  for (long step = 1; step <= n_steps; ++step) {
    x = rk4_step(rhs, x, dt);
    check_state(x, step);
    if (step % decimate == 0 || step == n_steps) {
      traj.times.push_back(static_cast<double>(step) * dt);
      traj.states.push_back(x);
    }
  }
  return traj;
}

LyapunovSpectrum lyapunov_spectrum(const ModelParams& p, const Eigen::Vector3d& init,
                                   const LyapunovSettings& settings) {
  validate(p);
  const auto rhs = [&p](const Eigen::Vector3d& x) { return kinetics(x, p); };
  const auto jac = [&p](const Eigen::Vector3d& x) { return jacobian_at(x, p); };
  return lyapunov_spectrum_generic(rhs, jac, init, settings);
}

double extrema_band_width(const std::vector<double>& extrema) {
  if (extrema.size() < 2) return 0.0;
  const auto [lo, hi] = std::minmax_element(extrema.begin(), extrema.end());
  return *hi - *lo;
}

BifurcationSweep bifurcation_sweep(const ModelParams& p, const std::string& which,
                                   const std::vector<double>& grid,
                                   const Eigen::Vector3d& init, double transient,
                                   double window, double dt, int workers) {
  validate(p);
  if (which != "lambda" && which != "sigma")
    throw validation_error("bifurcation_sweep: parameter must be lambda or sigma");
  if (grid.empty()) throw validation_error("bifurcation_sweep: empty grid");
  if (!(dt > 0.0) || !(transient >= 0.0) || !(window > 0.0))
    throw validation_error("bifurcation_sweep: bad time settings");

  BifurcationSweep sweep;
  sweep.parameter = which;
  sweep.grid = grid;
  sweep.extrema.assign(grid.size(), {});
  sweep.diverged.assign(grid.size(), false);
  double ModelParams::* field = param_field(which);

  parallel_for(grid.size(), workers, [&](size_t i) {
    ModelParams q = p;
    q.*field = grid[i];
    try {
      validate(q);
    } catch (const validation_error&) {
      sweep.diverged[i] = true;
      return;
    }
    const auto rhs = [&q](const Eigen::Vector3d& x) { return kinetics(x, q); };
    Eigen::Vector3d x = init;
    const long t_steps = static_cast<long>(std::llround(transient / dt));
    const long w_steps = static_cast<long>(std::llround(window / dt));
    try {
      for (long s = 0; s < t_steps; ++s) {
        x = rk4_step(rhs, x, dt);
        check_state(x, s);
      }
      // Track v through the window; record v at interior sign changes of its
      // discrete derivative.
      std::vector<double>& ext = sweep.extrema[i];
      double prev = x[1];
      x = rk4_step(rhs, x, dt);
      check_state(x, t_steps);
      double cur = x[1];
      for (long s = 1; s < w_steps; ++s) {
        x = rk4_step(rhs, x, dt);
        check_state(x, t_steps + s);
        const double next = x[1];
        const double d1 = cur - prev, d2 = next - cur;
        if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) ext.push_back(cur);
        prev = cur;
        cur = next;
      }
      if (ext.empty()) ext.push_back(cur);
    } catch (const numerical_error&) {
      sweep.diverged[i] = true;
      sweep.extrema[i].clear();
    }
  });
  return sweep;
}

}  // namespace ecoepi
