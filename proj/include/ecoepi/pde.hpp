#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "ecoepi/equilibrium.hpp"
#include "ecoepi/errors.hpp"
#include "ecoepi/parallel.hpp"
#include "ecoepi/params.hpp"

namespace ecoepi {

struct GridSpec {
  double L = M_PI;   // square domain side length
  double h = 0.01;   // spatial step (both directions)
  double dt = 0.01;  // time step
  int nx = 0;        // nodes per side, round(L/h)+1
};

// Validates the explicit-scheme bound max(d1,d2,d3)*dt*4/h^2 < 1 against the
// diffusion coefficients and nx >= 3; throws validation_error citing the
// violated inequality.
GridSpec make_grid(const ModelParams& p, double L = M_PI, double h = 0.01, double dt = 0.01);

struct FieldGrid {
  Eigen::ArrayXXd u, v, w;  // nx x nx node values, (i,j) at coordinates (i*h, j*h)
  double time = 0.0;
};

struct SnapshotSchedule {
  std::vector<double> times;
};

// Capture times must be strictly increasing, non-negative, and multiples of
// grid.dt within 1e-9.
SnapshotSchedule make_schedule(std::vector<double> times, const GridSpec& grid);
SnapshotSchedule make_schedule_interval(double t_end, double interval, const GridSpec& grid);

// All three fields set to the equilibrium value plus the perturbation
// 0.1*cos^2(10x)*cos^2(10y); requires eq.feasible.
FieldGrid initial_condition(const Equilibrium& eq, const GridSpec& grid);

FieldGrid constant_state(const Eigen::Vector3d& s, const GridSpec& grid);

// One forward-time centered-space step: s_new = s + dt*(G_s + d_s*lap5(s)/h^2)
// with the zero-flux boundary realized by mirrored ghost nodes (the ghost
// value equals the first interior neighbor), so the centered normal
// difference across each boundary is identically zero and the pure-diffusion
// operator conserves the trapezoid-weighted mass total_mass() exactly.
FieldGrid ftcs_step(const FieldGrid& in, const ModelParams& p, const GridSpec& grid,
                    int workers = 0);

// Discrete integral of one field over the square: h^2 times the node sum with
// trapezoid weights (1 interior, 1/2 edge, 1/4 corner). This is the quantity
// the zero-flux stencil conserves under pure diffusion.
double total_mass(const Eigen::ArrayXXd& s, double h);

// Runs to the last scheduled time, returning one FieldGrid per capture time
// (the returned grids carry their times). Deterministic: every node update
// reads only the previous step's arrays, so worker count cannot change results.
std::vector<FieldGrid> simulate(const ModelParams& p, const Equilibrium& eq,
                                const GridSpec& grid, const SnapshotSchedule& schedule,
                                int workers = 0);
std::vector<FieldGrid> simulate_from(FieldGrid state, const ModelParams& p,
                                     const GridSpec& grid, const SnapshotSchedule& schedule,
                                     int workers = 0);

namespace detail {

[[noreturn]] void report_bad_node(const char* field, double value, int i, int j, double t);

// Stencil + reaction update for one column strip, shared by the production
// step and the diffusion-only test instantiation. Kin is called as
// kin(u, v, w, g1, g2, g3) and must be cheap enough to inline.
template <class Kin>
void update_column(const FieldGrid& in, FieldGrid& out, const GridSpec& g,
                   const Eigen::Vector3d& dcoef, Kin&& kin, int j) {
  const int n = g.nx;
  const double dt = g.dt;
  const double cu = dcoef[0] * dt / (g.h * g.h);
  const double cv = dcoef[1] * dt / (g.h * g.h);
  const double cw = dcoef[2] * dt / (g.h * g.h);
  const int jl = j > 0 ? j - 1 : 1;          // mirrored ghost column
  const int jr = j < n - 1 ? j + 1 : n - 2;  // mirrored ghost column
  const double* uc = in.u.col(j).data();
  const double* ul = in.u.col(jl).data();
  const double* ur = in.u.col(jr).data();
  const double* vc = in.v.col(j).data();
  const double* vl = in.v.col(jl).data();
  const double* vr = in.v.col(jr).data();
  const double* wc = in.w.col(j).data();
  const double* wl = in.w.col(jl).data();
  const double* wr = in.w.col(jr).data();
  double* uo = out.u.col(j).data();
  double* vo = out.v.col(j).data();
  double* wo = out.w.col(j).data();

  double low = 0.0;    // most negative raw update in this column
  double fin = 0.0;    // accumulates values; becomes non-finite if any are
  const auto node = [&](int i, int im, int ip) {
    double g1, g2, g3;
    kin(uc[i], vc[i], wc[i], g1, g2, g3);
    const double un =
        uc[i] + dt * g1 + cu * (uc[im] + uc[ip] + ul[i] + ur[i] - 4.0 * uc[i]);
    const double vn =
        vc[i] + dt * g2 + cv * (vc[im] + vc[ip] + vl[i] + vr[i] - 4.0 * vc[i]);
    const double wn =
        wc[i] + dt * g3 + cw * (wc[im] + wc[ip] + wl[i] + wr[i] - 4.0 * wc[i]);
    low = un < low ? un : low;
    low = vn < low ? vn : low;
    low = wn < low ? wn : low;
    fin += un + vn + wn;
    uo[i] = un > 0.0 ? un : 0.0;  // roundoff-scale negatives clamp to zero
    vo[i] = vn > 0.0 ? vn : 0.0;
    wo[i] = wn > 0.0 ? wn : 0.0;
  };

  node(0, 1, 1);
  for (int i = 1; i < n - 1; ++i) node(i, i - 1, i + 1);
  node(n - 1, n - 2, n - 2);

  if (low < -1e-10 || !std::isfinite(fin)) {
    // Locate the offending node for the abort message (cold path).
    for (int i = 0; i < n; ++i) {
      const int im = i > 0 ? i - 1 : 1;
      const int ip = i < n - 1 ? i + 1 : n - 2;
      double g1, g2, g3;
      kin(uc[i], vc[i], wc[i], g1, g2, g3);
      const double un =
          uc[i] + dt * g1 + cu * (uc[im] + uc[ip] + ul[i] + ur[i] - 4.0 * uc[i]);
      const double vn =
          vc[i] + dt * g2 + cv * (vc[im] + vc[ip] + vl[i] + vr[i] - 4.0 * vc[i]);
      const double wn =
          wc[i] + dt * g3 + cw * (wc[im] + wc[ip] + wl[i] + wr[i] - 4.0 * wc[i]);
      if (!std::isfinite(un) || un < -1e-10) report_bad_node("u", un, i, j, in.time + dt);
      if (!std::isfinite(vn) || vn < -1e-10) report_bad_node("v", vn, i, j, in.time + dt);
      if (!std::isfinite(wn) || wn < -1e-10) report_bad_node("w", wn, i, j, in.time + dt);
    }
  }
}

}  // namespace detail

// Testing hook: the same stencil update with caller-supplied reaction terms
// (e.g. identically zero for pure-diffusion conservation checks).
template <class Kin>
void ftcs_step_into(const FieldGrid& in, FieldGrid& out, const GridSpec& g,
                    const Eigen::Vector3d& dcoef, Kin&& kin, int workers = 0) {
  out.u.resize(g.nx, g.nx);
  out.v.resize(g.nx, g.nx);
  out.w.resize(g.nx, g.nx);
  parallel_for(g.nx, worker_count(workers), [&](long j) {
    detail::update_column(in, out, g, dcoef, kin, static_cast<int>(j));
  });
  out.time = in.time + g.dt;
}

}  // namespace ecoepi
