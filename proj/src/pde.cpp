#include "ecoepi/pde.hpp"

#include <algorithm>
#include <cstdio>

namespace ecoepi {

namespace detail {

[[noreturn]] void report_bad_node(const char* field, double value, int i, int j, double t) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "ftcs_step: field %s = %.6g at node (%d,%d), t = %.6g "
                "(negative beyond -1e-10 or non-finite)",
                field, value, i, j, t);
  throw numerical_error(buf);
}

}  // namespace detail

GridSpec make_grid(const ModelParams& p, double L, double h, double dt) {
  validate(p);
  if (!(L > 0.0) || !(h > 0.0) || !(dt > 0.0))
    throw validation_error("make_grid: L, h, dt must be positive");
  GridSpec g;
  g.L = L;
  g.h = h;
  g.dt = dt;
  g.nx = static_cast<int>(std::lround(L / h)) + 1;
  if (g.nx < 3) throw validation_error("make_grid: nx = round(L/h)+1 must be >= 3");
  const double dmax = std::max({p.d1, p.d2, p.d3});
  const double guard = dmax * dt * 4.0 / (h * h);
  if (!(guard < 1.0)) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "make_grid: stability guard violated: max(d1,d2,d3)*dt*4/h^2 = %.6g >= 1",
                  guard);
    throw validation_error(buf);
  }
  return g;
}

SnapshotSchedule make_schedule(std::vector<double> times, const GridSpec& grid) {
  if (times.empty()) throw validation_error("schedule: needs at least one capture time");
  double prev = -1.0;
  for (double t : times) {
    if (!(t >= 0.0)) throw validation_error("schedule: capture times must be >= 0");
    if (!(t > prev))
      throw validation_error("schedule: capture times must be strictly increasing");
    const double steps = t / grid.dt;
    if (std::abs(steps - std::lround(steps)) > 1e-9)
      throw validation_error("schedule: capture time " + std::to_string(t) +
                             " is not a multiple of dt");
    prev = t;
  }
  return SnapshotSchedule{std::move(times)};
}

SnapshotSchedule make_schedule_interval(double t_end, double interval, const GridSpec& grid) {
  if (!(t_end > 0.0) || !(interval > 0.0))
    throw validation_error("schedule: t_end and interval must be positive");
  std::vector<double> times;
  for (double t = interval; t <= t_end + 1e-9; t += interval) times.push_back(t);
  if (times.empty() || std::abs(times.back() - t_end) > 1e-9) times.push_back(t_end);
  return make_schedule(std::move(times), grid);
}

FieldGrid initial_condition(const Equilibrium& eq, const GridSpec& grid) {
  if (!eq.feasible) throw validation_error("initial_condition: equilibrium is not feasible");
  const int n = grid.nx;
  Eigen::ArrayXd c = Eigen::ArrayXd::LinSpaced(n, 0.0, (n - 1) * grid.h);
  // cos^2(10*x) profile along one axis; the 2-D bump is the outer product.
  Eigen::ArrayXd prof = (10.0 * c).cos().square();
  Eigen::ArrayXXd bump = 0.1 * (prof.matrix() * prof.matrix().transpose()).array();
  FieldGrid f;
  f.u = eq.u_star + bump;
  f.v = eq.v_star + bump;
  f.w = eq.w_star + bump;
  f.time = 0.0;
  return f;
}

FieldGrid constant_state(const Eigen::Vector3d& s, const GridSpec& grid) {
  FieldGrid f;
  f.u = Eigen::ArrayXXd::Constant(grid.nx, grid.nx, s[0]);
  f.v = Eigen::ArrayXXd::Constant(grid.nx, grid.nx, s[1]);
  f.w = Eigen::ArrayXXd::Constant(grid.nx, grid.nx, s[2]);
  f.time = 0.0;
  return f;
}

namespace {

// Reaction terms with per-node constants folded; one division per node.
struct ModelKinetics {
  double r, r_over_k, a1, a2, gamma, alpha, c1s, c2s, beta, s_beta, s, slf, lambda, d, de;
  explicit ModelKinetics(const ModelParams& p)
      : r(p.r),
        r_over_k(p.r / p.k),
        a1(p.alpha1),
        a2(p.alpha2),
        gamma(p.gamma),
        alpha(p.alpha),
        c1s(p.c1 * p.sigma),
        c2s(p.c2 * p.sigma),
        beta(p.beta),
        s_beta(p.sigma * p.beta),
        s(p.sigma),
        slf(p.sigma * p.l * p.f),
        lambda(p.lambda),
        d(p.d),
        de(p.d + p.e) {}
  inline void operator()(double u, double v, double w, double& g1, double& g2,
                         double& g3) const {
    const double A = a1 * v + a2 * w;
    const double pred = A * u / (gamma + u);
    const double S = s_beta * v + s * w;  // sigma*(beta*v + w)
    g1 = r * u - r_over_k * u * u - pred;
    g2 = alpha * pred + (c1s * v + c2s * w) * (beta * v + w) - S * v - slf * v * w -
         lambda * v * w - d * v;
    g3 = lambda * v * w + slf * v * w - S * w - de * w;
  }
};

}  // namespace

FieldGrid ftcs_step(const FieldGrid& in, const ModelParams& p, const GridSpec& grid,
                    int workers) {
  FieldGrid out;
  ftcs_step_into(in, out, grid, Eigen::Vector3d(p.d1, p.d2, p.d3), ModelKinetics(p), workers);
  return out;
}

double total_mass(const Eigen::ArrayXXd& s, double h) {
  const long n = s.rows(), m = s.cols();
  double sum = s.sum();
  sum -= 0.5 * (s.row(0).sum() + s.row(n - 1).sum() + s.col(0).sum() + s.col(m - 1).sum());
  sum += 0.25 * (s(0, 0) + s(0, m - 1) + s(n - 1, 0) + s(n - 1, m - 1));
  return sum * h * h;
}

std::vector<FieldGrid> simulate_from(FieldGrid state, const ModelParams& p,
                                     const GridSpec& grid, const SnapshotSchedule& schedule,
                                     int workers) {
  validate(p);
  if (schedule.times.empty()) throw validation_error("simulate: empty schedule");
  if (state.u.rows() != grid.nx || state.u.cols() != grid.nx)
    throw validation_error("simulate: state does not match grid");
  const int nworkers = worker_count(workers);
  const ModelKinetics kin(p);
  const Eigen::Vector3d dcoef(p.d1, p.d2, p.d3);

  std::vector<long> capture_steps;
  capture_steps.reserve(schedule.times.size());
  for (double t : schedule.times) capture_steps.push_back(std::llround(t / grid.dt));
  const long n_steps = capture_steps.back();

  std::vector<FieldGrid> snapshots;
  size_t next = 0;
  if (capture_steps[0] == 0) {
    snapshots.push_back(state);
    snapshots.back().time = schedule.times[0];
    ++next;
  }
  FieldGrid scratch;
  for (long step = 1; step <= n_steps; ++step) {
    try {
      ftcs_step_into(state, scratch, grid, dcoef, kin, nworkers);
    } catch (const numerical_error& err) {
      throw numerical_error("simulate: aborted at step " + std::to_string(step) + " of " +
                            std::to_string(n_steps) + ": " + err.what());
    }
    std::swap(state, scratch);
    if (next < capture_steps.size() && step == capture_steps[next]) {
      snapshots.push_back(state);
      snapshots.back().time = schedule.times[next];
      ++next;
    }
  }
  return snapshots;
}

std::vector<FieldGrid> simulate(const ModelParams& p, const Equilibrium& eq,
                                const GridSpec& grid, const SnapshotSchedule& schedule,
                                int workers) {
  return simulate_from(initial_condition(eq, grid), p, grid, schedule, workers);
}

}  // namespace ecoepi
