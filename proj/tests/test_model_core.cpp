#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "ecoepi/equilibrium.hpp"
#include "ecoepi/errors.hpp"
#include "ecoepi/kinetics.hpp"
#include "ecoepi/params.hpp"
#include "ecoepi/presets.hpp"
#include "test_util.hpp"

using namespace ecoepi;

namespace {

ModelParams sigma026() {
  ModelParams p = baseline_params();
  p.sigma = 0.026;
  return p;
}

double horner5(const std::array<double, 6>& c, double u) {
  double acc = c[5];
  for (int i = 4; i >= 0; --i) acc = acc * u + c[i];
  return acc;
}

}  // namespace

TEST_CASE("parameter validation names the offending field") {
  ModelParams p = baseline_params();
  p.r = -0.1;
  CHECK(throws_mentioning<validation_error>([&] { validate(p); }, "r must"));
  p = baseline_params();
  p.c1 = 1.5;
  CHECK(throws_mentioning<validation_error>([&] { validate(p); }, "c1"));
  p = baseline_params();
  p.gamma = 0.0;
  CHECK(throws_mentioning<validation_error>([&] { validate(p); }, "gamma"));
  p = baseline_params();
  p.k = std::nan("");
  CHECK_THROWS_AS(validate(p), validation_error);
  // zero is allowed for the rates that ablation runs switch off
  p = baseline_params();
  p.lambda = 0.0;
  CHECK_NOTHROW(validate(p));
  p = baseline_params();
  p.sigma = 0.0;
  CHECK_NOTHROW(validate(p));
  p = baseline_params();
  p.d1 = 0.0;
  CHECK_NOTHROW(validate(p));
}

TEST_CASE("parameter name mapping round-trips and rejects unknowns") {
  ModelParams p = baseline_params();
  for (const auto& [name, member] : param_fields()) {
    p.*param_field(name) = 3.25;
    CHECK(p.*member == 3.25);
  }
  CHECK(param_fields().size() == 18);
  CHECK_THROWS_AS(param_field("rr"), validation_error);
}

TEST_CASE("kinetics vanish at extinction and at the interior steady state") {
  const ModelParams p = sigma026();
  CHECK(kinetics({0.0, 0.0, 0.0}, p).norm() == 0.0);
  const auto eqs = find_equilibria(p);
  REQUIRE(eqs.size() == 1);
  const auto& e = eqs.front();
  CHECK(kinetics({e.u_star, e.v_star, e.w_star}, p).norm() < 1e-10);
  CHECK_THROWS_AS(kinetics({1.0, std::nan(""), 1.0}, p), validation_error);
}

TEST_CASE("analytic partial derivatives match central finite differences") {
  std::mt19937 rng(20260815);
  std::uniform_real_distribution<double> state_dist(0.05, 40.0);
  const ModelParams p = baseline_params();
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Vector3d x(state_dist(rng), state_dist(rng), state_dist(rng));
    const Eigen::Matrix3d J = jacobian_at(x, p);
    Eigen::Matrix3d fd;
    for (int c = 0; c < 3; ++c) {
      const double step = 1e-6 * std::max(1.0, std::abs(x[c]));
      Eigen::Vector3d xp = x, xm = x;
      xp[c] += step;
      xm[c] -= step;
      fd.col(c) = (kinetics(xp, p) - kinetics(xm, p)) / (2.0 * step);
    }
    const double scale = std::max(J.norm(), 1e-12);
    CHECK((J - fd).norm() / scale < 1e-5);
  }
}

TEST_CASE("community-matrix structure: prey never reacts to itself through w alone") {
  // dG3/du is identically zero: the infected class interacts with prey only
  // through predation losses that appear in G1/G2.
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> state_dist(0.1, 30.0);
  const ModelParams p = sigma026();
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector3d x(state_dist(rng), state_dist(rng), state_dist(rng));
    CHECK(jacobian_at(x, p)(2, 0) == 0.0);
  }
}

TEST_CASE("reduced steady-state coefficients match the closed forms") {
  const ModelParams p = sigma026();
  const auto sys = reduce_equilibrium_system(p);
  // classical grouping, evaluated by hand from the parameter set
  CHECK(sys.m1 == doctest::Approx(0.0058823529411764705).epsilon(1e-14));
  CHECK(sys.m2 == doctest::Approx(-0.3411764705882353).epsilon(1e-14));
  CHECK(sys.m3 == doctest::Approx(0.34153846153846157).epsilon(1e-14));
  CHECK(sys.m4 == doctest::Approx(-4.115384615384615).epsilon(1e-14));
  CHECK(sys.n1 == doctest::Approx(-0.00023371199999999993).epsilon(1e-12));
  CHECK(sys.n2 == doctest::Approx(0.008879999999999999).epsilon(1e-12));
  CHECK(sys.n3 == doctest::Approx(6.4399999999999939e-05).epsilon(1e-10));
  CHECK(sys.n4 == doctest::Approx(-0.003).epsilon(1e-14));
  CHECK(sys.n5 == doctest::Approx(0.00017999999999999998).epsilon(1e-12));

  // the exact elimination differs from the classical grouping in n1 and n3 by
  // the c2*sigma*beta cross terms
  const auto exact = exact_reduction(p);
  const double correction = p.c2 * p.sigma * p.beta;
  CHECK(exact.n1 == doctest::Approx(sys.n1 + correction * p.p1()).epsilon(1e-12));
  CHECK(exact.n3 == doctest::Approx(sys.n3 - correction * (p.d + p.e)).epsilon(1e-10));
  CHECK(exact.m1 == sys.m1);
  CHECK(exact.n2 == sys.n2);
}

TEST_CASE("steady-state quintic vanishes at the recovered root") {
  const ModelParams p = sigma026();
  const auto sys = exact_reduction(p);
  const auto quintic = equilibrium_quintic(p, sys);
  const auto eqs = find_equilibria(p);
  REQUIRE(!eqs.empty());
  const double u = eqs.front().u_star;
  // normalize by the largest coefficient magnitude times u^5 scale
  double scale = 0.0;
  for (int i = 0; i < 6; ++i) scale = std::max(scale, std::abs(quintic[i]) * std::pow(u, i));
  CHECK(std::abs(horner5(quintic, u)) / scale < 1e-12);
}

TEST_CASE("interior steady state for the high-cannibalism set") {
  const auto eqs = find_equilibria(sigma026());
  REQUIRE(eqs.size() == 1);
  const auto& e = eqs.front();
  // published coordinates (8.1844, 19.0716, 6.7682) to their printed precision
  CHECK(std::abs(e.u_star - 8.1844) < 1e-3);
  CHECK(std::abs(e.v_star - 19.0716) < 1e-3);
  CHECK(std::abs(e.w_star - 6.7682) < 1e-3);
  // exact-regression pins for the refined root
  CHECK(e.u_star == doctest::Approx(8.1843745226261415).epsilon(1e-12));
  CHECK(e.v_star == doctest::Approx(19.071577328847582).epsilon(1e-12));
  CHECK(e.w_star == doctest::Approx(6.7681936596751484).epsilon(1e-12));
  CHECK(e.residual_norm < 1e-10);
  CHECK(e.feasible);
  // consistency of the eliminated variable: w* = (p1 v* - (d+e)) / sigma
  const ModelParams p = sigma026();
  CHECK(e.w_star ==
        doctest::Approx((p.p1() * e.v_star - (p.d + p.e)) / p.sigma).epsilon(1e-10));
}

TEST_CASE("interior steady state for the low-cannibalism set") {
  const auto eqs = find_equilibria(baseline_params());
  REQUIRE(eqs.size() == 1);
  const auto& e = eqs.front();
  CHECK(std::abs(e.u_star - 1.9756) < 1e-3);
  CHECK(std::abs(e.v_star - 13.4643) < 1e-3);
  CHECK(std::abs(e.w_star - 6.1178) < 1e-3);
  CHECK(e.u_star == doctest::Approx(1.9755905844713619).epsilon(1e-12));
  CHECK(e.v_star == doctest::Approx(13.464272937283363).epsilon(1e-12));
  CHECK(e.w_star == doctest::Approx(6.1178456435550279).epsilon(1e-12));
  CHECK(e.residual_norm < 1e-10);
  CHECK(e.feasible);
}

TEST_CASE("no transmission means no interior steady state at the baseline set") {
  ModelParams p = baseline_params();
  p.lambda = 0.0;
  CHECK(find_equilibria(p).empty());
}

TEST_CASE("feasibility with lambda = 0 depends on the cannibalism pathway") {
  // with sigma = 0.026 the infection can persist on cannibalistic
  // transmission alone (p1 = sigma*(l*f - beta) > 0), so an interior state
  // survives the lambda = 0 ablation there
  ModelParams p = sigma026();
  p.lambda = 0.0;
  CHECK(p.p1() > 0.0);
  const auto eqs = find_equilibria(p);
  CHECK(!eqs.empty());
  for (const auto& e : eqs) CHECK(kinetics({e.u_star, e.v_star, e.w_star}, p).norm() < 1e-10);
}

TEST_CASE("zero cannibalism makes the w-elimination singular") {
  ModelParams p = baseline_params();
  p.sigma = 0.0;
  CHECK_THROWS_AS(reduce_equilibrium_system(p), validation_error);
  CHECK_THROWS_AS(find_equilibria(p), validation_error);
}
