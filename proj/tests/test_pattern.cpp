#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "ecoepi/errors.hpp"
#include "ecoepi/pattern.hpp"
#include "test_util.hpp"

using namespace ecoepi;

namespace {

FieldGrid make_fields(const Eigen::ArrayXXd& u, const Eigen::ArrayXXd& v,
                      const Eigen::ArrayXXd& w, double time) {
  FieldGrid f;
  f.u = u;
  f.v = v;
  f.w = w;
  f.time = time;
  return f;
}

FieldGrid constant_fields(double a, double b, double c, double time, int n = 4) {
  return make_fields(Eigen::ArrayXXd::Constant(n, n, a), Eigen::ArrayXXd::Constant(n, n, b),
                     Eigen::ArrayXXd::Constant(n, n, c), time);
}

}  // namespace

TEST_CASE("distance of a snapshot to itself is zero") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> level(0.1, 10.0);
  Eigen::ArrayXXd u(5, 5), v(5, 5), w(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      u(i, j) = level(rng);
      v(i, j) = level(rng);
      w(i, j) = level(rng);
    }
  const FieldGrid f = make_fields(u, v, w, 0.0);
  const FieldDistances d = snapshot_distance(f, f);
  CHECK(d.u == 0.0);
  CHECK(d.v == 0.0);
  CHECK(d.w == 0.0);
  CHECK(d.max() == 0.0);
}

TEST_CASE("hand-checked distance: unit-norm field vs itself plus one") {
  // ||a||_2 = 1 (single unit entry), b = a + 1 so ||a-b||_2 = 3 on 3x3
  Eigen::ArrayXXd a = Eigen::ArrayXXd::Zero(3, 3);
  a(1, 1) = 1.0;
  const Eigen::ArrayXXd b = a + 1.0;
  const FieldGrid fa = make_fields(a, a, a, 0.0);
  const FieldGrid fb = make_fields(b, b, b, 1.0);
  const FieldDistances d = snapshot_distance(fa, fb);
  CHECK(d.u == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(d.t_a == 0.0);
  CHECK(d.t_b == 1.0);
}

TEST_CASE("mismatched grids are rejected") {
  const FieldGrid small = constant_fields(1, 1, 1, 0.0, 4);
  const FieldGrid large = constant_fields(1, 1, 1, 0.0, 5);
  CHECK(throws_mentioning<validation_error>([&] { snapshot_distance(small, large); },
                                            "grid dimensions differ"));
}

TEST_CASE("relative distance invariants on random fields") {
  std::mt19937 rng(20260815);
  std::uniform_real_distribution<double> level(0.5, 20.0);
  auto random_grid = [&] {
    Eigen::ArrayXXd g(10, 10);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) g(i, j) = level(rng);
    return g;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::ArrayXXd a = random_grid(), b = random_grid(), c = random_grid();
    const FieldGrid fa = make_fields(a, a, a, 0.0);
    const FieldGrid fb = make_fields(b, b, b, 0.0);
    const FieldGrid fc = make_fields(c, c, c, 0.0);
    const double na = std::sqrt(a.square().sum());
    const double nb = std::sqrt(b.square().sum());
    const double dab = snapshot_distance(fa, fb).u;
    const double dba = snapshot_distance(fb, fa).u;
    const double dac = snapshot_distance(fa, fc).u;
    const double dbc = snapshot_distance(fb, fc).u;
    CHECK(dab > 0.0);
    // the unnormalized numerators agree regardless of argument order
    CHECK(dab * na == doctest::Approx(dba * nb).epsilon(1e-12));
    // triangle inequality for the numerators
    CHECK(dac * na <= dab * na + dbc * nb + 1e-9);
    // simultaneous rescaling leaves the relative distance unchanged
    const FieldGrid fa3 = make_fields(3.0 * a, 3.0 * a, 3.0 * a, 0.0);
    const FieldGrid fb3 = make_fields(3.0 * b, 3.0 * b, 3.0 * b, 0.0);
    CHECK(snapshot_distance(fa3, fb3).u == doctest::Approx(dab).epsilon(1e-12));
  }
}

TEST_CASE("classification requires a usable history") {
  CHECK(throws_mentioning<validation_error>(
      [] { classify({constant_fields(1, 1, 1, 0.0)}, Verdict::turing); },
      "at least two snapshots"));
  CHECK(throws_mentioning<validation_error>(
      [] {
        classify({constant_fields(1, 1, 1, 0.0), constant_fields(1, 1, 1, 99.0)},
                 Verdict::turing);
      },
      "100 time units apart"));
}

TEST_CASE("flat fields are homogeneous even when their level moved") {
  // the final pair differs by far more than the stationarity cutoff, but a
  // spatially flat state must still be reported as homogeneous
  const auto rep = classify({constant_fields(1, 1, 1, 0.0), constant_fields(2, 2, 2, 200.0)},
                            Verdict::turing);
  CHECK(rep.label == PatternLabel::homogeneous);
  CHECK_FALSE(rep.stationary);
  CHECK(rep.distances.size() == 1);
  CHECK(rep.distances[0].u == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.amplitudes.back().maxCoeff() == 0.0);
}

TEST_CASE("taxonomy: stationarity and the linear verdict combine") {
  Eigen::ArrayXXd base = Eigen::ArrayXXd::Constant(4, 4, 5.0);
  base(0, 0) = 6.0;  // spatial amplitude 1, far above the homogeneous cutoff
  const FieldGrid s0 = make_fields(base, base, base, 0.0);
  const FieldGrid s1 = make_fields(base, base, base, 500.0);

  const auto frozen_turing = classify({s0, s1}, Verdict::turing);
  CHECK(frozen_turing.stationary);
  CHECK(frozen_turing.label == PatternLabel::turing);
  CHECK(to_string(frozen_turing.label) == "turing");

  const auto frozen_planar = classify({s0, s1}, Verdict::planar_stable);
  CHECK(frozen_planar.label == PatternLabel::stationary_non_turing);
  CHECK(to_string(frozen_planar.label) == "stationary_non_turing");

  Eigen::ArrayXXd moved = base;
  moved(2, 2) = 9.0;
  const FieldGrid s2 = make_fields(moved, moved, moved, 500.0);
  const auto drifting = classify({s0, s2}, Verdict::turing);
  CHECK_FALSE(drifting.stationary);
  CHECK(drifting.label == PatternLabel::non_stationary_non_turing);
  CHECK(to_string(drifting.label) == "non_stationary_non_turing");
  CHECK(to_string(PatternLabel::homogeneous) == "homogeneous");
}

TEST_CASE("report records every consecutive pair and per-snapshot amplitudes") {
  Eigen::ArrayXXd a = Eigen::ArrayXXd::Constant(4, 4, 2.0);
  a(1, 1) = 2.5;
  Eigen::ArrayXXd b = a;
  b(1, 1) = 2.4;
  const auto rep = classify({make_fields(a, a, a, 0.0), make_fields(b, b, b, 400.0),
                             make_fields(b, b, b, 600.0)},
                            Verdict::hopf_unstable);
  REQUIRE(rep.distances.size() == 2);
  CHECK(rep.distances[0].t_a == 0.0);
  CHECK(rep.distances[0].t_b == 400.0);
  CHECK(rep.distances[1].t_a == 400.0);
  CHECK(rep.distances[1].t_b == 600.0);
  CHECK(rep.distances[1].max() == 0.0);
  CHECK(rep.stationary);
  CHECK(rep.label == PatternLabel::stationary_non_turing);
  CHECK(rep.linear_verdict == Verdict::hopf_unstable);
  REQUIRE(rep.amplitudes.size() == 3);
  CHECK(rep.amplitudes[0][0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.amplitudes[2][0] == doctest::Approx(0.4).epsilon(1e-14));
}
