#pragma once
#include <string>
#include <vector>

#include "ecoepi/dispersion.hpp"
#include "ecoepi/pde.hpp"

namespace ecoepi {

struct FieldDistances {
  double t_a = 0.0, t_b = 0.0;
  double u = 0.0, v = 0.0, w = 0.0;
  double max() const { return std::max({u, v, w}); }
};

// Relative L2 distance per field: ||a-b||_2 / max(||a||_2, 1e-30).
// Grids must have identical dimensions.
FieldDistances snapshot_distance(const FieldGrid& a, const FieldGrid& b);

enum class PatternLabel { turing, stationary_non_turing, non_stationary_non_turing, homogeneous };
std::string to_string(PatternLabel label);

struct PatternReport {
  std::vector<FieldDistances> distances;    // consecutive snapshot pairs
  bool stationary = false;                  // final pair < 1e-2 for all fields
  std::vector<Eigen::Vector3d> amplitudes;  // per-snapshot max-min of each field
  Verdict linear_verdict = Verdict::planar_stable;
  PatternLabel label = PatternLabel::homogeneous;
};

// Labels a snapshot history. Requires >= 2 snapshots with the last two at
// least 100 time units apart. Taxonomy: homogeneous when every field's
// spatial amplitude at the final snapshot is < 1e-6; otherwise turing when
// the run is stationary and the linearization's verdict is turing;
// stationary_non_turing when stationary without that verdict;
// non_stationary_non_turing when not stationary.
PatternReport classify(const std::vector<FieldGrid>& history, Verdict linear_verdict);

}  // namespace ecoepi
