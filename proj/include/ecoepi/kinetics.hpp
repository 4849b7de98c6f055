#pragma once
#include <Eigen/Dense>

#include "ecoepi/params.hpp"

namespace ecoepi {

// Reaction terms (G1, G2, G3) of the homogeneous system at state (u, v, w).
// Throws validation_error on non-finite input.
Eigen::Vector3d kinetics(const Eigen::Vector3d& state, const ModelParams& p);

// Exact partial derivatives dGi/d{u,v,w} at an arbitrary state. a31 == 0
// structurally. At a steady state the diagonal entries reduce to the familiar
// equilibrium forms -r*u/k + (alpha1*v+alpha2*w)*u/(gamma+u)^2 and -sigma*w,
// but the full state-space derivatives are used here so that finite
// differences of `kinetics` match everywhere.
Eigen::Matrix3d jacobian_at(const Eigen::Vector3d& state, const ModelParams& p);

}  // namespace ecoepi
