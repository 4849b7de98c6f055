#include "ecoepi/kinetics.hpp"

#include <cmath>

#include "ecoepi/errors.hpp"

namespace ecoepi {

Eigen::Vector3d kinetics(const Eigen::Vector3d& s, const ModelParams& p) {
  if (!s.allFinite()) throw validation_error("kinetics: non-finite state");
  const double u = s[0], v = s[1], w = s[2];
  const double B = p.gamma + u;
  const double pred = (p.alpha1 * v + p.alpha2 * w) * u / B;  // total predation
  const double press = p.sigma * (p.beta * v + w);            // cannibalism pressure
  const double G1 = p.r * u * (1.0 - u / p.k) - pred;
  const double G2 = p.alpha * pred + p.c1 * press * v + p.c2 * press * w - press * v -
                    p.sigma * p.l * p.f * v * w - p.lambda * v * w - p.d * v;
  const double G3 = p.lambda * v * w + p.sigma * p.l * p.f * v * w - press * w -
                    (p.d + p.e) * w;
  return {G1, G2, G3};
}

Eigen::Matrix3d jacobian_at(const Eigen::Vector3d& s, const ModelParams& p) {
  if (!s.allFinite()) throw validation_error("jacobian_at: non-finite state");
  const double u = s[0], v = s[1], w = s[2];
  const double B = p.gamma + u;
  const double A = p.alpha1 * v + p.alpha2 * w;
  const double slf = p.sigma * p.l * p.f;

  Eigen::Matrix3d J;
  J(0, 0) = p.r * (1.0 - 2.0 * u / p.k) - A * p.gamma / (B * B);
  J(0, 1) = -p.alpha1 * u / B;
  J(0, 2) = -p.alpha2 * u / B;
  J(1, 0) = p.alpha * A * p.gamma / (B * B);
  J(1, 1) = p.alpha * p.alpha1 * u / B + p.c1 * p.sigma * (2.0 * p.beta * v + w) +
            p.c2 * p.sigma * p.beta * w - p.sigma * (2.0 * p.beta * v + w) - slf * w -
            p.lambda * w - p.d;
  J(1, 2) = p.alpha * p.alpha2 * u / B + p.c1 * p.sigma * v +
            p.c2 * p.sigma * (p.beta * v + 2.0 * w) - p.sigma * v - slf * v - p.lambda * v;
  J(2, 0) = 0.0;
  J(2, 1) = (p.lambda + slf - p.sigma * p.beta) * w;
  J(2, 2) = p.lambda * v + slf * v - p.sigma * p.beta * v - 2.0 * p.sigma * w - (p.d + p.e);
  return J;
}

}  // namespace ecoepi
