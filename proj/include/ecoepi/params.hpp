#pragma once
#include <string>
#include <utility>
#include <vector>

namespace ecoepi {

// Biological and diffusion parameters of the three-compartment model
// (prey u, susceptible cannibalistic predator v, infected predator w).
struct ModelParams {
  double r;       // prey intrinsic growth rate
  double k;       // prey carrying capacity
  double lambda;  // disease transmission rate
  double alpha1;  // predation rate on prey by susceptible predators
  double alpha2;  // predation rate on prey by infected predators
  double gamma;   // half-saturation constant of the functional response
  double alpha;   // prey-to-predator conversion efficiency
  double d;       // natural predator death rate
  double e;       // additional disease-induced mortality
  double sigma;   // cannibalistic attack rate
  double c1;      // conversion efficiency of susceptible cannibalism
  double c2;      // conversion efficiency of infected cannibalism
  double beta;    // weight of susceptibles in the cannibalism pressure
  double l;       // transmission probability per cannibalistic interaction
  double f;       // conspecifics shared per predator
  double d1;      // prey diffusion coefficient
  double d2;      // susceptible predator diffusion coefficient
  double d3;      // infected predator diffusion coefficient

  // lambda + sigma*l*f - sigma*beta: net growth factor of the infected class
  // per susceptible encountered; the interior steady state exists iff this
  // times v* exceeds d+e.
  double p1() const { return lambda + sigma * l * f - sigma * beta; }
};

// Throws validation_error naming the offending field. lambda, sigma and the
// diffusion coefficients may be zero (ablation runs); everything else must be
// strictly positive, and c1, c2 cannot exceed 1.
void validate(const ModelParams& p);

// Name <-> member mapping used by config parsing and parameter scans.
const std::vector<std::pair<std::string, double ModelParams::*>>& param_fields();
double ModelParams::* param_field(const std::string& name);  // throws on unknown

}  // namespace ecoepi
