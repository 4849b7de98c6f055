#include "ecoepi/params.hpp"

#include <cmath>

#include "ecoepi/errors.hpp"

namespace ecoepi {

namespace {

void require_finite(const char* name, double v) {
  if (!std::isfinite(v)) throw validation_error(std::string(name) + " must be finite");
}

void require_positive(const char* name, double v) {
  require_finite(name, v);
  if (v <= 0.0) throw validation_error(std::string(name) + " must be strictly positive");
}

void require_nonnegative(const char* name, double v) {
  require_finite(name, v);
  if (v < 0.0) throw validation_error(std::string(name) + " must be non-negative");
}

}  // namespace

void validate(const ModelParams& p) {
  require_positive("r", p.r);
  require_positive("k", p.k);
  require_nonnegative("lambda", p.lambda);
  require_positive("alpha1", p.alpha1);
  require_positive("alpha2", p.alpha2);
  require_positive("gamma", p.gamma);
  require_positive("alpha", p.alpha);
  require_positive("d", p.d);
  require_positive("e", p.e);
  require_nonnegative("sigma", p.sigma);
  require_positive("c1", p.c1);
  require_positive("c2", p.c2);
  require_positive("beta", p.beta);
  require_positive("l", p.l);
  require_positive("f", p.f);
  require_nonnegative("d1", p.d1);
  require_nonnegative("d2", p.d2);
  require_nonnegative("d3", p.d3);
  if (p.c1 > 1.0) throw validation_error("c1 must not exceed 1");
  if (p.c2 > 1.0) throw validation_error("c2 must not exceed 1");
}

const std::vector<std::pair<std::string, double ModelParams::*>>& param_fields() {
  static const std::vector<std::pair<std::string, double ModelParams::*>> fields = {
      {"r", &ModelParams::r},           {"k", &ModelParams::k},
      {"lambda", &ModelParams::lambda}, {"alpha1", &ModelParams::alpha1},
      {"alpha2", &ModelParams::alpha2}, {"gamma", &ModelParams::gamma},
      {"alpha", &ModelParams::alpha},   {"d", &ModelParams::d},
      {"e", &ModelParams::e},           {"sigma", &ModelParams::sigma},
      {"c1", &ModelParams::c1},         {"c2", &ModelParams::c2},
      {"beta", &ModelParams::beta},     {"l", &ModelParams::l},
      {"f", &ModelParams::f},           {"d1", &ModelParams::d1},
      {"d2", &ModelParams::d2},         {"d3", &ModelParams::d3},
  };
  return fields;
}

double ModelParams::* param_field(const std::string& name) {
  for (const auto& [n, ptr] : param_fields())
    if (n == name) return ptr;
  throw validation_error("unknown parameter name: " + name);
}

}  // namespace ecoepi
