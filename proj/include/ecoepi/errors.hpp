#pragma once
#include <stdexcept>

namespace ecoepi {

// Bad inputs: rejected configs, parameter ranges, preconditions. CLI exit 2.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runtime numerical failure: divergence, NaN, scheme blow-up. CLI exit 3.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ecoepi
