#pragma once

#include <stdexcept>

namespace strippress {

// Malformed caller input: bad parameters, out-of-range symbols, rows of the
// wrong period, unfillable boundaries.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failure inside the numerical pipeline: empty or non-mixing strips,
// eigensolver non-convergence, identity violations, resource caps.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Model file or builtin-spec syntax errors.
struct ModelParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Applicability gate failed and the run was not forced.
struct GateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace strippress
