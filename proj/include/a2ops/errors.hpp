#pragma once

#include <stdexcept>
#include <string>

namespace a2ops {

// Two polynomials built over different generator tables were combined.
struct TableMismatchError : std::invalid_argument {
    explicit TableMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

// Invalid parameter or argument domain (bad kappa, a = 0, malformed input).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A required constraint on the inputs is violated (e.g. spectral parameters
// requested on the trace-zero shell but not summing to zero).
struct ConstraintError : std::invalid_argument {
    explicit ConstraintError(const std::string& what) : std::invalid_argument(what) {}
};

// Evaluation was requested too close to a singularity of the coefficients.
struct SingularPointError : std::runtime_error {
    explicit SingularPointError(const std::string& what) : std::runtime_error(what) {}
};

// The rejection sampler could not find enough regular points in its budget.
struct SamplingExhaustedError : std::runtime_error {
    explicit SamplingExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace a2ops
