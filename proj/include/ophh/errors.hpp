#pragma once

#include <stdexcept>
#include <string>

namespace ophh {

// Eigenvalue of the operand lies outside the scalar function's domain.
struct SpectrumDomainError : std::domain_error {
    SpectrumDomainError(const std::string& what, double eigenvalue)
        : std::domain_error(what), eigenvalue(eigenvalue) {}
    double eigenvalue;
};

// Operand (or an intermediate path point) is not a member of the operator set.
struct MembershipError : std::domain_error {
    explicit MembershipError(const std::string& what, double path_t = -1.0)
        : std::domain_error(what), path_t(path_t) {}
    double path_t;  // parameter of the offending path point, -1 if not path-related
};

// Iterative procedure (eigensolver sweep cap, quadrature refinement cap) did not converge.
struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad campaign configuration or unsatisfiable sampling request.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ophh
