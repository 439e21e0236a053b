#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ophh/invex.hpp"
#include "ophh/preinvex.hpp"
#include "ophh/quadrature.hpp"

namespace ophh {

// Integral of f along the path base + t*eta(toward, base), t in [0, 1]. For
// dimension one the scalar function's kink positions are mapped into path
// parameters and used as panel splits.
HermitianMatrix operator_line_integral(const ScalarFunction& f, const HermitianMatrix& base,
                                       const HermitianMatrix& toward, const EtaMap& eta,
                                       const OperatorSet& s, const QuadratureScheme& q);

// The five-term chain for f along the path from A toward A + eta(B, A):
//   midpoint <= midpoint_mean <= line_integral <= trapezoid_mean <= endpoint_mean
// with m = k^p subdivision points, m <= 64, and endpoint_mean = (f(A) + f(B)) / 2.
// All four comparisons share one tolerance scale_tol * (1 + ||endpoint_mean||).
struct HHChainReport {
    HermitianMatrix midpoint;        // f at t = 1/2
    HermitianMatrix midpoint_mean;   // mean of f at the m midpoint nodes (2i+1)/2m
    HermitianMatrix line_integral;   // integral of f over the path
    HermitianMatrix trapezoid_mean;  // mean of the m panel trapezoids on the i/m grid
    HermitianMatrix endpoint_mean;
    int subdivisions = 1;  // m = k^p
    double tolerance = 0.0;
    double condition_c_residual = 0.0;
    std::array<LoewnerVerdict, 4> verdicts{};

    bool all_hold() const {
        for (const auto& v : verdicts)
            if (!v.holds) return false;
        return true;
    }
    double min_margin() const {
        double m = verdicts[0].min_eigenvalue;
        for (const auto& v : verdicts) m = std::min(m, v.min_eigenvalue);
        return m;
    }
};

// Throws ConfigError when k^p exceeds 64 or eta fails condition C on the instance
// (residual checked on a five-point grid first), MembershipError when the path
// leaves the set.
HHChainReport hh_chain(const ScalarFunction& f, const HermitianMatrix& a,
                       const HermitianMatrix& b, const EtaMap& eta, const OperatorSet& s, int k,
                       int p, const QuadratureScheme& q, double scale_tol = 1e-9);

// Gap form of the chain's outer terms: 0 <= line_integral - midpoint and
// (line_integral - midpoint) <= (endpoint_mean - line_integral).
struct CorollaryReport {
    HermitianMatrix left_gap;
    HermitianMatrix right_gap;
    LoewnerVerdict left_nonnegative;
    LoewnerVerdict gaps_ordered;
    double tolerance = 0.0;
};
CorollaryReport corollary_gap(const ScalarFunction& f, const HermitianMatrix& a,
                              const HermitianMatrix& b, const EtaMap& eta, const OperatorSet& s,
                              const QuadratureScheme& q, double scale_tol = 1e-9);
CorollaryReport corollary_from_chain(const HHChainReport& chain);

// Endpoint product functionals for a unit vector x:
//   m_value = <f(A)x,x><g(A)x,x> + <f(B)x,x><g(B)x,x>
//   n_value = <f(A)x,x><g(B)x,x> + <f(B)x,x><g(A)x,x>
struct ProductEntry {
    double m_value = 0.0;
    double n_value = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    bool holds = false;
};

// Right-endpoint product bound per unit vector:
//   int_0^1 <f(P(t))x,x><g(P(t))x,x> dt <= m_value/3 + n_value/6.
// f and g must be declared nonnegative unless allow_signed, in which case the
// inequality is still evaluated and simply reported.
std::vector<ProductEntry> product_ineq_right(const ScalarFunction& f, const ScalarFunction& g,
                                             const HermitianMatrix& a, const HermitianMatrix& b,
                                             const EtaMap& eta, const OperatorSet& s,
                                             const std::vector<CVector>& xs,
                                             const QuadratureScheme& q, double tol = 1e-8,
                                             bool allow_signed = false);

// Midpoint product bound per unit vector:
//   <f(P(1/2))x,x><g(P(1/2))x,x> <= (1/2) int + m_value/12 + n_value/6.
// Requires an eta satisfying condition C (caller-asserted).
std::vector<ProductEntry> product_ineq_left(const ScalarFunction& f, const ScalarFunction& g,
                                            const HermitianMatrix& a, const HermitianMatrix& b,
                                            const EtaMap& eta, const OperatorSet& s,
                                            const std::vector<CVector>& xs,
                                            const QuadratureScheme& q, double tol = 1e-8,
                                            bool allow_signed = false);

// Accumulated-integral trapezoid bound on [a, b] inside (0, 1), with
//   Phi(t) = int_0^t f(P(s)) ds,  phi_x(t) = <Phi(t)x,x>,  phi_x'(t) = <f(P(t))x,x>:
//   |(phi(a)+phi(b))/2 - (1/(b-a)) int_a^b phi| <= ((b-a)/8)(|phi'(a)| + |phi'(b)|)
// per vector, plus the operator-norm form with its triangle-inequality final line.
struct TrapezoidEntry {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = false;
};
struct TrapezoidReport {
    double a = 0.0;
    double b = 0.0;
    std::vector<TrapezoidEntry> scalar;  // one per supplied unit vector
    double norm_lhs = 0.0;
    double norm_rhs_joint = 0.0;  // ((b-a)/8) ||f(P(a)) + f(P(b))||
    double norm_rhs_split = 0.0;  // ((b-a)/8) (||f(P(a))|| + ||f(P(b))||)
    bool norm_holds = false;
    bool triangle_holds = false;
    bool set_open = true;  // theorem hypothesis; false is reported, not fatal
    double tolerance = 0.0;
};
TrapezoidReport trapezoid_bound(const ScalarFunction& f, const HermitianMatrix& a_op,
                                const HermitianMatrix& b_op, const EtaMap& eta,
                                const OperatorSet& s, double a, double b,
                                const std::vector<CVector>& xs, const QuadratureScheme& q,
                                double tol = 1e-8, bool allow_signed = false);

// Specializations recovered when eta is the difference map on the whole space:
// the chain becomes the classical two-endpoint one, the m = 2 midpoint mean
// collapses to the two-quarter-point average, and for dimension one the product
// bounds reduce to their scalar forms.
struct ReductionsReport {
    HHChainReport chain;
    double midpoint_residual = 0.0;  // || midpoint_mean - two-point average ||
    bool midpoint_match = false;
    struct Pachpatte {
        ProductEntry right;
        ProductEntry left;
        double doubled_left_slack = 0.0;
        bool holds = false;
    };
    std::optional<Pachpatte> pachpatte;  // dimension one with a second function only
};
ReductionsReport classical_reductions(const ScalarFunction& f, const ScalarFunction* g,
                                      const HermitianMatrix& a, const HermitianMatrix& b, int k,
                                      int p, const QuadratureScheme& q, double scale_tol = 1e-9);

}  // namespace ophh
