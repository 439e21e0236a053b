#pragma once

#include <functional>
#include <vector>

#include "ophh/hermitian.hpp"

namespace ophh {

// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int points);

// Composite Gauss-Legendre with panel-doubling refinement: integrate with
// `panels`, then 2*panels, and accept once successive values agree to
// convergence_tol * (1 + |value|) componentwise (operator norm for matrices).
// Throws NonConvergenceError past max_refinements doublings.
struct QuadratureScheme {
    int panels = 8;
    int points_per_panel = 8;
    double convergence_tol = 1e-11;
    int max_refinements = 10;

    void validate() const;
    QuadratureScheme tighter(double factor) const;  // same grid, tol / factor
};

// Integral of a matrix-valued integrand over [a, b]. `splits` lists interior
// points where the integrand is not smooth; each subinterval refines on its own.
HermitianMatrix integrate_operator(const std::function<HermitianMatrix(double)>& fn, double a,
                                   double b, const QuadratureScheme& scheme,
                                   const std::vector<double>& splits = {});

// Several scalar integrals sharing one integrand sweep: fn(t, out) fills
// `components` values per node. Convergence requires every component to settle.
std::vector<double> integrate_scalar_multi(
    const std::function<void(double, std::vector<double>&)>& fn, int components, double a,
    double b, const QuadratureScheme& scheme, const std::vector<double>& splits = {});

double integrate_scalar(const std::function<double(double)>& fn, double a, double b,
                        const QuadratureScheme& scheme, const std::vector<double>& splits = {});

}  // namespace ophh
