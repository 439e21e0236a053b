#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ophh/invex.hpp"

namespace ophh {

// Witness that f(second + t*eta(first, second)) <= (1-t) f(second) + t f(first)
// failed: the pair, the path parameter, and how far below zero the difference's
// smallest eigenvalue fell.
struct PreinvexCounterexample {
    HermitianMatrix first;
    HermitianMatrix second;
    double t = 0.0;
    double min_eigenvalue = 0.0;
};

struct PreinvexTrial {
    std::uint64_t index = 0;
    double margin = 0.0;  // min over the t grid of lambda_min(rhs - lhs)
    bool pass = false;
    int resampled = 0;
    std::optional<PreinvexCounterexample> counterexample;
};

struct PreinvexityReport {
    int trials = 0;
    int resampled = 0;
    double worst_margin = 0.0;
    bool pass = false;
    std::optional<PreinvexCounterexample> counterexample;
};

struct PreinvexCheckOptions {
    int trials = 100;
    int t_grid_size = 33;
    double scale_tol = 1e-9;
    std::uint64_t seed = 0;
    bool parallel = true;
};

// One pair, full t grid. Both arguments must be members; the path must stay inside
// the scalar function's domain (apply_function raises otherwise).
PreinvexTrial preinvex_trial(const ScalarFunction& f, const EtaMap& eta, const OperatorSet& s,
                             const HermitianMatrix& first, const HermitianMatrix& second,
                             const std::vector<double>& t_grid, double scale_tol);

// Randomized check over `trials` pairs with spectra in iv. The first trials walk
// the deterministic cross-branch sweep (the case-table corners), the rest draw
// Haar-random pairs. Trial i is driven by split_seed(seed, i), so results do not
// depend on execution order or thread count.
std::vector<PreinvexTrial> run_preinvex_trials(const ScalarFunction& f, const EtaMap& eta,
                                               const OperatorSet& s, const Interval& iv, int dim,
                                               const PreinvexCheckOptions& opt);

PreinvexityReport check_operator_preinvex(const ScalarFunction& f, const EtaMap& eta,
                                          const OperatorSet& s, const Interval& iv, int dim,
                                          const PreinvexCheckOptions& opt);

// <f(base + t*eta(toward, base)) x, x> for a unit vector x (norm within 1e-12).
double phi_scalar(const ScalarFunction& f, const HermitianMatrix& base,
                  const HermitianMatrix& toward, const EtaMap& eta, const OperatorSet& s,
                  const CVector& x, double t);

// Caches f(path(t)) per t so many unit vectors can share one set of path
// evaluations. Path parameters are compared bitwise; dyadic grids collide often,
// which is the point.
class PhiEvaluator {
public:
    PhiEvaluator(const ScalarFunction& f, const HermitianMatrix& base,
                 const HermitianMatrix& toward, const EtaMap& eta, const OperatorSet& s);

    double eval(double t, const CVector& x);
    const HermitianMatrix& matrix_at(double t);

private:
    const ScalarFunction& f_;
    EtaPath path_;
    std::map<double, HermitianMatrix> cache_;
};

// Midpoint convexity of phi on every grid pair: phi((s+t)/2) <= (phi(s)+phi(t))/2
// within tol * (1 + max |phi| on the grid).
struct PhiConvexityReport {
    bool convex = false;
    double worst_violation = 0.0;  // positive means the midpoint overshoots
    double at_s = 0.0;
    double at_t = 0.0;
    double tolerance = 0.0;
};
PhiConvexityReport check_phi_convex(const ScalarFunction& f, const HermitianMatrix& base,
                                    const HermitianMatrix& toward, const EtaMap& eta,
                                    const OperatorSet& s, const CVector& x,
                                    const std::vector<double>& t_grid, double tol = 1e-10);
PhiConvexityReport check_phi_convex(PhiEvaluator& phi, const CVector& x,
                                    const std::vector<double>& t_grid, double tol = 1e-10);

}  // namespace ophh
