#include "ophh/preinvex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ophh/errors.hpp"

namespace ophh {

namespace {

// (1-t) y + t x over the Hermitian structure.
HermitianMatrix lin_comb(double cx, const HermitianMatrix& x, double cy, const HermitianMatrix& y) {
    return axpy(cx * x, cy, y);
}

}  // namespace

PreinvexTrial preinvex_trial(const ScalarFunction& f, const EtaMap& eta, const OperatorSet& s,
                             const HermitianMatrix& first, const HermitianMatrix& second,
                             const std::vector<double>& t_grid, double scale_tol) {
    const HermitianMatrix e = eval_eta(eta, first, second, s);
    const HermitianMatrix f_first = apply_function(f, first);
    const HermitianMatrix f_second = apply_function(f, second);

    PreinvexTrial trial;
    trial.pass = true;
    trial.margin = std::numeric_limits<double>::infinity();
    double worst_t = t_grid.empty() ? 0.0 : t_grid.front();
    for (double t : t_grid) {
        const HermitianMatrix lhs = apply_function(f, axpy(second, t, e));
        const HermitianMatrix rhs = lin_comb(1.0 - t, f_second, t, f_first);
        const LoewnerVerdict v = loewner_leq(lhs, rhs, scale_tol);
        if (v.min_eigenvalue < trial.margin) {
            trial.margin = v.min_eigenvalue;
            worst_t = t;
        }
        if (!v.holds) trial.pass = false;
    }
    if (!trial.pass)
        trial.counterexample = PreinvexCounterexample{first, second, worst_t, trial.margin};
    return trial;
}

std::vector<PreinvexTrial> run_preinvex_trials(const ScalarFunction& f, const EtaMap& eta,
                                               const OperatorSet& s, const Interval& iv, int dim,
                                               const PreinvexCheckOptions& opt) {
    if (opt.trials < 0) throw std::invalid_argument("trials must be nonnegative");
    const std::vector<double> grid = unit_grid(opt.t_grid_size);
    const auto sweep = sweep_pairs(s, iv, eta, dim);
    const double shrink = branch_shrink_for(eta, s);

    std::vector<PreinvexTrial> trials(static_cast<size_t>(opt.trials));
    std::exception_ptr first_error;

    auto run_one = [&](int i) {
        PreinvexTrial t;
        if (static_cast<size_t>(i) < sweep.size()) {
            t = preinvex_trial(f, eta, s, sweep[static_cast<size_t>(i)].first,
                               sweep[static_cast<size_t>(i)].second, grid, opt.scale_tol);
        } else {
            Rng rng(split_seed(opt.seed, static_cast<std::uint64_t>(i)));
            int retries = 0;
            const SampledOperator a = sample_in_set(s, iv, dim, rng, shrink, &retries);
            const SampledOperator b = sample_in_set(s, iv, dim, rng, shrink, &retries);
            t = preinvex_trial(f, eta, s, a.a, b.a, grid, opt.scale_tol);
            t.resampled = retries;
        }
        t.index = static_cast<std::uint64_t>(i);
        trials[static_cast<size_t>(i)] = std::move(t);
    };

    if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < opt.trials; ++i) {
            try {
                run_one(i);
            } catch (...) {
#pragma omp critical
                if (!first_error) first_error = std::current_exception();
            }
        }
    } else {
        for (int i = 0; i < opt.trials; ++i) run_one(i);
    }
    if (first_error) std::rethrow_exception(first_error);
    return trials;
}

PreinvexityReport check_operator_preinvex(const ScalarFunction& f, const EtaMap& eta,
                                          const OperatorSet& s, const Interval& iv, int dim,
                                          const PreinvexCheckOptions& opt) {
    const std::vector<PreinvexTrial> trials = run_preinvex_trials(f, eta, s, iv, dim, opt);
    PreinvexityReport rep;
    rep.trials = opt.trials;
    rep.pass = true;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (const PreinvexTrial& t : trials) {
        rep.resampled += t.resampled;
        rep.worst_margin = std::min(rep.worst_margin, t.margin);
        if (!t.pass && rep.pass) {
            rep.pass = false;
            rep.counterexample = t.counterexample;
        }
    }
    if (trials.empty()) rep.worst_margin = 0.0;
    return rep;
}

namespace {

void require_unit(const CVector& x) {
    if (std::abs(vec_norm(x) - 1.0) > 1e-12)
        throw std::invalid_argument("vector must have unit norm");
}

}  // namespace

double phi_scalar(const ScalarFunction& f, const HermitianMatrix& base,
                  const HermitianMatrix& toward, const EtaMap& eta, const OperatorSet& s,
                  const CVector& x, double t) {
    require_unit(x);
    return quadratic_form(apply_function(f, path_point(base, toward, eta, s, t)), x);
}

PhiEvaluator::PhiEvaluator(const ScalarFunction& f, const HermitianMatrix& base,
                           const HermitianMatrix& toward, const EtaMap& eta, const OperatorSet& s)
    : f_(f), path_(EtaPath::make(base, toward, eta, s)) {}

const HermitianMatrix& PhiEvaluator::matrix_at(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("path parameter outside [0, 1]");
    auto it = cache_.find(t);
    if (it == cache_.end())
        it = cache_.emplace(t, apply_function(f_, path_.point(t))).first;
    return it->second;
}

double PhiEvaluator::eval(double t, const CVector& x) {
    require_unit(x);
    return quadratic_form(matrix_at(t), x);
}

PhiConvexityReport check_phi_convex(PhiEvaluator& phi, const CVector& x,
                                    const std::vector<double>& t_grid, double tol) {
    if (t_grid.size() < 2) throw std::invalid_argument("grid needs at least two points");
    std::vector<double> vals(t_grid.size());
    double scale = 0.0;
    for (size_t i = 0; i < t_grid.size(); ++i) {
        vals[i] = phi.eval(t_grid[i], x);
        scale = std::max(scale, std::abs(vals[i]));
    }
    PhiConvexityReport rep;
    rep.tolerance = tol * (1.0 + scale);
    rep.worst_violation = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < t_grid.size(); ++i) {
        for (size_t j = i + 1; j < t_grid.size(); ++j) {
            const double mid = 0.5 * (t_grid[i] + t_grid[j]);
            const double overshoot = phi.eval(mid, x) - 0.5 * (vals[i] + vals[j]);
            if (overshoot > rep.worst_violation) {
                rep.worst_violation = overshoot;
                rep.at_s = t_grid[i];
                rep.at_t = t_grid[j];
            }
        }
    }
    rep.convex = rep.worst_violation <= rep.tolerance;
    return rep;
}

PhiConvexityReport check_phi_convex(const ScalarFunction& f, const HermitianMatrix& base,
                                    const HermitianMatrix& toward, const EtaMap& eta,
                                    const OperatorSet& s, const CVector& x,
                                    const std::vector<double>& t_grid, double tol) {
    PhiEvaluator phi(f, base, toward, eta, s);
    return check_phi_convex(phi, x, t_grid, tol);
}

}  // namespace ophh
