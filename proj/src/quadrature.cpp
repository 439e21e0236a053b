#include "ophh/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "ophh/errors.hpp"

namespace ophh {

namespace {

// Legendre P_m and P'_m at x via the three-term recurrence.
void legendre_eval(int m, double x, double& p, double& dp) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= m; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    p = (m == 0) ? p0 : p1;
    dp = m * (x * p1 - p0) / (x * x - 1.0);
}

GaussLegendreRule build_rule(int points) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<size_t>(points));
    rule.weights.resize(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) {
        // Chebyshev-angle initial guess, then Newton on P_m.
        double x = std::cos(M_PI * (i + 0.75) / (points + 0.5));
        double p = 0.0, dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            legendre_eval(points, x, p, dp);
            const double step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        legendre_eval(points, x, p, dp);
        rule.nodes[static_cast<size_t>(points - 1 - i)] = x;
        rule.weights[static_cast<size_t>(points - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int points) {
    if (points < 2 || points > 32) throw std::invalid_argument("supported rule sizes are 2..32");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, build_rule(points)).first;
    return it->second;
}

void QuadratureScheme::validate() const {
    if (panels < 1) throw ConfigError("quadrature needs at least one panel");
    if (points_per_panel < 2 || points_per_panel > 32)
        throw ConfigError("points per panel must lie in 2..32");
    if (!(convergence_tol > 0.0)) throw ConfigError("convergence tolerance must be positive");
    if (max_refinements < 0) throw ConfigError("refinement count must be nonnegative");
}

QuadratureScheme QuadratureScheme::tighter(double factor) const {
    QuadratureScheme q = *this;
    q.convergence_tol /= factor;
    return q;
}

namespace {

std::vector<double> segment_bounds(double a, double b, const std::vector<double>& splits) {
    if (!(a < b)) throw std::invalid_argument("integration needs a < b");
    std::vector<double> bounds{a};
    std::vector<double> inner;
    for (double s : splits)
        if (s > a && s < b) inner.push_back(s);
    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    bounds.insert(bounds.end(), inner.begin(), inner.end());
    bounds.push_back(b);
    return bounds;
}

// One composite pass over [a, b] with `panels` panels, accumulating weighted node
// values through `add` (signature: void(double weight, double t)).
template <typename AddFn>
void composite_pass(double a, double b, int panels, const GaussLegendreRule& rule, AddFn&& add) {
    const double h = (b - a) / panels;
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double lo = a + pnl * h;
        const double mid = lo + 0.5 * h;
        const double half = 0.5 * h;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            add(half * rule.weights[i], mid + half * rule.nodes[i]);
    }
}

}  // namespace

HermitianMatrix integrate_operator(const std::function<HermitianMatrix(double)>& fn, double a,
                                   double b, const QuadratureScheme& scheme,
                                   const std::vector<double>& splits) {
    scheme.validate();
    const GaussLegendreRule& rule = gauss_legendre(scheme.points_per_panel);
    const std::vector<double> bounds = segment_bounds(a, b, splits);

    HermitianMatrix total = HermitianMatrix::zero(1);
    bool have_total = false;
    for (size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
        const double lo = bounds[seg];
        const double hi = bounds[seg + 1];

        auto pass = [&](int panels) {
            ComplexMatrix acc;
            composite_pass(lo, hi, panels, rule, [&](double w, double t) {
                const HermitianMatrix v = fn(t);
                if (acc.rows() == 0) acc = ComplexMatrix(v.dim(), v.dim());
                for (int i = 0; i < v.dim(); ++i)
                    for (int j = 0; j < v.dim(); ++j) acc(i, j) += w * v(i, j);
            });
            return HermitianMatrix::symmetrized(acc);
        };

        int panels = scheme.panels;
        HermitianMatrix prev = pass(panels);
        bool converged = false;
        for (int r = 0; r < scheme.max_refinements; ++r) {
            panels *= 2;
            HermitianMatrix next = pass(panels);
            const double diff = operator_norm(next - prev);
            prev = next;
            if (diff <= scheme.convergence_tol * (1.0 + operator_norm(next))) {
                converged = true;
                break;
            }
        }
        if (!converged && scheme.max_refinements > 0)
            throw NonConvergenceError("quadrature did not settle within the refinement cap");

        if (!have_total) {
            total = prev;
            have_total = true;
        } else {
            total = total + prev;
        }
    }
    return total;
}

std::vector<double> integrate_scalar_multi(
    const std::function<void(double, std::vector<double>&)>& fn, int components, double a,
    double b, const QuadratureScheme& scheme, const std::vector<double>& splits) {
    scheme.validate();
    if (components < 1) throw std::invalid_argument("need at least one component");
    const GaussLegendreRule& rule = gauss_legendre(scheme.points_per_panel);
    const std::vector<double> bounds = segment_bounds(a, b, splits);

    std::vector<double> total(static_cast<size_t>(components), 0.0);
    std::vector<double> node_buf(static_cast<size_t>(components));
    for (size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
        const double lo = bounds[seg];
        const double hi = bounds[seg + 1];

        auto pass = [&](int panels) {
            std::vector<double> acc(static_cast<size_t>(components), 0.0);
            composite_pass(lo, hi, panels, rule, [&](double w, double t) {
                fn(t, node_buf);
                for (size_t c = 0; c < acc.size(); ++c) acc[c] += w * node_buf[c];
            });
            return acc;
        };

        int panels = scheme.panels;
        std::vector<double> prev = pass(panels);
        bool converged = false;
        for (int r = 0; r < scheme.max_refinements; ++r) {
            panels *= 2;
            std::vector<double> next = pass(panels);
            bool ok = true;
            for (size_t c = 0; c < next.size(); ++c)
                if (std::abs(next[c] - prev[c]) >
                    scheme.convergence_tol * (1.0 + std::abs(next[c])))
                    ok = false;
            prev = std::move(next);
            if (ok) {
                converged = true;
                break;
            }
        }
        if (!converged && scheme.max_refinements > 0)
            throw NonConvergenceError("quadrature did not settle within the refinement cap");

        for (size_t c = 0; c < total.size(); ++c) total[c] += prev[c];
    }
    return total;
}

double integrate_scalar(const std::function<double(double)>& fn, double a, double b,
                        const QuadratureScheme& scheme, const std::vector<double>& splits) {
    const auto wrapped = [&fn](double t, std::vector<double>& out) { out[0] = fn(t); };
    return integrate_scalar_multi(wrapped, 1, a, b, scheme, splits)[0];
}

}  // namespace ophh
