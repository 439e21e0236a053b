// Acceptance gate: ten numbered criteria, one [PASS]/[FAIL] line each, exit 1
// if any fails. Every criterion reseeds its own generator, so the criteria can
// be reordered or run alone without changing any verdict.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ophh/campaign.hpp"
#include "ophh/hh.hpp"

using namespace ophh;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

HermitianMatrix gaussian_hermitian(int n, Rng& rng) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
    return HermitianMatrix::symmetrized(m);
}

// Quadratic c0 + c1 t + c2 t^2 with c2 >= 0, shifted so its minimum over `dom`
// clears 0.05. Declared nonnegative; the parser's spot check must agree.
ScalarFunction lifted_quadratic(Rng& rng, const Interval& dom, bool even_only) {
    const double c1 = even_only ? 0.0 : rng.uniform(-1.0, 1.0);
    const double c2 = rng.uniform(0.0, 1.5);
    auto value = [&](double t) { return c1 * t + c2 * t * t; };
    double lo = std::min(value(dom.lo), value(dom.hi));
    if (c2 > 0.0) {
        const double vertex = -c1 / (2.0 * c2);
        if (dom.contains(vertex)) lo = std::min(lo, value(vertex));
    }
    const double c0 = 0.05 - lo;
    std::ostringstream os;
    os.precision(17);
    os << "poly:" << c0 << "," << c1 << "," << c2;
    return parse_scalar_function(os.str(), dom, true);
}

// Convex nonnegative piecewise-linear function on [0, 1] built from increasing
// slopes over the nodes 0 < u1 < u2 < 1, lifted to clear 0.05.
ScalarFunction convex_pwl(Rng& rng) {
    const double u1 = rng.uniform(0.15, 0.45);
    const double u2 = rng.uniform(u1 + 0.15, 0.85);
    double slopes[3];
    for (double& s : slopes) s = rng.uniform(-2.0, 2.0);
    std::sort(std::begin(slopes), std::end(slopes));

    const double ts[4] = {0.0, u1, u2, 1.0};
    double vs[4];
    vs[0] = rng.uniform(0.0, 1.0);
    for (int i = 0; i < 3; ++i) vs[i + 1] = vs[i] + slopes[i] * (ts[i + 1] - ts[i]);
    double lo = vs[0];
    for (double v : vs) lo = std::min(lo, v);
    std::ostringstream os;
    os.precision(17);
    os << "table:";
    for (int i = 0; i < 4; ++i) {
        if (i) os << ",";
        os << ts[i] << ":" << vs[i] - lo + 0.05;
    }
    return parse_scalar_function(os.str(), Interval::closed(0.0, 1.0), true);
}

// ---------------------------------------------------------------------------
// 1. Spectral calculus: reconstruction plus order and positivity invariants.
Outcome criterion_1() {
    const double t0 = now_seconds();
    const int dims[] = {1, 2, 4, 8, 16};
    const std::uint64_t master = 101;

    double worst_resid = 0.0;
    int made = 0;
    for (int rep = 0; rep < 40; ++rep)
        for (int n : dims) {
            Rng rng(split_seed(master, static_cast<std::uint64_t>(made++)));
            auto a = gaussian_hermitian(n, rng);
            auto dec = decompose(a);
            ComplexMatrix lam(n, n);
            for (int i = 0; i < n; ++i) lam(i, i) = dec.eigenvalues[i];
            const auto& v = dec.eigenvectors;
            const double resid = (v * lam * v.adjoint() - a.mat()).frobenius_norm();
            const double bound = 1e-10 * (1.0 + a.frobenius_norm());
            if (resid > bound)
                return fail("reconstruction residual " + fmt(resid) + " exceeds " + fmt(bound) +
                            " at n=" + std::to_string(n));
            worst_resid = std::max(worst_resid, resid);
        }

    // f <= g pointwise on [-2, 2] in each pair; the second list is nonnegative.
    const Interval dom = Interval::closed(-2.0, 2.0);
    const std::pair<const char*, const char*> dominated[] = {
        {"neg_abs", "const:0"},   {"const:0", "square"},    {"square", "poly:1,0,1"},
        {"identity", "exp"},      {"affine:-3,1", "affine:3,1"}, {"neg_square", "square"},
    };
    const char* nonneg[] = {"square", "exp", "const:2", "poly:1,0,1", "poly:4,4,1"};

    for (int i = 0; i < 200; ++i) {
        Rng rng(split_seed(master + 1, static_cast<std::uint64_t>(i)));
        const int n = dims[i % 5];
        auto a = random_hermitian_in(dom, n, rng);

        const auto& [fname, gname] = dominated[i % std::size(dominated)];
        auto fa = apply_function(parse_scalar_function(fname, dom), a);
        auto ga = apply_function(parse_scalar_function(gname, dom), a);
        auto order = loewner_leq(fa, ga, 1e-10);
        if (!order.holds)
            return fail(std::string("monotonicity violated for ") + fname + " <= " + gname +
                        " (margin " + fmt(order.margin()) + ")");

        auto pa = apply_function(parse_scalar_function(nonneg[i % std::size(nonneg)], dom), a);
        auto pos = loewner_leq(HermitianMatrix::zero(n), pa, 1e-10);
        if (!pos.holds)
            return fail(std::string("positivity violated for ") + nonneg[i % std::size(nonneg)]);
    }

    const double elapsed = now_seconds() - t0;
    if (elapsed >= 10.0) return fail("runtime " + fmt(elapsed) + " s exceeds 10 s");
    return {true, "200 reconstructions (worst residual " + fmt(worst_resid) +
                      "), 200 order/positivity instances, " + fmt(elapsed) + " s"};
}

// ---------------------------------------------------------------------------
// 2. Five-term chain across maps, dimensions and subdivisions. The reports are
// kept for criterion 5.
std::vector<HHChainReport> chain_bank;

Outcome criterion_2() {
    const double t0 = now_seconds();
    const Interval iv = Interval::closed(-2.0, 2.0);
    const auto f = parse_scalar_function("square", iv);
    const QuadratureScheme q;
    const int dims[] = {1, 2, 4, 8};
    const int ps[] = {0, 1, 2, 3};  // m = 2^p in {1, 2, 4, 8}

    chain_bank.clear();
    chain_bank.reserve(400);
    double worst = std::numeric_limits<double>::infinity();

    for (int which = 0; which < 2; ++which) {
        const EtaMap eta = which == 0 ? EtaMap::difference() : EtaMap::eta1();
        const OperatorSet s = which == 0 ? OperatorSet::whole_space() : OperatorSet::tu_union();
        for (int i = 0; i < 200; ++i) {
            Rng rng(split_seed(202 + which, static_cast<std::uint64_t>(i)));
            const int dim = dims[i % 4];
            const int p = ps[(i / 4) % 4];

            HermitianMatrix a = HermitianMatrix::zero(1), b = a;
            if (which == 0) {
                a = random_hermitian_in(iv, dim, rng);
                b = random_hermitian_in(iv, dim, rng);
            } else {
                a = sample_in_set(s, iv, dim, rng).a;
                b = sample_in_set(s, iv, dim, rng).a;
            }

            auto rep = hh_chain(f, a, b, eta, s, 2, p, q);
            const double bound = -1e-8 * (1.0 + operator_norm(rep.endpoint_mean));
            const double margin = rep.min_margin();
            if (margin < bound)
                return fail("chain margin " + fmt(margin) + " below " + fmt(bound) +
                            " (eta " + eta.description() + ", dim " + std::to_string(dim) +
                            ", m " + std::to_string(rep.subdivisions) + ")");
            worst = std::min(worst, margin);
            chain_bank.push_back(std::move(rep));
        }
    }

    const double elapsed = now_seconds() - t0;
    if (elapsed >= 60.0) return fail("runtime " + fmt(elapsed) + " s exceeds 60 s");
    return {true, "400 chains, worst margin " + fmt(worst) + ", " + fmt(elapsed) + " s"};
}

// ---------------------------------------------------------------------------
// 3. Scalar chain against the closed-form values.
HHChainReport scalar_chain() {
    return hh_chain(parse_scalar_function("square", Interval::closed(-2.0, 2.0)),
                    HermitianMatrix::diagonal({0.0}), HermitianMatrix::diagonal({1.0}),
                    EtaMap::difference(), OperatorSet::whole_space(), 2, 1, QuadratureScheme{});
}

Outcome criterion_3() {
    auto rep = scalar_chain();
    const double want[] = {0.25, 0.3125, 1.0 / 3.0, 0.375, 0.5};
    const HermitianMatrix* got[] = {&rep.midpoint, &rep.midpoint_mean, &rep.line_integral,
                                    &rep.trapezoid_mean, &rep.endpoint_mean};
    for (int i = 0; i < 5; ++i) {
        const double v = (*got[i])(0, 0).real();
        if (std::abs(v - want[i]) > 1e-10)
            return fail("term " + std::to_string(i + 1) + " = " + fmt(v) + ", expected " +
                        fmt(want[i]));
    }
    if (!rep.all_hold()) return fail("a chain verdict failed on the scalar instance");
    return {true, "terms (0.25, 0.3125, 1/3, 0.375, 0.5) reproduced to 1e-10"};
}

// ---------------------------------------------------------------------------
// 4. The cross-branch identity pair: chain profile (2 - t)^2 times identity.
Outcome criterion_4() {
    auto a = HermitianMatrix::scaled_identity(2, 2.0);
    auto b = HermitianMatrix::scaled_identity(2, -2.0);
    auto rep = hh_chain(parse_scalar_function("square", Interval::closed(-4.0, 4.0)), a, b,
                        EtaMap::eta1(), OperatorSet::tu_union(), 2, 1, QuadratureScheme{}, 1e-10);
    const double want[] = {9.0 / 4.0, 2.3125, 7.0 / 3.0, 2.375, 4.0};
    const HermitianMatrix* got[] = {&rep.midpoint, &rep.midpoint_mean, &rep.line_integral,
                                    &rep.trapezoid_mean, &rep.endpoint_mean};
    for (int k = 0; k < 5; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const double expect = i == j ? want[k] : 0.0;
                if (std::abs((*got[k])(i, j) - cdouble(expect, 0.0)) > 1e-10)
                    return fail("term " + std::to_string(k + 1) + " entry (" +
                                std::to_string(i) + "," + std::to_string(j) + ") off");
            }
    if (!rep.all_hold()) return fail("a chain verdict failed on the identity pair");
    return {true, "chain (9/4, 2.3125, 7/3, 2.375, 4) * I reproduced to 1e-10"};
}

// ---------------------------------------------------------------------------
// 5. Gap ordering on every criterion-2 instance plus the scalar gap values.
Outcome criterion_5() {
    if (chain_bank.empty()) return fail("criterion 2 produced no chains to reuse");
    for (size_t i = 0; i < chain_bank.size(); ++i) {
        auto gaps = corollary_from_chain(chain_bank[i]);
        if (!gaps.left_nonnegative.holds)
            return fail("left gap not psd on chain instance " + std::to_string(i));
        if (!gaps.gaps_ordered.holds)
            return fail("gap ordering violated on chain instance " + std::to_string(i));
    }

    auto gaps = corollary_from_chain(scalar_chain());
    const double left = gaps.left_gap(0, 0).real();
    const double right = gaps.right_gap(0, 0).real();
    if (std::abs(left - 1.0 / 12.0) > 1e-10) return fail("scalar left gap " + fmt(left));
    if (std::abs(right - 1.0 / 6.0) > 1e-10) return fail("scalar right gap " + fmt(right));
    return {true, std::to_string(chain_bank.size()) + " instances ordered; scalar gaps (1/12, 1/6)"};
}

// ---------------------------------------------------------------------------
// 6. Product bounds: equality cases, then random nonnegative instances.
Outcome criterion_6() {
    const double t0 = now_seconds();
    const QuadratureScheme q;
    const std::vector<CVector> e0{CVector{1.0}};
    auto s0 = HermitianMatrix::diagonal({0.0});
    auto s1 = HermitianMatrix::diagonal({1.0});

    auto ident = parse_scalar_function("identity", Interval::closed(0.0, 2.0), true);
    auto r = product_ineq_right(ident, ident, s0, s1, EtaMap::difference(),
                                OperatorSet::whole_space(), e0, q)[0];
    auto l = product_ineq_left(ident, ident, s0, s1, EtaMap::difference(),
                               OperatorSet::whole_space(), e0, q)[0];
    if (std::abs(r.slack) > 1e-10) return fail("identity right slack " + fmt(r.slack));
    if (std::abs(l.slack) > 1e-10) return fail("identity left slack " + fmt(l.slack));

    auto c2 = parse_scalar_function("const:2", Interval::closed(-2.0, 2.0), true);
    auto rc = product_ineq_right(c2, c2, s0, s1, EtaMap::difference(),
                                 OperatorSet::whole_space(), e0, q)[0];
    auto lc = product_ineq_left(c2, c2, s0, s1, EtaMap::difference(),
                                OperatorSet::whole_space(), e0, q)[0];
    if (std::abs(rc.slack) > 1e-12) return fail("constant right slack " + fmt(rc.slack));
    if (std::abs(lc.slack) > 1e-12) return fail("constant left slack " + fmt(lc.slack));

    const Interval iv = Interval::closed(-2.0, 2.0);
    const int dims[] = {1, 2, 4};
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 500; ++i) {
        Rng rng(split_seed(606, static_cast<std::uint64_t>(i)));
        const int dim = dims[i % 3];
        const bool cross = (i % 2) == 1;
        const EtaMap eta = cross ? EtaMap::eta1() : EtaMap::difference();
        const OperatorSet s = cross ? OperatorSet::tu_union() : OperatorSet::whole_space();

        auto f = lifted_quadratic(rng, iv, cross);
        auto g = lifted_quadratic(rng, iv, cross);
        HermitianMatrix a = HermitianMatrix::zero(1), b = a;
        if (cross) {
            a = sample_in_set(s, iv, dim, rng).a;
            b = sample_in_set(s, iv, dim, rng).a;
        } else {
            a = random_hermitian_in(iv, dim, rng);
            b = random_hermitian_in(iv, dim, rng);
        }
        std::vector<CVector> xs;
        for (int v = 0; v < 20; ++v) xs.push_back(random_unit_vector(dim, rng));

        for (const auto& e : product_ineq_right(f, g, a, b, eta, s, xs, q)) {
            if (e.slack < -1e-8)
                return fail("right product slack " + fmt(e.slack) + " at instance " +
                            std::to_string(i));
            worst = std::min(worst, e.slack);
        }
        for (const auto& e : product_ineq_left(f, g, a, b, eta, s, xs, q)) {
            if (e.slack < -1e-8)
                return fail("left product slack " + fmt(e.slack) + " at instance " +
                            std::to_string(i));
            worst = std::min(worst, e.slack);
        }
    }

    const double elapsed = now_seconds() - t0;
    if (elapsed >= 60.0) return fail("runtime " + fmt(elapsed) + " s exceeds 60 s");
    return {true, "equality cases tight; 500 instances, worst slack " + fmt(worst) + ", " +
                      fmt(elapsed) + " s"};
}

// ---------------------------------------------------------------------------
// 7. Accumulated-integral trapezoid bound: scalar reference and random sweep.
Outcome criterion_7() {
    const QuadratureScheme q;
    auto sq = parse_scalar_function("square", Interval::closed(-2.0, 2.0), true);
    const std::vector<CVector> e0{CVector{1.0}};
    auto rep = trapezoid_bound(sq, HermitianMatrix::diagonal({0.0}),
                               HermitianMatrix::diagonal({1.0}), EtaMap::difference(),
                               OperatorSet::whole_space(), 0.25, 0.75, e0, q);
    if (std::abs(rep.scalar[0].lhs - 1.0 / 48.0) > 1e-10)
        return fail("reference lhs " + fmt(rep.scalar[0].lhs));
    if (std::abs(rep.scalar[0].rhs - 5.0 / 128.0) > 1e-10)
        return fail("reference rhs " + fmt(rep.scalar[0].rhs));

    const Interval iv = Interval::closed(-2.0, 2.0);
    const int dims[] = {1, 2, 4};
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 200; ++i) {
        Rng rng(split_seed(707, static_cast<std::uint64_t>(i)));
        const int dim = dims[i % 3];
        const bool cross = (i % 2) == 1;
        const EtaMap eta = cross ? EtaMap::eta1() : EtaMap::difference();
        const OperatorSet s = cross ? OperatorSet::tu_union() : OperatorSet::whole_space();

        auto f = lifted_quadratic(rng, iv, cross);
        HermitianMatrix a = HermitianMatrix::zero(1), b = a;
        if (cross) {
            a = sample_in_set(s, iv, dim, rng).a;
            b = sample_in_set(s, iv, dim, rng).a;
        } else {
            a = random_hermitian_in(iv, dim, rng);
            b = random_hermitian_in(iv, dim, rng);
        }
        const double wa = rng.uniform(0.05, 0.45);
        const double wb = rng.uniform(wa + 0.1, 0.95);
        std::vector<CVector> xs;
        for (int v = 0; v < 5; ++v) xs.push_back(random_unit_vector(dim, rng));

        auto t = trapezoid_bound(f, a, b, eta, s, wa, wb, xs, q);
        for (const auto& e : t.scalar) {
            if (e.slack < -1e-8)
                return fail("scalar trapezoid slack " + fmt(e.slack) + " at instance " +
                            std::to_string(i));
            worst = std::min(worst, e.slack);
        }
        if (!t.norm_holds || !t.triangle_holds)
            return fail("norm-form trapezoid bound failed at instance " + std::to_string(i));
        worst = std::min(worst, t.norm_rhs_joint - t.norm_lhs);
    }
    return {true, "reference (1/48, 5/128) to 1e-10; 200 instances, worst slack " + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 8. The documented counterexample family, and the map that survives it.
Outcome criterion_8() {
    PreinvexCheckOptions opt;
    opt.trials = 100;
    opt.seed = 808;

    const Interval iv = Interval::closed(-3.0, 3.0);
    auto affine = parse_scalar_function("affine:0,1", Interval::closed(-12.0, 12.0));
    auto found1 = check_operator_preinvex(affine, EtaMap::eta1(), OperatorSet::tu_union(), iv, 2,
                                          opt);
    if (found1.pass || !found1.counterexample)
        return fail("no counterexample for the affine function with the retargeting map");

    auto sq = parse_scalar_function("square", Interval::closed(-12.0, 12.0));
    auto found2 = check_operator_preinvex(sq, EtaMap::eta2(), OperatorSet::vw_union(),
                                          Interval::open(-2.0, 2.0), 2, opt);
    if (found2.pass || !found2.counterexample)
        return fail("no counterexample for the square with the branch-freezing map");

    // replay both witnesses against the definition
    for (const auto* rep : {&found1, &found2}) {
        const auto& ce = *rep->counterexample;
        const bool first = rep == &found1;
        const auto& eta = first ? EtaMap::eta1() : EtaMap::eta2();
        const auto& s = first ? OperatorSet::tu_union() : OperatorSet::vw_union();
        const auto& f = first ? affine : sq;
        auto p = path_point(ce.second, ce.first, eta, s, ce.t);
        auto lhs = apply_function(f, p);
        auto rhs =
            (1.0 - ce.t) * apply_function(f, ce.second) + ce.t * apply_function(f, ce.first);
        if (loewner_leq(lhs, rhs).min_eigenvalue > -1e-6)
            return fail("stored counterexample does not replay as a violation");
    }

    opt.trials = 500;
    auto na = parse_scalar_function("neg_abs", Interval::closed(-12.0, 12.0));
    auto clean = check_operator_preinvex(na, EtaMap::eta3(), OperatorSet::semidefinite_signed(),
                                         iv, 2, opt);
    if (!clean.pass)
        return fail("sign-respecting map produced a spurious counterexample (margin " +
                    fmt(clean.worst_margin) + ")");

    return {true, "both counterexamples found and replayed (margins " +
                      fmt(found1.counterexample->min_eigenvalue) + ", " +
                      fmt(found2.counterexample->min_eigenvalue) + "); 500 clean trials"};
}

// ---------------------------------------------------------------------------
// 9. Along-path midpoint preinvexity versus quadratic-form convexity. The two
// verdicts are dual through the worst eigenvector, so they must agree exactly.
Outcome criterion_9() {
    struct Config {
        const char* fname;
        EtaMap eta;
        OperatorSet set;
        Interval iv;
    };
    const Interval box = Interval::closed(-2.0, 2.0);
    const Interval vw_box = Interval::open(-2.0, 2.0);
    const Config configs[] = {
        {"square", EtaMap::difference(), OperatorSet::whole_space(), box},
        {"square", EtaMap::eta1(), OperatorSet::tu_union(), box},
        {"square", EtaMap::eta2(), OperatorSet::vw_union(), vw_box},
        {"affine:0,1", EtaMap::eta1(), OperatorSet::tu_union(), box},
        {"affine:0,1", EtaMap::difference(), OperatorSet::whole_space(), box},
        {"neg_square", EtaMap::difference(), OperatorSet::whole_space(), box},
        {"const:2", EtaMap::eta2(), OperatorSet::vw_union(), vw_box},
    };
    const auto grid = unit_grid(17);
    const int dims[] = {1, 2, 4};
    int convex_side = 0, nonconvex_side = 0;

    for (size_t c = 0; c < std::size(configs); ++c) {
        const auto& cfg = configs[c];
        auto f = parse_scalar_function(cfg.fname, Interval::closed(-12.0, 12.0));
        for (int i = 0; i < 100; ++i) {
            Rng rng(split_seed(909 + c, static_cast<std::uint64_t>(i)));
            const int dim = dims[i % 3];
            auto first = sample_in_set(cfg.set, cfg.iv, dim, rng).a;
            auto second = sample_in_set(cfg.set, cfg.iv, dim, rng).a;

            PhiEvaluator phi(f, second, first, cfg.eta, cfg.set);

            // operator side: midpoint form over all grid pairs along the path
            double op_min = 0.0;
            CVector worst_vec;
            double scale = 1.0;
            for (size_t ia = 0; ia < grid.size(); ++ia)
                for (size_t ib = ia + 1; ib < grid.size(); ++ib) {
                    const auto& fa = phi.matrix_at(grid[ia]);
                    const auto& fb = phi.matrix_at(grid[ib]);
                    const auto& fm = phi.matrix_at(0.5 * (grid[ia] + grid[ib]));
                    auto gap = 0.5 * (fa + fb) - fm;
                    auto dec = decompose(gap);
                    scale = std::max(scale, 1.0 + operator_norm(fa));
                    if (dec.eigenvalues.front() < op_min) {
                        op_min = dec.eigenvalues.front();
                        worst_vec.assign(static_cast<size_t>(dim), cdouble(0.0, 0.0));
                        for (int r = 0; r < dim; ++r) worst_vec[static_cast<size_t>(r)] =
                            dec.eigenvectors(r, 0);
                    }
                }
            const double tol = 1e-9 * scale;
            const bool op_ok = op_min >= -tol;

            // quadratic-form side: sampled unit vectors, plus the operator
            // witness when the operator side failed
            std::vector<CVector> xs;
            for (int v = 0; v < 5; ++v) xs.push_back(random_unit_vector(dim, rng));
            if (!op_ok) xs.push_back(worst_vec);
            bool phi_ok = true;
            for (const auto& x : xs) {
                auto r = check_phi_convex(phi, x, grid, 1e-9);
                if (!r.convex) phi_ok = false;
            }

            if (op_ok != phi_ok)
                return fail(std::string("verdicts disagree for ") + cfg.fname + " with " +
                            cfg.eta.description() + " at instance " + std::to_string(i) +
                            " (operator " + (op_ok ? "convex" : "nonconvex") +
                            ", quadratic form " + (phi_ok ? "convex" : "nonconvex") + ")");
            (op_ok ? convex_side : nonconvex_side) += 1;
        }
    }
    return {true, "700 instances agree (" + std::to_string(convex_side) + " convex, " +
                      std::to_string(nonconvex_side) + " nonconvex)"};
}

// ---------------------------------------------------------------------------
// 10. Classical reductions: the two-point midpoint identity and the scalar
// product displays for random convex pairs.
Outcome criterion_10() {
    const QuadratureScheme q;
    auto sq = parse_scalar_function("square", Interval::closed(-2.0, 2.0));
    auto rep = classical_reductions(sq, nullptr, HermitianMatrix::diagonal({0.0}),
                                    HermitianMatrix::diagonal({1.0}), 2, 1, q);
    if (!rep.midpoint_match || rep.midpoint_residual > 1e-12)
        return fail("two-point midpoint identity residual " + fmt(rep.midpoint_residual));

    auto m_rep = classical_reductions(sq, nullptr, HermitianMatrix::diagonal({-1.0, 0.5}),
                                      HermitianMatrix::diagonal({0.25, 1.5}), 2, 1, q);
    if (!m_rep.midpoint_match || m_rep.midpoint_residual > 1e-12)
        return fail("matrix midpoint identity residual " + fmt(m_rep.midpoint_residual));

    auto s0 = HermitianMatrix::diagonal({0.0});
    auto s1 = HermitianMatrix::diagonal({1.0});
    const Interval unit = Interval::closed(0.0, 1.0);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        Rng rng(split_seed(1010, static_cast<std::uint64_t>(i)));
        auto f = (i % 2 == 0) ? lifted_quadratic(rng, unit, false) : convex_pwl(rng);
        auto g = (i % 3 == 0) ? convex_pwl(rng) : lifted_quadratic(rng, unit, false);
        auto red = classical_reductions(f, &g, s0, s1, 2, 1, q);
        if (!red.pachpatte)
            return fail("scalar reduction dropped the product display at instance " +
                        std::to_string(i));
        const auto& p = *red.pachpatte;
        if (p.right.slack < -1e-9 || p.left.slack < -1e-9 || !p.holds)
            return fail("product display slack below -1e-9 at instance " + std::to_string(i));
        worst = std::min(worst, std::min(p.right.slack, p.left.slack));
    }
    return {true, "midpoint identity to 1e-12; 100 convex pairs, worst slack " + fmt(worst)};
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Outcome (*run)();
    };
    const Entry entries[] = {
        {"spectral calculus", criterion_1},
        {"five-term chain", criterion_2},
        {"scalar chain values", criterion_3},
        {"identity-pair chain", criterion_4},
        {"gap ordering", criterion_5},
        {"product bounds", criterion_6},
        {"trapezoid bound", criterion_7},
        {"counterexample search", criterion_8},
        {"convexity duality", criterion_9},
        {"classical reductions", criterion_10},
    };

    int failures = 0;
    for (size_t i = 0; i < std::size(entries); ++i) {
        Outcome out;
        try {
            out = entries[i].run();
        } catch (const std::exception& e) {
            out = fail(std::string("unexpected exception: ") + e.what());
        }
        std::cout << (out.ok ? "[PASS]" : "[FAIL]") << " criterion " << (i < 9 ? " " : "")
                  << i + 1 << " (" << entries[i].name << "): " << out.detail << "\n";
        if (!out.ok) ++failures;
    }
    if (failures) {
        std::cerr << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 10 criteria passed\n";
    return 0;
}
