#include "ophh/invex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ophh/errors.hpp"

namespace ophh {

namespace {

constexpr double kClassifySlack = 1e-12;

struct SpectrumRange {
    double lo;
    double hi;
};

SpectrumRange spectrum_range(const HermitianMatrix& a) {
    const SpectralDecomposition d = decompose(a);
    return {d.eigenvalues.front(), d.eigenvalues.back()};
}

}  // namespace

OperatorSet OperatorSet::whole_space() {
    OperatorSet s;
    s.kind_ = SetKind::WholeSpace;
    s.description_ = "all Hermitian matrices";
    s.open_ = true;
    return s;
}

OperatorSet OperatorSet::tu_union() {
    OperatorSet s;
    s.kind_ = SetKind::TUnionU;
    s.description_ = "T = {A <= -1} union U = {A >= 1}";
    s.open_ = false;
    s.margin_ = kClassifySlack;
    return s;
}

OperatorSet OperatorSet::vw_union(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("membership margin must be positive");
    OperatorSet s;
    s.kind_ = SetKind::VUnionW;
    s.description_ = "V = (-2, 0) union W = (0, 2) as open order intervals";
    s.open_ = true;
    s.margin_ = delta;
    return s;
}

OperatorSet OperatorSet::semidefinite_signed() {
    OperatorSet s;
    s.kind_ = SetKind::SemidefiniteSigned;
    s.description_ = "positive or negative semidefinite matrices";
    s.open_ = false;
    s.margin_ = kClassifySlack;
    return s;
}

OperatorSet OperatorSet::custom(
    std::function<std::optional<std::string>(const HermitianMatrix&)> classify,
    std::string description, bool open) {
    if (!classify) throw std::invalid_argument("custom set needs a classifier");
    OperatorSet s;
    s.kind_ = SetKind::Custom;
    s.description_ = std::move(description);
    s.open_ = open;
    s.custom_classify_ = std::move(classify);
    return s;
}

std::optional<std::string> OperatorSet::try_classify(const HermitianMatrix& a) const {
    switch (kind_) {
        case SetKind::WholeSpace:
            return "whole";
        case SetKind::TUnionU: {
            const SpectrumRange r = spectrum_range(a);
            if (r.hi <= -1.0 + margin_) return "T";
            if (r.lo >= 1.0 - margin_) return "U";
            return std::nullopt;
        }
        case SetKind::VUnionW: {
            const SpectrumRange r = spectrum_range(a);
            if (r.lo >= -2.0 + margin_ && r.hi <= -margin_) return "V";
            if (r.lo >= margin_ && r.hi <= 2.0 - margin_) return "W";
            return std::nullopt;
        }
        case SetKind::SemidefiniteSigned: {
            const SignFlags f = sign_flags(a);
            if (f.psd) return "psd";
            if (f.nsd) return "nsd";
            return std::nullopt;
        }
        case SetKind::Custom:
            return custom_classify_(a);
    }
    return std::nullopt;
}

bool OperatorSet::contains(const HermitianMatrix& a) const {
    return try_classify(a).has_value();
}

std::string OperatorSet::classify(const HermitianMatrix& a) const {
    if (auto b = try_classify(a)) return *b;
    throw MembershipError("matrix is not a member of " + description_);
}

OperatorSet::SignFlags OperatorSet::sign_flags(const HermitianMatrix& a) const {
    const SpectrumRange r = spectrum_range(a);
    SignFlags f;
    f.psd = r.lo >= -kClassifySlack;
    f.nsd = r.hi <= kClassifySlack;
    return f;
}

namespace {

// Intersection of iv with a branch's eigenvalue range, tracking endpoint openness.
std::optional<Interval> intersect_branch(const Interval& iv, double blo, double bhi,
                                         bool open_blo, bool open_bhi) {
    double lo = iv.lo;
    bool olo = iv.open_lo;
    if (blo > lo) {
        lo = blo;
        olo = open_blo;
    } else if (blo == lo) {
        olo = olo || open_blo;
    }
    double hi = iv.hi;
    bool ohi = iv.open_hi;
    if (bhi < hi) {
        hi = bhi;
        ohi = open_bhi;
    } else if (bhi == hi) {
        ohi = ohi || open_bhi;
    }
    if (lo > hi) return std::nullopt;
    if (lo == hi && (olo || ohi)) return std::nullopt;
    return Interval::make(lo, hi, olo, ohi);
}

}  // namespace

std::vector<std::pair<std::string, Interval>> OperatorSet::sample_branches(const Interval& iv) const {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::string, Interval>> out;
    auto push = [&](const char* label, double blo, double bhi, bool olo, bool ohi) {
        if (auto r = intersect_branch(iv, blo, bhi, olo, ohi)) out.emplace_back(label, *r);
    };
    switch (kind_) {
        case SetKind::WholeSpace:
            push("whole", -inf, inf, false, false);
            break;
        case SetKind::TUnionU:
            push("T", -inf, -1.0, false, false);
            push("U", 1.0, inf, false, false);
            break;
        case SetKind::VUnionW:
            push("V", -2.0, 0.0, true, true);
            push("W", 0.0, 2.0, true, true);
            break;
        case SetKind::SemidefiniteSigned:
            push("nsd", -inf, 0.0, false, false);
            push("psd", 0.0, inf, false, false);
            break;
        case SetKind::Custom:
            push("custom", -inf, inf, false, false);
            break;
    }
    return out;
}

EtaMap EtaMap::difference() {
    EtaMap e;
    e.kind_ = EtaKind::Difference;
    e.description_ = "difference";
    return e;
}

EtaMap EtaMap::eta1() {
    EtaMap e;
    e.kind_ = EtaKind::Eta1;
    e.description_ = "eta1";
    return e;
}

EtaMap EtaMap::eta2() {
    EtaMap e;
    e.kind_ = EtaKind::Eta2;
    e.description_ = "eta2";
    return e;
}

EtaMap EtaMap::eta3() {
    EtaMap e;
    e.kind_ = EtaKind::Eta3;
    e.description_ = "eta3";
    return e;
}

EtaMap EtaMap::custom(std::function<HermitianMatrix(const HermitianMatrix&, const HermitianMatrix&)> fn,
                      std::string description) {
    if (!fn) throw std::invalid_argument("custom eta needs a rule");
    EtaMap e;
    e.kind_ = EtaKind::Custom;
    e.description_ = std::move(description);
    e.custom_fn_ = std::move(fn);
    return e;
}

HermitianMatrix eval_eta(const EtaMap& eta, const HermitianMatrix& first,
                         const HermitianMatrix& second, const OperatorSet& s) {
    if (first.dim() != second.dim()) throw std::invalid_argument("dimension mismatch");
    const int n = first.dim();
    switch (eta.kind()) {
        case EtaKind::Difference:
            (void)s.classify(first);
            (void)s.classify(second);
            return first - second;
        case EtaKind::Eta1: {
            if (s.kind() != SetKind::TUnionU)
                throw MembershipError("eta1 is defined on the T union U set only");
            const std::string bf = s.classify(first);
            const std::string bs = s.classify(second);
            if (bf == bs) return first - second;
            if (bf == "T")  // second in U
                return HermitianMatrix::identity(n) - second;
            return HermitianMatrix::scaled_identity(n, -1.0) - second;
        }
        case EtaKind::Eta2: {
            if (s.kind() != SetKind::VUnionW)
                throw MembershipError("eta2 is defined on the V union W set only");
            const std::string bf = s.classify(first);
            const std::string bs = s.classify(second);
            if (bf == bs) return first - second;
            return HermitianMatrix::zero(n);
        }
        case EtaKind::Eta3: {
            if (s.kind() != SetKind::SemidefiniteSigned)
                throw MembershipError("eta3 is defined on the signed semidefinite set only");
            const OperatorSet::SignFlags ff = s.sign_flags(first);
            const OperatorSet::SignFlags fs = s.sign_flags(second);
            if (!ff.psd && !ff.nsd) throw MembershipError("first argument is indefinite");
            if (!fs.psd && !fs.nsd) throw MembershipError("second argument is indefinite");
            const bool same_sign = (ff.psd && fs.psd) || (ff.nsd && fs.nsd);
            if (same_sign) return first - second;
            return second - first;
        }
        case EtaKind::Custom:
            (void)s.classify(first);
            (void)s.classify(second);
            return eta.custom_fn_(first, second);
    }
    throw std::logic_error("unreachable eta kind");
}

std::vector<double> unit_grid(int m) {
    if (m < 2) throw std::invalid_argument("grid needs at least two points");
    std::vector<double> g(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) g[static_cast<size_t>(i)] = static_cast<double>(i) / (m - 1);
    return g;
}

HermitianMatrix path_point(const HermitianMatrix& base, const HermitianMatrix& toward,
                           const EtaMap& eta, const OperatorSet& s, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("path parameter outside [0, 1]");
    return axpy(base, t, eval_eta(eta, toward, base, s));
}

EtaPath EtaPath::make(const HermitianMatrix& base, const HermitianMatrix& toward,
                      const EtaMap& eta, const OperatorSet& s) {
    return EtaPath{base, eval_eta(eta, toward, base, s)};
}

ConditionCReport check_condition_c(const EtaMap& eta, const OperatorSet& s,
                                   const HermitianMatrix& first, const HermitianMatrix& second,
                                   const std::vector<double>& t_grid, double tol) {
    const HermitianMatrix e = eval_eta(eta, first, second, s);
    const double abs_tol = tol * (1.0 + operator_norm(e));

    std::vector<HermitianMatrix> points;
    points.reserve(t_grid.size());
    for (double t : t_grid) {
        if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("grid point outside [0, 1]");
        HermitianMatrix p = axpy(second, t, e);
        if (!s.contains(p)) {
            std::ostringstream os;
            os << "path point at t = " << t << " leaves " << s.description();
            throw MembershipError(os.str(), t);
        }
        points.push_back(std::move(p));
    }

    double worst = 0.0;
    for (size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        // eta(y, y + t e) should equal -t e.
        const double r1 = operator_norm(axpy(eval_eta(eta, second, points[i], s), t, e));
        // eta(x, y + t e) should equal (1 - t) e.
        const double r2 =
            operator_norm(axpy(eval_eta(eta, first, points[i], s), -(1.0 - t), e));
        worst = std::max({worst, r1, r2});
    }
    for (size_t i1 = 0; i1 < t_grid.size(); ++i1) {
        for (size_t i2 = 0; i2 < t_grid.size(); ++i2) {
            // eta between two path points should equal (t2 - t1) e.
            const double dt = t_grid[i2] - t_grid[i1];
            const double r3 =
                operator_norm(axpy(eval_eta(eta, points[i2], points[i1], s), -dt, e));
            worst = std::max(worst, r3);
        }
    }

    ConditionCReport rep;
    rep.max_residual = worst;
    rep.tolerance = abs_tol;
    rep.pass = worst <= abs_tol;
    return rep;
}

ClosureReport check_invex_closure(const EtaMap& eta, const OperatorSet& s,
                                  const std::vector<std::pair<HermitianMatrix, HermitianMatrix>>& pairs,
                                  const std::vector<double>& t_grid) {
    for (size_t idx = 0; idx < pairs.size(); ++idx) {
        const HermitianMatrix e = eval_eta(eta, pairs[idx].first, pairs[idx].second, s);
        for (double t : t_grid) {
            if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("grid point outside [0, 1]");
            if (!s.contains(axpy(pairs[idx].second, t, e)))
                return ClosureReport{false, ClosureViolation{idx, t}};
        }
    }
    return ClosureReport{true, std::nullopt};
}

HermitianMatrix random_hermitian_in(const Interval& iv, int n, Rng& rng) {
    if (n <= 0) throw std::invalid_argument("dimension must be positive");
    if (iv.lo == iv.hi && !iv.open_lo && !iv.open_hi)
        return HermitianMatrix::scaled_identity(n, iv.lo);
    const double lo =
        iv.open_lo ? iv.lo + 1e-6 : iv.lo + 1e-9 * (1.0 + std::abs(iv.lo));
    const double hi =
        iv.open_hi ? iv.hi - 1e-6 : iv.hi - 1e-9 * (1.0 + std::abs(iv.hi));
    if (!(lo < hi)) throw ConfigError("interval " + iv.str() + " is too narrow to sample");

    std::vector<double> lam(static_cast<size_t>(n));
    for (auto& v : lam) v = rng.uniform(lo, hi);
    const ComplexMatrix u = haar_unitary(n, rng);
    ComplexMatrix scaled = u;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) scaled(i, j) *= lam[static_cast<size_t>(j)];
    return HermitianMatrix::symmetrized(scaled * u.adjoint());
}

HermitianMatrix random_hermitian_in(const Interval& iv, int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_hermitian_in(iv, n, rng);
}

namespace {

Interval shrink_toward_zero(const Interval& iv, double shrink) {
    if (shrink >= 1.0) return iv;
    double lo = iv.lo;
    double hi = iv.hi;
    if (lo < 0.0 && hi <= 0.0) lo *= shrink;
    else if (lo >= 0.0 && hi > 0.0) hi *= shrink;
    return Interval::make(lo, hi, iv.open_lo, iv.open_hi);
}

}  // namespace

double branch_shrink_for(const EtaMap& eta, const OperatorSet& s) {
    if (eta.kind() == EtaKind::Eta3 && s.kind() == SetKind::SemidefiniteSigned) return 1.0 / 3.0;
    return 1.0;
}

SampledOperator sample_in_set(const OperatorSet& s, const Interval& iv, int n, Rng& rng,
                              double branch_shrink, int* retries) {
    auto branches = s.sample_branches(iv);
    if (s.kind() == SetKind::SemidefiniteSigned && branch_shrink < 1.0)
        for (auto& b : branches) b.second = shrink_toward_zero(b.second, branch_shrink);
    if (branches.empty())
        throw ConfigError("interval " + iv.str() + " does not meet " + s.description());

    for (int attempt = 0; attempt < 16; ++attempt) {
        const size_t pick =
            branches.size() == 1
                ? 0
                : std::min(branches.size() - 1,
                           static_cast<size_t>(rng.uniform01() * branches.size()));
        HermitianMatrix a = random_hermitian_in(branches[pick].second, n, rng);
        if (s.contains(a)) return SampledOperator{std::move(a), branches[pick].first};
        if (retries) ++*retries;
    }
    throw ConfigError("could not sample a member of " + s.description() + " with spectrum in " +
                      iv.str());
}

std::vector<std::pair<HermitianMatrix, HermitianMatrix>> sweep_pairs(const OperatorSet& s,
                                                                     const Interval& iv,
                                                                     const EtaMap& eta, int n) {
    auto branches = s.sample_branches(iv);
    const double shrink = branch_shrink_for(eta, s);
    if (s.kind() == SetKind::SemidefiniteSigned && shrink < 1.0)
        for (auto& b : branches) b.second = shrink_toward_zero(b.second, shrink);

    std::vector<std::pair<HermitianMatrix, HermitianMatrix>> out;
    if (branches.size() < 2) return out;

    auto levels = [](const Interval& b) {
        const double pad_lo = b.open_lo ? 1e-6 : 0.0;
        const double pad_hi = b.open_hi ? 1e-6 : 0.0;
        return std::vector<double>{b.lo + pad_lo, b.midpoint(), b.hi - pad_hi};
    };
    for (size_t i = 0; i < branches.size(); ++i) {
        for (size_t j = 0; j < branches.size(); ++j) {
            if (i == j) continue;
            for (double li : levels(branches[i].second)) {
                for (double lj : levels(branches[j].second)) {
                    out.emplace_back(HermitianMatrix::scaled_identity(n, li),
                                     HermitianMatrix::scaled_identity(n, lj));
                }
            }
        }
    }
    return out;
}

}  // namespace ophh
