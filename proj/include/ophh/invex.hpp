#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ophh/hermitian.hpp"
#include "ophh/rng.hpp"

namespace ophh {

enum class SetKind { WholeSpace, TUnionU, VUnionW, SemidefiniteSigned, Custom };

// Domain of an eta map: a set of Hermitian matrices carved into branches by
// Loewner-order conditions. Branch labels drive the eta case tables.
class OperatorSet {
public:
    // All Hermitian matrices of a given dimension; single branch "whole".
    static OperatorSet whole_space();
    // T = {A <= -1} union U = {A >= 1}, closed, classification slack 1e-12.
    static OperatorSet tu_union();
    // V = (-2 < A < 0) union W = (0 < A < 2), open; membership requires
    // eigenvalue clearance `delta` from the order bounds.
    static OperatorSet vw_union(double delta = 1e-6);
    // psd = {A >= 0} union nsd = {A <= 0}; the zero matrix belongs to both.
    static OperatorSet semidefinite_signed();
    // classify returns a branch label or nullopt for non-members.
    static OperatorSet custom(std::function<std::optional<std::string>(const HermitianMatrix&)> classify,
                              std::string description, bool open);

    SetKind kind() const { return kind_; }
    const std::string& description() const { return description_; }
    bool is_open() const { return open_; }
    double margin() const { return margin_; }

    bool contains(const HermitianMatrix& a) const;
    // Branch label of a member; throws MembershipError for non-members. For
    // SemidefiniteSigned the zero matrix reports "psd" here; eta evaluation uses
    // sign_flags instead, which keeps both memberships.
    std::string classify(const HermitianMatrix& a) const;
    std::optional<std::string> try_classify(const HermitianMatrix& a) const;

    struct SignFlags {
        bool psd = false;
        bool nsd = false;
    };
    // Semidefinite memberships with the classification slack. Meaningful for any
    // set kind but only used by the SemidefiniteSigned case table.
    SignFlags sign_flags(const HermitianMatrix& a) const;

    // Eigenvalue ranges, one per branch, that intersect iv. Sampling draws
    // spectra from these; empty intersections are dropped.
    std::vector<std::pair<std::string, Interval>> sample_branches(const Interval& iv) const;

private:
    OperatorSet() = default;
    SetKind kind_ = SetKind::WholeSpace;
    std::string description_;
    bool open_ = false;
    double margin_ = 1e-12;
    std::function<std::optional<std::string>(const HermitianMatrix&)> custom_classify_;
};

enum class EtaKind { Difference, Eta1, Eta2, Eta3, Custom };

// Direction map eta(first, second) used to build paths second + t*eta(first, second).
class EtaMap {
public:
    static EtaMap difference();  // eta(X, Y) = X - Y on any set
    static EtaMap eta1();        // on T union U: same branch X - Y; (T,U) -> 1 - Y; (U,T) -> -1 - Y
    static EtaMap eta2();        // on V union W: same branch X - Y; across branches 0
    static EtaMap eta3();        // on signed semidefinite: same sign X - Y; mixed Y - X
    static EtaMap custom(std::function<HermitianMatrix(const HermitianMatrix&, const HermitianMatrix&)> fn,
                         std::string description);

    EtaKind kind() const { return kind_; }
    const std::string& description() const { return description_; }

private:
    EtaMap() = default;
    EtaKind kind_ = EtaKind::Difference;
    std::string description_;
    std::function<HermitianMatrix(const HermitianMatrix&, const HermitianMatrix&)> custom_fn_;
    friend HermitianMatrix eval_eta(const EtaMap&, const HermitianMatrix&, const HermitianMatrix&,
                                    const OperatorSet&);
};

// eta(first, second) per the map's case table. Throws MembershipError when either
// argument is outside the set, std::invalid_argument on dimension mismatch.
HermitianMatrix eval_eta(const EtaMap& eta, const HermitianMatrix& first,
                         const HermitianMatrix& second, const OperatorSet& s);

// m equally spaced points of [0, 1] including both endpoints; m >= 2.
std::vector<double> unit_grid(int m);

// base + t * eta(toward, base); t must lie in [0, 1].
HermitianMatrix path_point(const HermitianMatrix& base, const HermitianMatrix& toward,
                           const EtaMap& eta, const OperatorSet& s, double t);

// Path base + t*eta(toward, base) with the direction evaluated once. point(0)
// returns base's entries unchanged.
struct EtaPath {
    HermitianMatrix base;
    HermitianMatrix delta;

    static EtaPath make(const HermitianMatrix& base, const HermitianMatrix& toward,
                        const EtaMap& eta, const OperatorSet& s);
    HermitianMatrix point(double t) const { return axpy(base, t, delta); }
    HermitianMatrix endpoint() const { return point(1.0); }
};

// Residuals of the two defining identities plus the two-parameter consequence
//   eta(second + t2*E, second + t1*E) = (t2 - t1) * E,  E = eta(first, second),
// maximized over the grid. Throws MembershipError when a path point leaves the set.
struct ConditionCReport {
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};
ConditionCReport check_condition_c(const EtaMap& eta, const OperatorSet& s,
                                   const HermitianMatrix& first, const HermitianMatrix& second,
                                   const std::vector<double>& t_grid, double tol = 1e-10);

// Invexity: second + t*eta(first, second) must stay in the set for every pair and t.
struct ClosureViolation {
    size_t pair_index = 0;
    double t = 0.0;
};
struct ClosureReport {
    bool ok = true;
    std::optional<ClosureViolation> violation;
};
ClosureReport check_invex_closure(const EtaMap& eta, const OperatorSet& s,
                                  const std::vector<std::pair<HermitianMatrix, HermitianMatrix>>& pairs,
                                  const std::vector<double>& t_grid);

// Random Hermitian matrix with spectrum in iv: Haar eigenvectors, eigenvalues
// uniform in iv pulled in from the endpoints (1e-9 relative guard on closed ends,
// 1e-6 margin on open ends) so rounding cannot push the spectrum outside.
HermitianMatrix random_hermitian_in(const Interval& iv, int n, Rng& rng);
HermitianMatrix random_hermitian_in(const Interval& iv, int n, std::uint64_t seed);

// Member of s with spectrum in iv, branch chosen uniformly among the nonempty
// ones. branch_shrink < 1 scales SemidefiniteSigned branch ranges toward zero so
// mixed-sign paths stay inside iv.
struct SampledOperator {
    HermitianMatrix a;
    std::string branch;
};
// retries, when given, accumulates the number of rejected draws.
SampledOperator sample_in_set(const OperatorSet& s, const Interval& iv, int n, Rng& rng,
                              double branch_shrink = 1.0, int* retries = nullptr);

// Deterministic cross-branch pairs of scaled identities: three eigenvalue levels
// per branch, every ordered branch pair. Empty for single-branch sets. These hit
// the eta case-table corners that random sampling reaches only slowly.
std::vector<std::pair<HermitianMatrix, HermitianMatrix>> sweep_pairs(const OperatorSet& s,
                                                                     const Interval& iv,
                                                                     const EtaMap& eta, int n);

// Shrink factor for SemidefiniteSigned spectra under eta3: mixed-sign paths reach
// (1+t)*Y - t*X, so drawing spectra from the inner third of iv keeps every path
// point inside iv.
double branch_shrink_for(const EtaMap& eta, const OperatorSet& s);

}  // namespace ophh
