#pragma once

#include <vector>

#include "ophh/complex_matrix.hpp"
#include "ophh/interval.hpp"
#include "ophh/scalar_function.hpp"

namespace ophh {

// Hermitian matrix with the symmetry enforced structurally: every constructor and
// arithmetic operator writes the upper triangle and mirrors it, so stored entries
// satisfy a_ij == conj(a_ji) exactly and the diagonal is exactly real.
class HermitianMatrix {
public:
    // Placeholder value (1 x 1 zero) so report structs can default-construct.
    HermitianMatrix() : mat_(1, 1) {}

    // Validates conjugate symmetry of `m` within 1e-12 * (1 + max |entry|), then
    // symmetrizes exactly. Throws std::invalid_argument otherwise or when m is
    // empty or non-square.
    static HermitianMatrix from(const ComplexMatrix& m);

    // Symmetrizes (m + m^H)/2 without validating. For internal results that are
    // Hermitian by construction up to rounding.
    static HermitianMatrix symmetrized(const ComplexMatrix& m);

    static HermitianMatrix zero(int n);
    static HermitianMatrix identity(int n);
    static HermitianMatrix scaled_identity(int n, double s);
    static HermitianMatrix diagonal(const std::vector<double>& d);

    int dim() const { return mat_.rows(); }
    const ComplexMatrix& mat() const { return mat_; }
    cdouble operator()(int i, int j) const { return mat_(i, j); }

    double frobenius_norm() const { return mat_.frobenius_norm(); }
    double max_abs_entry() const { return mat_.max_abs_entry(); }

private:
    explicit HermitianMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
    ComplexMatrix mat_;
};

HermitianMatrix operator+(const HermitianMatrix& x, const HermitianMatrix& y);
HermitianMatrix operator-(const HermitianMatrix& x, const HermitianMatrix& y);
HermitianMatrix operator*(double s, const HermitianMatrix& x);

// x + t * d with the upper triangle computed once and mirrored; t = 0 returns x's
// entries unchanged.
HermitianMatrix axpy(const HermitianMatrix& x, double t, const HermitianMatrix& d);

// Re <x, M x> for unit or general x.
double quadratic_form(const HermitianMatrix& m, const CVector& x);

// Eigenvalues ascending; eigenvectors[:, i] is the unit eigenvector of eigenvalues[i],
// so A = V diag(lambda) V^H.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

// Cyclic Jacobi for complex Hermitian matrices. Rotations zero one off-diagonal
// pivot at a time; convergence when the off-diagonal Frobenius mass falls below
// 1e-13 * ||A||_F. Throws NonConvergenceError after 100 sweeps.
SpectralDecomposition decompose(const HermitianMatrix& a);

// f(A) = V diag(f(lambda_i)) V^H. Every eigenvalue must lie in f's domain
// (closed endpoints get 1e-12 * (1 + |lambda|) slack); throws SpectrumDomainError
// naming the offending eigenvalue otherwise.
HermitianMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a);

double operator_norm(const HermitianMatrix& a);

// Outcome of an ordered comparison a <= b in the Loewner order.
struct LoewnerVerdict {
    double min_eigenvalue = 0.0;  // lambda_min(b - a); negative part is the violation depth
    double tolerance = 0.0;
    bool holds = false;

    double margin() const { return min_eigenvalue + tolerance; }
};

// a <= b iff lambda_min(b - a) >= -scale_tol * (1 + ||a|| + ||b||).
LoewnerVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b,
                           double scale_tol = 1e-9);

// Same comparison against a precomputed absolute tolerance. Used where a family of
// comparisons must share one tolerance scale.
LoewnerVerdict loewner_leq_abs(const HermitianMatrix& a, const HermitianMatrix& b,
                               double abs_tol);

// True when every eigenvalue of a lies in the interval; open endpoints require
// strict clearance beyond `margin`. Throws std::invalid_argument for margin < 0.
bool spectrum_in(const HermitianMatrix& a, const Interval& iv, double margin = 0.0);

}  // namespace ophh
