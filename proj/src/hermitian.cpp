#include "ophh/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ophh/errors.hpp"

namespace ophh {

std::string Interval::str() const {
    std::ostringstream os;
    os << (open_lo ? '(' : '[') << lo << ", " << hi << (open_hi ? ')' : ']');
    return os.str();
}

namespace {

// Writes the exactly-Hermitian version of m: upper triangle averaged with the
// conjugate of the lower, mirrored back, diagonal forced real.
ComplexMatrix hermitize(const ComplexMatrix& m) {
    const int n = m.rows();
    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        out(i, i) = m(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            const cdouble v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return out;
}

void check_square_nonempty(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("empty matrix");
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
}

}  // namespace

HermitianMatrix HermitianMatrix::from(const ComplexMatrix& m) {
    check_square_nonempty(m);
    const double tol = 1e-12 * (1.0 + m.max_abs_entry());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = i; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) {
                std::ostringstream os;
                os << "matrix is not Hermitian at (" << i << ", " << j << ")";
                throw std::invalid_argument(os.str());
            }
        }
    }
    return HermitianMatrix(hermitize(m));
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
    check_square_nonempty(m);
    return HermitianMatrix(hermitize(m));
}

HermitianMatrix HermitianMatrix::zero(int n) {
    if (n <= 0) throw std::invalid_argument("dimension must be positive");
    return HermitianMatrix(ComplexMatrix(n, n));
}

HermitianMatrix HermitianMatrix::identity(int n) {
    if (n <= 0) throw std::invalid_argument("dimension must be positive");
    return HermitianMatrix(ComplexMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::scaled_identity(int n, double s) {
    if (n <= 0) throw std::invalid_argument("dimension must be positive");
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = s;
    return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
    if (d.empty()) throw std::invalid_argument("dimension must be positive");
    const int n = static_cast<int>(d.size());
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[static_cast<size_t>(i)];
    return HermitianMatrix(std::move(m));
}

HermitianMatrix operator+(const HermitianMatrix& x, const HermitianMatrix& y) {
    return axpy(x, 1.0, y);
}

HermitianMatrix operator-(const HermitianMatrix& x, const HermitianMatrix& y) {
    return axpy(x, -1.0, y);
}

HermitianMatrix operator*(double s, const HermitianMatrix& x) {
    const int n = x.dim();
    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        out(i, i) = s * x(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            const cdouble v = s * x(i, j);
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return HermitianMatrix::symmetrized(out);
}

HermitianMatrix axpy(const HermitianMatrix& x, double t, const HermitianMatrix& d) {
    if (x.dim() != d.dim()) throw std::invalid_argument("dimension mismatch");
    const int n = x.dim();
    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        out(i, i) = x(i, i).real() + t * d(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            const cdouble v = x(i, j) + t * d(i, j);
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return HermitianMatrix::symmetrized(out);
}

double quadratic_form(const HermitianMatrix& m, const CVector& x) {
    if (static_cast<size_t>(m.dim()) != x.size())
        throw std::invalid_argument("quadratic form shape mismatch");
    // Real by symmetry: accumulate diagonal terms plus twice the real part of the
    // strict upper triangle contribution.
    const int n = m.dim();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        s += m(i, i).real() * std::norm(x[static_cast<size_t>(i)]);
        for (int j = i + 1; j < n; ++j) {
            s += 2.0 * std::real(std::conj(x[static_cast<size_t>(i)]) * m(i, j) *
                                 x[static_cast<size_t>(j)]);
        }
    }
    return s;
}

namespace {

double offdiag_norm(const ComplexMatrix& w) {
    double s = 0.0;
    const int n = w.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(w(i, j));
    return std::sqrt(s);
}

// One plane rotation zeroing the (p, q) pivot of the Hermitian working matrix w,
// accumulating the same column mix into v.
void jacobi_rotate(ComplexMatrix& w, ComplexMatrix& v, int p, int q) {
    const cdouble beta = w(p, q);
    const double ab = std::abs(beta);
    const double alpha = w(p, p).real();
    const double gamma = w(q, q).real();

    const cdouble phase = beta / ab;  // e^{i phi}
    const double tau = (alpha - gamma) / (2.0 * ab);
    const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const cdouble sp = s * phase;             // s e^{i phi}
    const cdouble spc = s * std::conj(phase); // s e^{-i phi}

    const int n = w.rows();
    for (int k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const cdouble wkp = w(k, p);
        const cdouble wkq = w(k, q);
        const cdouble np = c * wkp + spc * wkq;
        const cdouble nq = -sp * wkp + c * wkq;
        w(k, p) = np;
        w(p, k) = std::conj(np);
        w(k, q) = nq;
        w(q, k) = std::conj(nq);
    }
    w(p, p) = alpha + t * ab;
    w(q, q) = gamma - t * ab;
    w(p, q) = 0.0;
    w(q, p) = 0.0;

    for (int k = 0; k < n; ++k) {
        const cdouble vkp = v(k, p);
        const cdouble vkq = v(k, q);
        v(k, p) = c * vkp + spc * vkq;
        v(k, q) = -sp * vkp + c * vkq;
    }
}

}  // namespace

SpectralDecomposition decompose(const HermitianMatrix& a) {
    const int n = a.dim();
    ComplexMatrix w = a.mat();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double fro = w.frobenius_norm();
    const double thresh = 1e-13 * fro;
    // Rotations on pivots this small cannot move the off-diagonal mass past the
    // threshold; skipping them keeps sweeps cheap near convergence.
    const double pivot_cutoff = thresh / (2.0 * n);

    if (fro > 0.0) {
        bool converged = false;
        for (int sweep = 0; sweep < 100; ++sweep) {
            if (offdiag_norm(w) <= thresh) {
                converged = true;
                break;
            }
            for (int p = 0; p < n - 1; ++p)
                for (int q = p + 1; q < n; ++q)
                    if (std::abs(w(p, q)) > pivot_cutoff) jacobi_rotate(w, v, p, q);
        }
        if (!converged && offdiag_norm(w) > thresh)
            throw NonConvergenceError("eigensolver did not converge within 100 sweeps");
    }

    SpectralDecomposition out;
    out.eigenvalues.resize(static_cast<size_t>(n));
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return w(i, i).real() < w(j, j).real(); });

    out.eigenvectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<size_t>(j)];
        out.eigenvalues[static_cast<size_t>(j)] = w(src, src).real();
        for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, src);
    }
    return out;
}

HermitianMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a) {
    const SpectralDecomposition d = decompose(a);
    const int n = a.dim();
    std::vector<double> vals(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double lam = d.eigenvalues[static_cast<size_t>(i)];
        const double slack = 1e-12 * (1.0 + std::abs(lam));
        if (!f.domain.contains(lam, slack)) {
            std::ostringstream os;
            os << "eigenvalue " << lam << " outside domain " << f.domain.str() << " of "
               << f.name;
            throw SpectrumDomainError(os.str(), lam);
        }
        const double fv = f.rule(lam);
        if (!std::isfinite(fv)) {
            std::ostringstream os;
            os << f.name << " is not finite at eigenvalue " << lam;
            throw SpectrumDomainError(os.str(), lam);
        }
        vals[static_cast<size_t>(i)] = fv;
    }
    // V diag(vals) V^H via column scaling then product with V^H.
    ComplexMatrix scaled = d.eigenvectors;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) scaled(i, j) *= vals[static_cast<size_t>(j)];
    return HermitianMatrix::symmetrized(scaled * d.eigenvectors.adjoint());
}

double operator_norm(const HermitianMatrix& a) {
    const SpectralDecomposition d = decompose(a);
    return std::max(std::abs(d.eigenvalues.front()), std::abs(d.eigenvalues.back()));
}

LoewnerVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b,
                           double scale_tol) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    const double tol = scale_tol * (1.0 + operator_norm(a) + operator_norm(b));
    return loewner_leq_abs(a, b, tol);
}

LoewnerVerdict loewner_leq_abs(const HermitianMatrix& a, const HermitianMatrix& b,
                               double abs_tol) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    const SpectralDecomposition d = decompose(b - a);
    LoewnerVerdict v;
    v.min_eigenvalue = d.eigenvalues.front();
    v.tolerance = abs_tol;
    v.holds = v.min_eigenvalue >= -abs_tol;
    return v;
}

bool spectrum_in(const HermitianMatrix& a, const Interval& iv, double margin) {
    if (margin < 0.0) throw std::invalid_argument("margin must be nonnegative");
    const SpectralDecomposition d = decompose(a);
    for (double lam : d.eigenvalues) {
        const bool lo_ok = iv.open_lo ? (lam > iv.lo + margin) : (lam >= iv.lo);
        const bool hi_ok = iv.open_hi ? (lam < iv.hi - margin) : (lam <= iv.hi);
        if (!lo_ok || !hi_ok) return false;
    }
    return true;
}

}  // namespace ophh
