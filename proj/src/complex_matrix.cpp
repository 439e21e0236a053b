#include "ophh/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace ophh {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cdouble& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs_entry() const {
    double m = 0.0;
    for (const cdouble& v : a_) m = std::max(m, std::abs(v));
    return m;
}

static void check_same_shape(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("matrix shape mismatch");
}

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
    check_same_shape(x, y);
    ComplexMatrix out(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) + y(i, j);
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
    check_same_shape(x, y);
    ComplexMatrix out(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) - y(i, j);
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.cols() != y.rows()) throw std::invalid_argument("matrix product shape mismatch");
    ComplexMatrix out(x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i) {
        for (int k = 0; k < x.cols(); ++k) {
            const cdouble xik = x(i, k);
            if (xik == cdouble{}) continue;
            for (int j = 0; j < y.cols(); ++j) out(i, j) += xik * y(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(cdouble s, const ComplexMatrix& x) {
    ComplexMatrix out(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) out(i, j) = s * x(i, j);
    return out;
}

CVector matvec(const ComplexMatrix& m, const CVector& x) {
    if (static_cast<size_t>(m.cols()) != x.size())
        throw std::invalid_argument("matvec shape mismatch");
    CVector out(static_cast<size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        cdouble s = 0.0;
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * x[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = s;
    }
    return out;
}

cdouble dot(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot shape mismatch");
    cdouble s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double vec_norm(const CVector& x) {
    double s = 0.0;
    for (const cdouble& v : x) s += std::norm(v);
    return std::sqrt(s);
}

}  // namespace ophh
