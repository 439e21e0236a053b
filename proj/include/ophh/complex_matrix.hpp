#pragma once

#include <complex>
#include <vector>

namespace ophh {

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;

// Dense row-major complex matrix. Plain storage, no algebraic invariants.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cdouble& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cdouble& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<cdouble>& data() const { return a_; }

    ComplexMatrix adjoint() const;
    double frobenius_norm() const;
    double max_abs_entry() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cdouble> a_;
};

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(cdouble s, const ComplexMatrix& x);

CVector matvec(const ComplexMatrix& m, const CVector& x);
cdouble dot(const CVector& x, const CVector& y);  // conjugate-linear in the first argument
double vec_norm(const CVector& x);

}  // namespace ophh
