#pragma once

#include <complex>
#include <vector>

#include "depolarb/errors.hpp"

namespace depolarb {

using cdouble = std::complex<double>;

// Dense complex matrix, row-major. Sized for the small Hermitian problems
// in this project (dim <= ~16); nothing here is tuned for large matrices.
struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<cdouble> a;

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    cdouble& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const cdouble& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static ComplexMatrix identity(int n);
    static ComplexMatrix zero(int r, int c) { return ComplexMatrix(r, c); }
};

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(cdouble s, const ComplexMatrix& x);
ComplexMatrix operator*(double s, const ComplexMatrix& x);

ComplexMatrix adjoint(const ComplexMatrix& x);
cdouble trace(const ComplexMatrix& x);
double max_abs(const ComplexMatrix& x);
double frobenius(const ComplexMatrix& x);

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y);

bool herm_check(const ComplexMatrix& x, double tol);

struct HermitianEigen {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns, orthonormal
};

// Cyclic Jacobi diagonalization. Throws NotHermitian if the input fails
// herm_check at 1e-12, NoConvergence past the sweep budget.
HermitianEigen herm_eig(const ComplexMatrix& x);

}  // namespace depolarb
