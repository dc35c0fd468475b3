#include "depolarb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace depolarb {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimMismatch("matrix add: shape mismatch");
    ComplexMatrix r(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimMismatch("matrix sub: shape mismatch");
    ComplexMatrix r(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.cols != y.rows) throw DimMismatch("matrix mul: inner dim mismatch");
    ComplexMatrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            cdouble xik = x(i, k);
            if (xik == cdouble(0.0)) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
        }
    }
    return r;
}

ComplexMatrix operator*(cdouble s, const ComplexMatrix& x) {
    ComplexMatrix r(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = s * x.a[i];
    return r;
}

ComplexMatrix operator*(double s, const ComplexMatrix& x) { return cdouble(s, 0.0) * x; }

ComplexMatrix adjoint(const ComplexMatrix& x) {
    ComplexMatrix r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r(j, i) = std::conj(x(i, j));
    return r;
}

cdouble trace(const ComplexMatrix& x) {
    cdouble t = 0.0;
    int n = std::min(x.rows, x.cols);
    for (int i = 0; i < n; ++i) t += x(i, i);
    return t;
}

double max_abs(const ComplexMatrix& x) {
    double m = 0.0;
    for (const cdouble& v : x.a) m = std::max(m, std::abs(v));
    return m;
}

double frobenius(const ComplexMatrix& x) {
    double s = 0.0;
    for (const cdouble& v : x.a) s += std::norm(v);
    return std::sqrt(s);
}

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix r(x.rows * y.rows, x.cols * y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) {
            cdouble xij = x(i, j);
            if (xij == cdouble(0.0)) continue;
            for (int k = 0; k < y.rows; ++k)
                for (int l = 0; l < y.cols; ++l)
                    r(i * y.rows + k, j * y.cols + l) = xij * y(k, l);
        }
    return r;
}

bool herm_check(const ComplexMatrix& x, double tol) {
    if (x.rows != x.cols) return false;
    for (int i = 0; i < x.rows; ++i)
        for (int j = i; j < x.cols; ++j)
            if (std::abs(x(i, j) - std::conj(x(j, i))) > tol) return false;
    return true;
}

namespace {

double offdiag_frobenius(const ComplexMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace

HermitianEigen herm_eig(const ComplexMatrix& x) {
    if (x.rows != x.cols) throw NotHermitian("herm_eig: matrix not square");
    if (!herm_check(x, 1e-12)) throw NotHermitian("herm_eig: matrix not Hermitian within 1e-12");

    const int n = x.rows;
    ComplexMatrix m(n, n);
    // Symmetrize exactly so rotations preserve Hermiticity bit-for-bit.
    for (int i = 0; i < n; ++i) {
        m(i, i) = std::real(x(i, i));
        for (int j = i + 1; j < n; ++j) {
            cdouble v = 0.5 * (x(i, j) + std::conj(x(j, i)));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double tol = 1e-14 * frobenius(m);
    const int sweep_budget = 100;
    bool converged = false;
    for (int sweep = 0; sweep < sweep_budget; ++sweep) {
        if (offdiag_frobenius(m) <= tol) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                cdouble apq = m(p, q);
                double r = std::abs(apq);
                if (r == 0.0) continue;
                // Factor out the phase, then a real Jacobi rotation zeroes the pivot.
                cdouble e = apq / r;
                double app = std::real(m(p, p));
                double aqq = std::real(m(q, q));
                double tau = (aqq - app) / (2.0 * r);
                double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                        : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                cdouble ec = std::conj(e);

                // m <- u^dag m u with u = [[c, s],[-s*conj(e), c*conj(e)]] in the (p,q) plane
                for (int k = 0; k < n; ++k) {
                    cdouble mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * ec * mkq;
                    m(k, q) = s * mkp + c * ec * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    cdouble mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * e * mqk;
                    m(q, k) = s * mpk + c * e * mqk;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                m(p, p) = std::real(m(p, p));
                m(q, q) = std::real(m(q, q));
                for (int k = 0; k < n; ++k) {
                    cdouble vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * ec * vkq;
                    v(k, q) = s * vkp + c * ec * vkq;
                }
            }
        }
    }
    if (!converged && offdiag_frobenius(m) > tol)
        throw NoConvergence("herm_eig: Jacobi sweeps exhausted");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return std::real(m(i, i)) < std::real(m(j, j)); });

    HermitianEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.eigenvalues[j] = std::real(m(order[j], order[j]));
        for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
    }
    return out;
}

}  // namespace depolarb
