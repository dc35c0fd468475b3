#include "depolarb/channel.hpp"

#include <cmath>

namespace depolarb {

void DensityMatrix::validate() const {
    if (mat.rows != dim || mat.cols != dim) throw DimMismatch("density matrix: shape != dim");
    if (!herm_check(mat, 1e-12)) throw DomainError("density matrix: not Hermitian");
    if (std::abs(trace(mat) - cdouble(1.0)) > 1e-12) throw DomainError("density matrix: trace != 1");
    auto eig = herm_eig(mat);
    if (eig.eigenvalues.front() < -1e-10) throw DomainError("density matrix: negative eigenvalue");
}

void ChannelParam::validate() const {
    if (dim < 2) throw DomainError("channel: dimension must be >= 2");
    double lo = -1.0 / (static_cast<double>(dim) * dim - 1.0);
    if (!(theta >= lo && theta <= 1.0)) throw DomainError("channel: theta outside complete-positivity range");
}

ComplexMatrix MatrixPolynomial::eval(double theta) const {
    ComplexMatrix r = coeffs.back();
    for (int j = static_cast<int>(coeffs.size()) - 2; j >= 0; --j) r = theta * r + coeffs[j];
    return r;
}

void MatrixPolynomial::validate() const {
    if (coeffs.empty()) throw DomainError("matrix polynomial: no coefficients");
    cdouble total = 0.0;
    for (const auto& c : coeffs) {
        if (c.rows != dim || c.cols != dim) throw DimMismatch("matrix polynomial: coefficient shape");
        if (!herm_check(c, 1e-12)) throw DomainError("matrix polynomial: coefficient not Hermitian");
        total += trace(c);
    }
    if (std::abs(trace(coeffs[0]) - cdouble(1.0)) > 1e-12)
        throw DomainError("matrix polynomial: trace at theta=0 != 1");
    if (std::abs(total - cdouble(1.0)) > 1e-12)
        throw DomainError("matrix polynomial: trace at theta=1 != 1");
}

DensityMatrix depolarize(const DensityMatrix& rho, const ChannelParam& p) {
    if (rho.dim != p.dim) throw DimMismatch("depolarize: state and channel dimension differ");
    p.validate();
    ComplexMatrix out = p.theta * rho.mat;
    double mix = (1.0 - p.theta) / p.dim;
    for (int i = 0; i < rho.dim; ++i) out(i, i) += mix;
    return DensityMatrix{rho.dim, out};
}

MatrixPolynomial output_case_a(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("output_case_a: x outside [0,1]");
    double s = std::sqrt(x * (1.0 - x));
    ComplexMatrix c0(4, 4), c1(4, 4);
    c0(0, 0) = x / 2;
    c0(1, 1) = (1.0 - x) / 2;
    c0(2, 2) = (1.0 - x) / 2;
    c0(3, 3) = x / 2;
    c1(0, 0) = x / 2;
    c1(1, 1) = (1.0 - x) / 2;
    c1(0, 1) = c1(1, 0) = s;
    c1(2, 2) = -(1.0 - x) / 2;
    c1(3, 3) = -x / 2;
    return MatrixPolynomial{4, {c0, c1}};
}

MatrixPolynomial output_case_b(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("output_case_b: x outside [0,1]");
    double s = std::sqrt(x * (1.0 - x));
    ComplexMatrix c0(4, 4), c1(4, 4), c2(4, 4);
    for (int i = 0; i < 4; ++i) c0(i, i) = 0.25;
    c1(0, 0) = -(0.5 - x);
    c1(1, 1) = (0.5 - x);
    c2(0, 0) = 0.25;
    c2(1, 1) = 0.25;
    c2(0, 1) = c2(1, 0) = s;
    c2(2, 2) = -0.25;
    c2(3, 3) = -0.25;
    return MatrixPolynomial{4, {c0, c1, c2}};
}

MixtureFamily output_family_ddim(StrategyKind kind, int d) {
    if (d < 2) throw DomainError("output_family_ddim: d must be >= 2");
    long dd = static_cast<long>(d) * d;
    MixtureFamily f;
    f.d = d;
    switch (kind) {
        case StrategyKind::ent_one:
            // f0 = 1/d^2 + (1-1/d^2) theta, f1 = (1-theta)/d^2
            f.f0 = {rat(1, dd), rat(dd - 1, dd)};
            f.f1 = {rat(1, dd), rat(-1, dd)};
            f.copy_multiplier = 1;
            f.weight_base = dd - 1;
            break;
        case StrategyKind::ent_both:
            // same split with theta^2 in place of theta
            f.f0 = {rat(1, dd), Rational(0), rat(dd - 1, dd)};
            f.f1 = {rat(1, dd), Rational(0), rat(-1, dd)};
            f.copy_multiplier = 1;
            f.weight_base = dd - 1;
            break;
        case StrategyKind::sep:
            // single particle per channel use, two uses per pair
            f.f0 = {rat(1, d), rat(d - 1, d)};
            f.f1 = {rat(1, d), rat(-1, d)};
            f.copy_multiplier = 2;
            f.weight_base = d - 1;
            break;
    }
    return f;
}

}  // namespace depolarb
