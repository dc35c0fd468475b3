#include "depolarb/bayes.hpp"

#include <algorithm>
#include <cmath>

namespace depolarb {

RiskMoments risk_moments(const MatrixPolynomial& family, const Prior& prior) {
    int deg = family.degree();
    if (deg > 6) throw DomainError("risk_moments: family degree above practical bound");
    std::vector<double> mom(deg + 3);
    for (int n = 0; n < static_cast<int>(mom.size()); ++n) mom[n] = to_double(prior.moment(n));

    RiskMoments r{ComplexMatrix(family.dim, family.dim), ComplexMatrix(family.dim, family.dim),
                  ComplexMatrix(family.dim, family.dim)};
    ComplexMatrix* w[3] = {&r.w0, &r.w1, &r.w2};
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j <= deg; ++j)
            *w[k] = *w[k] + mom[k + j] * family.coeffs[j];
    return r;
}

ComplexMatrix minimizing_operator(const RiskMoments& m) {
    auto eig = herm_eig(m.w0);
    const ComplexMatrix& v = eig.eigenvectors;
    ComplexMatrix b = adjoint(v) * m.w1 * v;
    int n = m.w0.rows;
    ComplexMatrix t(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double den = eig.eigenvalues[i] + eig.eigenvalues[j];
            if (den <= 1e-12) {
                if (std::abs(b(i, j)) <= 1e-12) continue;  // unconstrained block, leave zero
                throw SingularMomentPair("minimizing_operator: vanishing eigenvalue pair with nonzero coupling");
            }
            t(i, j) = 2.0 * b(i, j) / den;
        }
    }
    ComplexMatrix theta = v * t * adjoint(v);
    return 0.5 * (theta + adjoint(theta));
}

EstimatorPOM optimal_pom(const ComplexMatrix& theta_op, double merge_tol) {
    auto eig = herm_eig(theta_op);
    int n = theta_op.rows;
    const ComplexMatrix& v = eig.eigenvectors;

    EstimatorPOM pom;
    int i = 0;
    while (i < n) {
        double ref = eig.eigenvalues[i];
        int j = i + 1;
        while (j < n && std::abs(eig.eigenvalues[j] - ref) <= merge_tol * std::max(1.0, std::abs(ref)))
            ++j;
        ComplexMatrix proj(n, n);
        double sum = 0.0;
        for (int k = i; k < j; ++k) {
            sum += eig.eigenvalues[k];
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) proj(r, c) += v(r, k) * std::conj(v(c, k));
        }
        pom.elements.push_back({proj, sum / (j - i), j - i});
        i = j;
    }
    std::sort(pom.elements.begin(), pom.elements.end(),
              [](const PomElement& a, const PomElement& b) { return a.guess > b.guess; });
    return pom;
}

double bayes_cost(const RiskMoments& m, const ComplexMatrix& theta_op) {
    return std::real(trace(m.w2 - theta_op * m.w0 * theta_op));
}

OptimalityReport verify_optimality(const MatrixPolynomial& family, const Prior& prior,
                                   const EstimatorPOM& pom, int grid) {
    if (grid < 2) throw DomainError("verify_optimality: grid must be >= 2");
    RiskMoments rm = risk_moments(family, prior);
    auto w_at = [&](double t) { return rm.w2 - (2.0 * t) * rm.w1 + (t * t) * rm.w0; };

    int n = family.dim;
    ComplexMatrix gamma(n, n);
    for (const auto& el : pom.elements) gamma = gamma + el.projector * w_at(el.guess);

    OptimalityReport rep;
    rep.gamma_herm_residual = max_abs(gamma - adjoint(gamma));
    rep.gamma_hermitian = rep.gamma_herm_residual <= 1e-9;
    ComplexMatrix gs = 0.5 * (gamma + adjoint(gamma));

    for (const auto& el : pom.elements)
        rep.cond1_residual = std::max(rep.cond1_residual, max_abs((w_at(el.guess) - gs) * el.projector));
    rep.cond1_pass = rep.cond1_residual <= 1e-9;

    double lo = prior.lower_d, hi = prior.upper_d;
    double min_eig = 0.0;
    bool first = true;
    for (int i = 0; i < grid; ++i) {
        double t = lo + (hi - lo) * i / (grid - 1);
        ComplexMatrix diff = w_at(t) - gs;
        diff = 0.5 * (diff + adjoint(diff));
        auto eig = herm_eig(diff);
        if (first || eig.eigenvalues.front() < min_eig) min_eig = eig.eigenvalues.front();
        first = false;
    }
    rep.cond2_min_eig = min_eig;
    rep.cond2_pass = min_eig >= -1e-9;
    return rep;
}

}  // namespace depolarb
