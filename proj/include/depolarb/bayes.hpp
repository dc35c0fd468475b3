#pragma once

#include <vector>

#include "depolarb/channel.hpp"
#include "depolarb/linalg.hpp"
#include "depolarb/prior.hpp"

namespace depolarb {

// Moments of the risk operator: W(theta) = w2 - 2 theta w1 + theta^2 w0.
struct RiskMoments {
    ComplexMatrix w0;
    ComplexMatrix w1;
    ComplexMatrix w2;
};

struct PomElement {
    ComplexMatrix projector;
    double guess = 0.0;
    int rank = 1;
};

struct EstimatorPOM {
    std::vector<PomElement> elements;  // sorted by guess, descending
};

// w_k = z sum_j C_j (up^(k+j+1) - lo^(k+j+1))/(k+j+1); the scalar moments are
// exact rationals, converted to double once.
RiskMoments risk_moments(const MatrixPolynomial& family, const Prior& prior);

// Hermitian solution of Theta w0 + w0 Theta = 2 w1 via the spectral formula
// in the w0 eigenbasis. A vanishing eigenvalue-pair denominator is dropped
// when the coupled w1 element also vanishes (the equation leaves that block
// free); otherwise SingularMomentPair.
ComplexMatrix minimizing_operator(const RiskMoments& m);

// Eigenprojectors of the minimizing operator with eigenvalues merged at
// merge_tol (relative, floored at 1); guesses are grouped eigenvalue means.
EstimatorPOM optimal_pom(const ComplexMatrix& theta_op, double merge_tol = 1e-9);

// tr(w2 - Theta w0 Theta)
double bayes_cost(const RiskMoments& m, const ComplexMatrix& theta_op);

struct OptimalityReport {
    double gamma_herm_residual = 0.0;
    double cond1_residual = 0.0;  // max over elements of max|(W(g_i) - Gamma) P_i|
    double cond2_min_eig = 0.0;   // min over the theta grid of lambda_min(W(theta) - Gamma)
    bool gamma_hermitian = false;
    bool cond1_pass = false;
    bool cond2_pass = false;
    bool pass() const { return gamma_hermitian && cond1_pass && cond2_pass; }
};

// Checks the optimality conditions (i) [W(g_i) - Gamma] P_i = 0 and
// (ii) W(theta) - Gamma >= 0 on a uniform theta grid, Gamma = sum_i P_i W(g_i)
// symmetrized. Pass thresholds 1e-9.
OptimalityReport verify_optimality(const MatrixPolynomial& family, const Prior& prior,
                                   const EstimatorPOM& pom, int grid = 1001);

}  // namespace depolarb
