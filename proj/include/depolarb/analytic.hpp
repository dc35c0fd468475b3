#pragma once

#include <array>
#include <vector>

#include "depolarb/channel.hpp"
#include "depolarb/linalg.hpp"
#include "depolarb/prior.hpp"

namespace depolarb {

// Closed forms for the one-channel-use probe (channel on one qubit of the pair).
struct CaseAResult {
    ComplexMatrix theta_matrix;      // 4x4 minimizing operator
    std::array<double, 4> guesses;   // eigenvalues (3+r)/9, (3-r)/9, 1/9, 1/9
    double gamma_angle = 0.0;        // rotation angle of the psi-block eigenbasis
    double r = 0.0;                  // sqrt(1 + 12 x (1-x))
    double cost = 0.0;               // (8/81) [1 + (x - 1/2)^2]
};

CaseAResult case_a(double x);

// Closed forms for the both-qubits probe.
struct CaseBResult {
    ComplexMatrix theta_matrix;
    double a_coef = 0.0;  // 7x (35 - 20x + 2x^2)
    double b_coef = 0.0;  // 7(1-x) (17 + 16x + 2x^2); mirror image of a_coef
    double c_coef = 0.0;  // 9 [9 - 2x(1-x)] sqrt(x(1-x))
    double r = 0.0;       // sqrt((a-b)^2 + 4c^2)
    double theta_plus = 0.0;
    double theta_minus = 0.0;
    double cost = 0.0;    // 8 [391 + 606 x(1-x) - 10 x^2 (1-x)^2] / (2295 [13 + 8 x(1-x)])
};

CaseBResult case_b(double x);

// Intermediate quantities of the minimizing-operator derivation: the rotation
// diagonalizing w0 and the minimizing operator expressed in that eigenbasis.
// u0 theta_tilde u0^dag must reproduce the closed-form operator.
struct AppendixIntermediates {
    double r0 = 0.0;
    double cos_g0 = 0.0;
    double sin_g0 = 0.0;
    std::array<double, 4> w0_eigs{};  // in derivation order (psi pair first)
    ComplexMatrix theta_tilde;
    ComplexMatrix u0;
};

// case_id 'a' or 'b'. The raw theta_tilde entries hit removable 0/0 (case a)
// or catastrophic cancellation (case b) at the x endpoints; they are evaluated
// in an algebraically equivalent factored form that is regular everywhere.
AppendixIntermediates appendix_intermediates(char case_id, double x);

// A concrete strategy: N channel outputs with commuting outcome structure
// P(m) proportional to C(N,m) k^m f0^(N-m) f1^m.
struct MixtureStrategy {
    std::vector<Rational> f0;
    std::vector<Rational> f1;
    std::vector<double> f0_d;
    std::vector<double> f1_d;
    int copies = 1;        // N
    long weight_base = 1;  // k
    int d = 2;

    double f0_at(double theta) const;
    double f1_at(double theta) const;
};

MixtureStrategy make_strategy(StrategyKind kind, int d, int pairs);
MixtureStrategy make_strategy(const MixtureFamily& family, int pairs);

// Exact z * int theta^k f0^(N-m) f1^m dtheta, by direct polynomial expansion.
Rational mixture_moment(const MixtureStrategy& s, int m, int k, const Prior& prior);

// Bayes-optimal cost and estimates for a mixture strategy, in exact rationals:
// cost = sum_m C(N,m) k^m [w2_m - w1_m^2 / w0_m], guess_m = w1_m / w0_m.
struct SeriesResult {
    Rational cost_exact;
    double cost = 0.0;
    std::vector<Rational> guesses_exact;
    std::vector<double> guesses;
};

SeriesResult cost_series(const MixtureStrategy& s, const Prior& prior);

// Maximum-likelihood benchmark on the separable strategy (2M single uses):
// the printed closed form and the exact prior-averaged cost of the fixed
// ML estimates.
struct MlResult {
    double formula = 0.0;
    double exact = 0.0;
    Rational formula_rational;
    Rational exact_rational;
    std::vector<Rational> guesses;
};

MlResult cost_ml(int pairs, int d);
MlResult cost_ml(int pairs, int d, const Prior& prior);

}  // namespace depolarb
