#pragma once

#include <vector>

#include "depolarb/linalg.hpp"
#include "depolarb/rational.hpp"

namespace depolarb {

struct DensityMatrix {
    int dim = 0;
    ComplexMatrix mat;

    // Hermitian within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-10.
    void validate() const;
};

struct ChannelParam {
    double theta = 1.0;
    int dim = 2;

    void validate() const;
};

// Matrix-valued polynomial in theta: Psi(theta) = sum_j theta^j coeffs[j].
// The exchange format between the channel families and the Bayes machinery.
struct MatrixPolynomial {
    int dim = 0;
    std::vector<ComplexMatrix> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    ComplexMatrix eval(double theta) const;
    void validate() const;
};

// rho -> theta*rho + ((1-theta)/d) I
DensityMatrix depolarize(const DensityMatrix& rho, const ChannelParam& p);

// Two-qubit output families in the basis order (|0 f0>, |1 f1>, |0 f1>, |1 f0>).
// Case (a): channel on one qubit of the Schmidt probe. Degree 1.
MatrixPolynomial output_case_a(double x);
// Case (b): channel on both qubits. Degree 2.
MatrixPolynomial output_case_b(double x);

enum class StrategyKind { ent_one, ent_both, sep };

// Commuting-family description of the d-dimensional strategies: outcome
// probabilities are C(N,m) k^m f0^(N-m) f1^m with N = pairs * copy_multiplier.
struct MixtureFamily {
    std::vector<Rational> f0;  // polynomial coefficients in theta
    std::vector<Rational> f1;
    int copy_multiplier = 1;  // channel uses per pair: 1 for pair probes, 2 for separable
    long weight_base = 1;     // k: outcome multiplicity base
    int d = 2;
};

MixtureFamily output_family_ddim(StrategyKind kind, int d);

}  // namespace depolarb
