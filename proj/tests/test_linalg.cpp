#include <cmath>
#include <complex>

#include "depolarb/bayes.hpp"
#include "depolarb/channel.hpp"
#include "depolarb/linalg.hpp"
#include "depolarb/mc.hpp"
#include "depolarb/prior.hpp"
#include "doctest.h"

using namespace depolarb;

namespace {

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m(0, 1) = m(1, 0) = 1.0;
    return m;
}

ComplexMatrix random_hermitian(int dim, std::uint64_t seed) {
    CounterRng rng(seed, 0);
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        m(i, i) = 2.0 * rng.next_uniform() - 1.0;
        for (int j = i + 1; j < dim; ++j) {
            cdouble v(2.0 * rng.next_uniform() - 1.0, 2.0 * rng.next_uniform() - 1.0);
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("kron of identities is the identity") {
    ComplexMatrix k = kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
    CHECK(max_abs(k - ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("kron of projectors picks the corner") {
    ComplexMatrix p(2, 2);
    p(0, 0) = 1.0;
    ComplexMatrix k = kron(p, p);
    ComplexMatrix want(4, 4);
    want(0, 0) = 1.0;
    CHECK(max_abs(k - want) == 0.0);
}

TEST_CASE("kron of bit flips permutes the basis") {
    ComplexMatrix v(4, 1);
    v(0, 0) = 1.0;
    ComplexMatrix w = kron(pauli_x(), pauli_x()) * v;
    CHECK(w(3, 0) == cdouble(1.0));
    CHECK(std::abs(w(0, 0)) + std::abs(w(1, 0)) + std::abs(w(2, 0)) == 0.0);
}

TEST_CASE("kron trace is multiplicative") {
    ComplexMatrix a = random_hermitian(3, 11);
    ComplexMatrix b = random_hermitian(4, 12);
    CHECK(std::abs(trace(kron(a, b)) - trace(a) * trace(b)) <= 1e-12);
}

TEST_CASE("eigenvalues of the identity") {
    auto eig = herm_eig(ComplexMatrix::identity(4));
    for (double v : eig.eigenvalues) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigenvalues of a Pauli flip") {
    auto eig = herm_eig(pauli_x());
    CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("w0 spectrum of the one-qubit-probe family at x = 1/2") {
    RiskMoments m = risk_moments(output_case_a(0.5), Prior::uniform_full(2));
    auto eig = herm_eig(m.w0);
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0 / 6).epsilon(1e-13));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0 / 6).epsilon(1e-13));
    CHECK(eig.eigenvalues[2] == doctest::Approx(1.0 / 6).epsilon(1e-13));
    CHECK(eig.eigenvalues[3] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("herm_check accepts and rejects") {
    CHECK(herm_check(ComplexMatrix::identity(2), 1e-12));
    ComplexMatrix anti(2, 2);
    anti(0, 1) = anti(1, 0) = cdouble(0.0, 1.0);
    CHECK_FALSE(herm_check(anti, 1e-12));
    RiskMoments m = risk_moments(output_case_b(0.3), Prior::uniform_full(2));
    CHECK(herm_check(m.w1, 1e-12));
}

TEST_CASE("herm_eig rejects a non-Hermitian input") {
    ComplexMatrix bad(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(herm_eig(bad), NotHermitian);
}

TEST_CASE("random Hermitian matrices: reconstruction, orthonormality, trace") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        int dim = 2 + static_cast<int>(seed % 7);
        ComplexMatrix a = random_hermitian(dim, seed);
        auto eig = herm_eig(a);
        const ComplexMatrix& v = eig.eigenvectors;
        CHECK(max_abs(adjoint(v) * v - ComplexMatrix::identity(dim)) <= 1e-12);
        ComplexMatrix lam(dim, dim);
        double esum = 0.0;
        for (int i = 0; i < dim; ++i) {
            lam(i, i) = eig.eigenvalues[i];
            esum += eig.eigenvalues[i];
            if (i > 0) CHECK(eig.eigenvalues[i] >= eig.eigenvalues[i - 1]);
        }
        CHECK(max_abs(a - v * lam * adjoint(v)) <= 1e-11);
        CHECK(std::abs(esum - trace(a).real()) <= 1e-11);
    }
}

TEST_CASE("diagonal input is returned exactly") {
    ComplexMatrix d(4, 4);
    d(0, 0) = 3.5;
    d(1, 1) = -1.25;
    d(2, 2) = 0.0;
    d(3, 3) = 7.0;
    auto eig = herm_eig(d);
    CHECK(eig.eigenvalues[0] == -1.25);
    CHECK(eig.eigenvalues[1] == 0.0);
    CHECK(eig.eigenvalues[2] == 3.5);
    CHECK(eig.eigenvalues[3] == 7.0);
    ComplexMatrix lam(4, 4);
    for (int i = 0; i < 4; ++i) lam(i, i) = eig.eigenvalues[i];
    const ComplexMatrix& v = eig.eigenvectors;
    CHECK(max_abs(d - v * lam * adjoint(v)) <= 1e-15);
}

TEST_CASE("shape mismatches are rejected") {
    ComplexMatrix a(2, 3), b(2, 2);
    CHECK_THROWS_AS(a + b, DimMismatch);
    CHECK_THROWS_AS(b * a * b, DimMismatch);
    CHECK_THROWS_AS(herm_eig(a), NotHermitian);
}

}  // TEST_SUITE
