#include <cmath>
#include <cstdlib>

#include "depolarb/analytic.hpp"
#include "depolarb/bayes.hpp"
#include "depolarb/channel.hpp"
#include "depolarb/linalg.hpp"
#include "depolarb/mc.hpp"
#include "depolarb/prior.hpp"
#include "doctest.h"

using namespace depolarb;

namespace {

const Prior kQubitPrior = Prior::uniform_full(2);

EstimatorPOM pipeline_pom(char case_id, double x) {
    MatrixPolynomial fam = case_id == 'a' ? output_case_a(x) : output_case_b(x);
    RiskMoments m = risk_moments(fam, kQubitPrior);
    return optimal_pom(minimizing_operator(m));
}

ComplexMatrix random_hermitian(int dim, CounterRng& rng) {
    ComplexMatrix h(dim, dim);
    for (int i = 0; i < dim; ++i) {
        h(i, i) = rng.next_uniform() - 0.5;
        for (int j = i + 1; j < dim; ++j) {
            cdouble v(rng.next_uniform() - 0.5, rng.next_uniform() - 0.5);
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

// complete POM with 'count' projective elements built from the eigenbasis of a
// random Hermitian matrix, guesses drawn from the prior
EstimatorPOM random_pom(int count, CounterRng& rng) {
    HermitianEigen eig = herm_eig(random_hermitian(4, rng));
    int offset = static_cast<int>(rng.next_u64() % count);
    EstimatorPOM pom;
    pom.elements.resize(count);
    for (PomElement& e : pom.elements) {
        e.projector = ComplexMatrix::zero(4, 4);
        e.rank = 0;
    }
    for (int v = 0; v < 4; ++v) {
        PomElement& e = pom.elements[(v + offset) % count];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                e.projector(i, j) +=
                    eig.eigenvectors(i, v) * std::conj(eig.eigenvectors(j, v));
        e.rank += 1;
    }
    for (PomElement& e : pom.elements) e.guess = sample_prior(kQubitPrior, rng);
    return pom;
}

double simpson(const std::vector<double>& vals, double h) {
    double s4 = 0.0, s2 = 0.0;
    for (std::size_t i = 1; i + 1 < vals.size(); ++i) (i % 2 ? s4 : s2) += vals[i];
    return (vals.front() + vals.back() + 4 * s4 + 2 * s2) * h / 3;
}

}  // namespace

TEST_SUITE("mc") {

TEST_CASE("counter rng is a pure function of seed and counter") {
    CounterRng a(42, 7);
    CounterRng b(42, 7);
    for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());

    CounterRng c(42, 8);
    CHECK(CounterRng(42, 7).next_u64() != c.next_u64());
    CHECK(CounterRng(43, 7).next_u64() != CounterRng(42, 7).next_u64());

    CounterRng u(9, 0);
    for (int i = 0; i < 1000; ++i) {
        double v = u.next_uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("prior sampling hits the right mean and support") {
    CounterRng rng(5, 0);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        double t = sample_prior(kQubitPrior, rng);
        CHECK(t >= -1.0 / 3);
        CHECK(t <= 1.0);
        sum += t;
    }
    CHECK(std::abs(sum / n - 1.0 / 3) < 0.002);

    Prior narrow = Prior::uniform_narrow();
    sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = sample_prior(narrow, rng);
        CHECK(t >= 0.0);
        CHECK(t <= 1.0);
        sum += t;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.002);
}

TEST_CASE("outcome distribution of one entangled pair") {
    MixtureStrategy s = make_strategy(StrategyKind::ent_one, 2, 1);
    std::vector<double> at1 = outcome_dist_mixture(s, 1.0);
    REQUIRE(at1.size() == 2);
    CHECK(at1[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(at1[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    std::vector<double> at0 = outcome_dist_mixture(s, 0.0);
    CHECK(at0[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(at0[1] == doctest::Approx(0.75).epsilon(1e-12));

    // f0 vanishes at the lower edge of the support; all mass lands on m = N
    std::vector<double> edge = outcome_dist_mixture(s, -1.0 / 3);
    CHECK(edge[0] == 0.0);
    CHECK(edge[1] == 1.0);
}

TEST_CASE("outcome distributions normalize") {
    for (int d : {2, 3}) {
        for (StrategyKind kind :
             {StrategyKind::ent_one, StrategyKind::ent_both, StrategyKind::sep}) {
            MixtureStrategy s = make_strategy(kind, d, 2);
            Prior prior = Prior::uniform_full(d);
            for (int i = 0; i <= 8; ++i) {
                double theta = prior.lower_d + (prior.upper_d - prior.lower_d) * i / 8.0;
                std::vector<double> p = outcome_dist_mixture(s, theta);
                REQUIRE(static_cast<int>(p.size()) == s.copies + 1);
                double total = 0.0;
                for (double v : p) {
                    CHECK(v >= 0.0);
                    total += v;
                }
                CHECK(std::abs(total - 1.0) <= 1e-12);
            }
        }
    }
}

TEST_CASE("mixture simulation reproduces the series cost") {
    MixtureStrategy s = make_strategy(StrategyKind::ent_one, 2, 1);
    SeriesResult series = cost_series(s, kQubitPrior);
    SimReport rep = simulate_mixture(s, series.guesses, kQubitPrior, 1000000, 12345);
    CHECK(rep.trials == 1000000);
    CHECK(rep.seed == 12345);
    CHECK(rep.std_error > 0.0);
    CHECK(std::abs(rep.empirical_cost - 8.0 / 81) <= 4 * rep.std_error);
}

TEST_CASE("mixture simulation reproduces the maximum-likelihood cost") {
    MlResult ml = cost_ml(1, 2);
    MixtureStrategy s = make_strategy(StrategyKind::sep, 2, 1);
    std::vector<double> guesses;
    for (const Rational& g : ml.guesses) guesses.push_back(to_double(g));
    SimReport rep = simulate_mixture(s, guesses, kQubitPrior, 1000000, 99);
    CHECK(std::abs(rep.empirical_cost - to_double(ml.exact_rational)) <= 4 * rep.std_error);
}

TEST_CASE("constant guess recovers the prior variance") {
    MixtureStrategy s = make_strategy(StrategyKind::sep, 2, 1);
    std::vector<double> guesses(s.copies + 1, 1.0 / 3);
    SimReport rep = simulate_mixture(s, guesses, kQubitPrior, 1000000, 7);
    CHECK(std::abs(rep.empirical_cost - 4.0 / 27) <= 4 * rep.std_error);
}

TEST_CASE("mixture simulation input checks") {
    MixtureStrategy s = make_strategy(StrategyKind::ent_one, 2, 1);
    CHECK_THROWS_AS(simulate_mixture(s, {0.5}, kQubitPrior, 1000, 1), DomainError);
    CHECK_THROWS_AS(simulate_mixture(s, {0.5, 0.1}, kQubitPrior, 0, 1), DomainError);
}

TEST_CASE("two-qubit simulation matches the closed-form cost") {
    EstimatorPOM pom = pipeline_pom('a', 0.5);
    SimReport rep = simulate_two_qubit('a', 0.5, pom, kQubitPrior, 1000000, 2024);
    CHECK(std::abs(rep.empirical_cost - 8.0 / 81) <= 4 * rep.std_error);

    EstimatorPOM pom_b = pipeline_pom('b', 0.0);
    SimReport rep_b = simulate_two_qubit('b', 0.0, pom_b, kQubitPrior, 1000000, 2025);
    CHECK(std::abs(rep_b.empirical_cost - 184.0 / 1755) <= 4 * rep_b.std_error);
}

TEST_CASE("swapping the guesses is loudly suboptimal") {
    EstimatorPOM pom = pipeline_pom('a', 0.5);
    REQUIRE(pom.elements.size() == 2);
    std::swap(pom.elements[0].guess, pom.elements[1].guess);
    SimReport rep = simulate_two_qubit('a', 0.5, pom, kQubitPrior, 200000, 11);
    CHECK(rep.empirical_cost - 8.0 / 81 >= 10 * rep.std_error);
}

TEST_CASE("two-qubit simulation input checks") {
    CHECK_THROWS_AS(simulate_two_qubit('q', 0.5, pipeline_pom('a', 0.5), kQubitPrior, 20000, 1),
                    DomainError);
    CHECK_THROWS_AS(simulate_two_qubit('a', 0.5, EstimatorPOM{}, kQubitPrior, 20000, 1),
                    InvalidPOM);

    // doubling an element pushes its outcome probability past 1 for likely theta
    EstimatorPOM bad = pipeline_pom('a', 0.5);
    bad.elements[0].projector = 2.0 * bad.elements[0].projector;
    CHECK_THROWS_AS(simulate_two_qubit('a', 0.5, bad, kQubitPrior, 20000, 1), InvalidPOM);
}

TEST_CASE("quadrature oracle agrees with the closed forms") {
    EstimatorPOM pom = pipeline_pom('a', 0.5);
    CHECK(std::abs(grid_oracle(output_case_a(0.5), pom, kQubitPrior, 20001) - 8.0 / 81) <= 1e-8);

    EstimatorPOM pom_b = pipeline_pom('b', 0.5);
    CHECK(std::abs(grid_oracle(output_case_b(0.5), pom_b, kQubitPrior, 20001) - case_b(0.5).cost) <=
          1e-8);

    EstimatorPOM trivial;
    trivial.elements.push_back({ComplexMatrix::identity(4), 1.0 / 3, 4});
    CHECK(std::abs(grid_oracle(output_case_a(0.3), trivial, kQubitPrior, 20001) - 4.0 / 27) <=
          1e-8);

    CHECK_THROWS_AS(grid_oracle(output_case_a(0.5), pom, kQubitPrior, 1), DomainError);
    CHECK_THROWS_AS(grid_oracle(output_case_a(0.5), pom, kQubitPrior, 1000), DomainError);
}

TEST_CASE("results do not depend on the worker count") {
    EstimatorPOM pom = pipeline_pom('a', 0.25);
    MixtureStrategy s = make_strategy(StrategyKind::sep, 3, 4);
    Prior prior3 = Prior::uniform_full(3);
    std::vector<double> guesses(s.copies + 1, 0.1);

    setenv("DEPOLARB_THREADS", "4", 1);
    SimReport two_a = simulate_two_qubit('a', 0.25, pom, kQubitPrior, 50000, 31);
    SimReport mix_a = simulate_mixture(s, guesses, prior3, 50000, 32);
    double grid_a = grid_oracle(output_case_a(0.25), pom, kQubitPrior, 4001);

    setenv("DEPOLARB_THREADS", "1", 1);
    SimReport two_b = simulate_two_qubit('a', 0.25, pom, kQubitPrior, 50000, 31);
    SimReport mix_b = simulate_mixture(s, guesses, prior3, 50000, 32);
    double grid_b = grid_oracle(output_case_a(0.25), pom, kQubitPrior, 4001);
    unsetenv("DEPOLARB_THREADS");

    CHECK(two_a.empirical_cost == two_b.empirical_cost);
    CHECK(two_a.std_error == two_b.std_error);
    CHECK(mix_a.empirical_cost == mix_b.empirical_cost);
    CHECK(mix_a.std_error == mix_b.std_error);
    CHECK(grid_a == grid_b);
}

TEST_CASE("serial reference kernels match the parallel ones bitwise") {
    EstimatorPOM pom = pipeline_pom('b', 0.7);
    SimReport par = simulate_two_qubit('b', 0.7, pom, kQubitPrior, 60000, 5);
    SimReport ser = reference::simulate_two_qubit('b', 0.7, pom, kQubitPrior, 60000, 5);
    CHECK(par.empirical_cost == ser.empirical_cost);
    CHECK(par.std_error == ser.std_error);

    MixtureStrategy s = make_strategy(StrategyKind::ent_both, 2, 3);
    SeriesResult series = cost_series(s, kQubitPrior);
    SimReport pm = simulate_mixture(s, series.guesses, kQubitPrior, 60000, 6);
    SimReport sm = reference::simulate_mixture(s, series.guesses, kQubitPrior, 60000, 6);
    CHECK(pm.empirical_cost == sm.empirical_cost);
    CHECK(pm.std_error == sm.std_error);

    CHECK(grid_oracle(output_case_b(0.7), pom, kQubitPrior, 2001) ==
          reference::grid_oracle(output_case_b(0.7), pom, kQubitPrior, 2001));
}

TEST_CASE("random measurements: simulation tracks the quadrature oracle") {
    int misses = 0;
    for (int t = 0; t < 30; ++t) {
        CounterRng rng(777, static_cast<std::uint64_t>(t));
        char case_id = (rng.next_u64() & 1) ? 'a' : 'b';
        double x = rng.next_uniform();
        EstimatorPOM pom = random_pom(2 + t % 3, rng);
        MatrixPolynomial fam = case_id == 'a' ? output_case_a(x) : output_case_b(x);

        SimReport rep =
            simulate_two_qubit(case_id, x, pom, kQubitPrior, 100000, 1000 + t);
        double want = grid_oracle(fam, pom, kQubitPrior, 4001);
        if (std::abs(rep.empirical_cost - want) > 4 * rep.std_error) ++misses;
    }
    CHECK(misses <= 2);
}

TEST_CASE("quadrature of the outcome likelihood recovers the exact moments") {
    struct Config {
        StrategyKind kind;
        int d;
        int pairs;
    };
    for (const Config& cfg : {Config{StrategyKind::ent_both, 2, 2}, Config{StrategyKind::sep, 3, 1}}) {
        MixtureStrategy s = make_strategy(cfg.kind, cfg.d, cfg.pairs);
        Prior prior = Prior::uniform_full(cfg.d);
        const int pts = 2001;
        double h = (prior.upper_d - prior.lower_d) / (pts - 1);
        std::vector<std::vector<double>> vals(s.copies + 1, std::vector<double>(pts));
        for (int i = 0; i < pts; ++i) {
            std::vector<double> p = outcome_dist_mixture(s, prior.lower_d + h * i);
            for (int m = 0; m <= s.copies; ++m) vals[m][i] = prior.density_d * p[m];
        }
        for (int m = 0; m <= s.copies; ++m) {
            Rational mass = Rational(binomial(s.copies, m) * int_pow(BigInt(s.weight_base), m)) *
                            mixture_moment(s, m, 0, prior);
            CHECK(std::abs(simpson(vals[m], h) - to_double(mass)) <= 1e-9);
        }
    }
}

}  // TEST_SUITE
