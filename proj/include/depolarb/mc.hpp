#pragma once

#include <cstdint>
#include <vector>

#include "depolarb/analytic.hpp"
#include "depolarb/bayes.hpp"
#include "depolarb/channel.hpp"
#include "depolarb/prior.hpp"

namespace depolarb {

struct SimReport {
    long long trials = 0;
    double empirical_cost = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(trials)
    std::uint64_t seed = 0;
};

// Counter-based generator: the stream is a pure function of (seed, counter), so
// trial i draws identical numbers regardless of how trials are scheduled.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t counter);
    std::uint64_t next_u64();
    double next_uniform();  // in [0, 1)

  private:
    std::uint64_t state_;
};

double sample_prior(const Prior& prior, CounterRng& rng);

// P(m | theta) = C(N,m) k^m f0^(N-m) f1^m for m = 0..N, evaluated in log space.
std::vector<double> outcome_dist_mixture(const MixtureStrategy& s, double theta);

SimReport simulate_mixture(const MixtureStrategy& s, const std::vector<double>& guesses,
                           const Prior& prior, long long trials, std::uint64_t seed);

SimReport simulate_two_qubit(char case_id, double x, const EstimatorPOM& pom, const Prior& prior,
                             long long trials, std::uint64_t seed);

// Composite-Simpson value of int z(theta) sum_j (g_j - theta)^2 tr[P_j Psi(theta)] dtheta.
// Deliberately shares no code with the exact-rational path it cross-checks.
double grid_oracle(const MatrixPolynomial& family, const EstimatorPOM& pom, const Prior& prior,
                   int gridpts);

// Serial twins of the parallel kernels above. Reports must match bitwise; the
// benchmark target times one against the other.
namespace reference {

SimReport simulate_mixture(const MixtureStrategy& s, const std::vector<double>& guesses,
                           const Prior& prior, long long trials, std::uint64_t seed);

SimReport simulate_two_qubit(char case_id, double x, const EstimatorPOM& pom, const Prior& prior,
                             long long trials, std::uint64_t seed);

double grid_oracle(const MatrixPolynomial& family, const EstimatorPOM& pom, const Prior& prior,
                   int gridpts);

}  // namespace reference

}  // namespace depolarb
