// Times the OpenMP kernels against their serial reference twins and checks
// that both produce bitwise-identical results.

#include <chrono>
#include <cstdio>
#include <functional>

#include "depolarb/analytic.hpp"
#include "depolarb/bayes.hpp"
#include "depolarb/channel.hpp"
#include "depolarb/mc.hpp"
#include "depolarb/prior.hpp"

using namespace depolarb;

namespace {

double timed(const std::function<void()>& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-22s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n", name, serial_s,
                parallel_s, serial_s / parallel_s, identical ? "bitwise equal" : "MISMATCH");
}

}  // namespace

int main() {
    const Prior prior = Prior::uniform_full(2);
    const MatrixPolynomial family = output_case_a(0.5);
    const RiskMoments moments = risk_moments(family, prior);
    const EstimatorPOM pom = optimal_pom(minimizing_operator(moments));
    bool all_equal = true;

    {
        double serial_v = 0.0, parallel_v = 0.0;
        double ts = timed([&] { serial_v = reference::grid_oracle(family, pom, prior, 2000001); });
        double tp = timed([&] { parallel_v = grid_oracle(family, pom, prior, 2000001); });
        bool eq = serial_v == parallel_v;
        all_equal = all_equal && eq;
        report("grid_oracle", ts, tp, eq);
    }

    {
        const long long trials = 2000000;
        SimReport serial_r, parallel_r;
        double ts = timed(
            [&] { serial_r = reference::simulate_two_qubit('a', 0.5, pom, prior, trials, 42); });
        double tp =
            timed([&] { parallel_r = simulate_two_qubit('a', 0.5, pom, prior, trials, 42); });
        bool eq = serial_r.empirical_cost == parallel_r.empirical_cost &&
                  serial_r.std_error == parallel_r.std_error;
        all_equal = all_equal && eq;
        report("simulate_two_qubit", ts, tp, eq);
    }

    {
        const long long trials = 2000000;
        const Prior prior3 = Prior::uniform_full(3);
        const MixtureStrategy s = make_strategy(StrategyKind::sep, 3, 6);
        const SeriesResult series = cost_series(s, prior3);
        SimReport serial_r, parallel_r;
        double ts = timed([&] {
            serial_r = reference::simulate_mixture(s, series.guesses, prior3, trials, 42);
        });
        double tp =
            timed([&] { parallel_r = simulate_mixture(s, series.guesses, prior3, trials, 42); });
        bool eq = serial_r.empirical_cost == parallel_r.empirical_cost &&
                  serial_r.std_error == parallel_r.std_error;
        all_equal = all_equal && eq;
        report("simulate_mixture", ts, tp, eq);
    }

    return all_equal ? 0 : 1;
}
