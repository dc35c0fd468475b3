#include "depolarb/mc.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "depolarb/errors.hpp"

namespace depolarb {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

int worker_count() {
    if (const char* env = std::getenv("DEPOLARB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<int>(std::min<long>(v, 1024));
    }
    return omp_get_max_threads();
}

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

struct TrialScratch {
    std::vector<double> p;
    std::vector<double> lp;
    std::vector<int> idx;
};

// Fixed 4096-trial batches accumulated sequentially, then merged pairwise in
// batch order, so the report is identical for any thread count.
template <class PerTrial>
SimReport run_trials(long long trials, std::uint64_t seed, bool parallel, PerTrial&& per_trial) {
    if (trials < 1) throw DomainError("run_trials: trials must be >= 1");
    constexpr long long kBatch = 4096;
    const long long nbatches = (trials + kBatch - 1) / kBatch;
    std::vector<double> bsum(static_cast<std::size_t>(nbatches));
    std::vector<double> bsq(static_cast<std::size_t>(nbatches));
#pragma omp parallel for schedule(static) num_threads(worker_count()) if (parallel)
    for (long long b = 0; b < nbatches; ++b) {
        TrialScratch scratch;
        double s = 0.0, q = 0.0;
        const long long end = std::min(trials, (b + 1) * kBatch);
        for (long long i = b * kBatch; i < end; ++i) {
            double c = per_trial(static_cast<std::uint64_t>(i), scratch);
            s += c;
            q += c * c;
        }
        bsum[static_cast<std::size_t>(b)] = s;
        bsq[static_cast<std::size_t>(b)] = q;
    }
    const double sum = pairwise_sum(bsum.data(), bsum.size());
    const double sumsq = pairwise_sum(bsq.data(), bsq.size());
    SimReport rep;
    rep.trials = trials;
    rep.seed = seed;
    const double n = static_cast<double>(trials);
    rep.empirical_cost = sum / n;
    if (trials > 1) {
        double var = (sumsq - sum * sum / n) / (n - 1.0);
        rep.std_error = std::sqrt(std::max(var, 0.0) / n);
    }
    return rep;
}

std::vector<double> log_binomials(int n) {
    std::vector<double> lc(static_cast<std::size_t>(n) + 1);
    const double ln = std::lgamma(n + 1.0);
    for (int m = 0; m <= n; ++m) lc[m] = ln - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
    return lc;
}

void mixture_probs(const MixtureStrategy& s, const std::vector<double>& lchoose, double theta,
                   TrialScratch& scr) {
    const int n = s.copies;
    scr.p.assign(static_cast<std::size_t>(n) + 1, 0.0);
    const double f0 = s.f0_at(theta);
    const double f1 = s.f1_at(theta);
    if (f1 <= 0.0) {
        scr.p[0] = 1.0;
        return;
    }
    if (f0 <= 0.0) {
        scr.p[static_cast<std::size_t>(n)] = 1.0;
        return;
    }
    scr.lp.resize(scr.p.size());
    const double l1 = std::log(static_cast<double>(s.weight_base)) + std::log(f1);
    const double l0 = std::log(f0);
    double lmax = -std::numeric_limits<double>::infinity();
    for (int m = 0; m <= n; ++m) {
        double v = lchoose[m] + m * l1 + (n - m) * l0;
        scr.lp[m] = v;
        lmax = std::max(lmax, v);
    }
    double total = 0.0;
    for (int m = 0; m <= n; ++m) {
        scr.p[m] = std::exp(scr.lp[m] - lmax);
        total += scr.p[m];
    }
    for (int m = 0; m <= n; ++m) scr.p[m] /= total;
}

// Inverse CDF accumulated in descending-probability order. The binomial-type
// vectors here are unimodal, so growing the visited window from the mode always
// picks the largest remaining entry.
int sample_unimodal(const std::vector<double>& p, double target) {
    const int n = static_cast<int>(p.size());
    int mode = 0;
    for (int m = 1; m < n; ++m)
        if (p[m] > p[mode]) mode = m;
    int lo = mode, hi = mode, last = mode;
    double cum = p[mode];
    while (cum < target && (lo > 0 || hi < n - 1)) {
        const double pl = lo > 0 ? p[lo - 1] : -1.0;
        const double ph = hi < n - 1 ? p[hi + 1] : -1.0;
        if (ph > pl) {
            ++hi;
            cum += p[hi];
            last = hi;
        } else {
            --lo;
            cum += p[lo];
            last = lo;
        }
    }
    return last;
}

// Same idea for a short unordered vector: sort indices by descending weight.
int sample_sorted(const std::vector<double>& p, std::vector<int>& idx, double target) {
    const int n = static_cast<int>(p.size());
    idx.resize(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&p](int a, int b) { return p[a] > p[b] || (p[a] == p[b] && a < b); });
    double cum = 0.0;
    for (int j : idx) {
        cum += p[j];
        if (cum >= target) return j;
    }
    return idx.back();
}

std::vector<std::vector<double>> element_trace_polys(const MatrixPolynomial& family,
                                                     const EstimatorPOM& pom) {
    const int dim = family.dim;
    std::vector<std::vector<double>> tp(pom.elements.size());
    for (std::size_t j = 0; j < pom.elements.size(); ++j) {
        const ComplexMatrix& proj = pom.elements[j].projector;
        if (proj.rows != dim || proj.cols != dim)
            throw DimMismatch("element_trace_polys: projector dimension mismatch");
        tp[j].resize(family.coeffs.size());
        for (std::size_t deg = 0; deg < family.coeffs.size(); ++deg) {
            const ComplexMatrix& c = family.coeffs[deg];
            cdouble acc = 0.0;
            for (int r = 0; r < dim; ++r)
                for (int col = 0; col < dim; ++col) acc += proj(r, col) * c(col, r);
            tp[j][deg] = acc.real();
        }
    }
    return tp;
}

double poly_at(const std::vector<double>& c, double theta) {
    double r = c.back();
    for (int j = static_cast<int>(c.size()) - 2; j >= 0; --j) r = theta * r + c[j];
    return r;
}

SimReport simulate_mixture_impl(const MixtureStrategy& s, const std::vector<double>& guesses,
                                const Prior& prior, long long trials, std::uint64_t seed,
                                bool parallel) {
    if (guesses.size() != static_cast<std::size_t>(s.copies) + 1)
        throw DomainError("simulate_mixture: need one guess per outcome m = 0..N");
    const std::vector<double> lchoose = log_binomials(s.copies);
    return run_trials(trials, seed, parallel, [&](std::uint64_t i, TrialScratch& scr) {
        CounterRng rng(seed, i);
        const double theta = sample_prior(prior, rng);
        mixture_probs(s, lchoose, theta, scr);
        const int m = sample_unimodal(scr.p, rng.next_uniform());
        const double e = guesses[static_cast<std::size_t>(m)] - theta;
        return e * e;
    });
}

SimReport simulate_two_qubit_impl(char case_id, double x, const EstimatorPOM& pom,
                                  const Prior& prior, long long trials, std::uint64_t seed,
                                  bool parallel) {
    if (case_id != 'a' && case_id != 'b')
        throw DomainError("simulate_two_qubit: case must be 'a' or 'b'");
    if (pom.elements.empty()) throw InvalidPOM("simulate_two_qubit: empty POM");
    const MatrixPolynomial family = case_id == 'a' ? output_case_a(x) : output_case_b(x);
    const std::vector<std::vector<double>> tp = element_trace_polys(family, pom);
    const std::size_t ne = pom.elements.size();
    std::vector<double> guess(ne);
    for (std::size_t j = 0; j < ne; ++j) guess[j] = pom.elements[j].guess;
    std::atomic<bool> bad{false};
    SimReport rep = run_trials(trials, seed, parallel, [&](std::uint64_t i, TrialScratch& scr) {
        CounterRng rng(seed, i);
        const double theta = sample_prior(prior, rng);
        scr.p.resize(ne);
        double total = 0.0;
        for (std::size_t j = 0; j < ne; ++j) {
            double pj = poly_at(tp[j], theta);
            if (pj < -1e-9 || pj > 1.0 + 1e-9) bad.store(true, std::memory_order_relaxed);
            if (pj < 0.0) pj = 0.0;
            scr.p[j] = pj;
            total += pj;
        }
        if (total <= 0.0) {
            bad.store(true, std::memory_order_relaxed);
            return 0.0;
        }
        const int j = sample_sorted(scr.p, scr.idx, rng.next_uniform() * total);
        const double e = guess[static_cast<std::size_t>(j)] - theta;
        return e * e;
    });
    if (bad.load())
        throw InvalidPOM("simulate_two_qubit: outcome probability outside [-1e-9, 1+1e-9]");
    return rep;
}

double grid_oracle_impl(const MatrixPolynomial& family, const EstimatorPOM& pom,
                        const Prior& prior, int gridpts, bool parallel) {
    if (gridpts < 3 || gridpts % 2 == 0)
        throw DomainError("grid_oracle: gridpts must be odd and >= 3");
    const std::vector<std::vector<double>> tp = element_trace_polys(family, pom);
    const std::size_t ne = pom.elements.size();
    const double lo = prior.lower_d;
    const double h = (prior.upper_d - lo) / (gridpts - 1);
    const double z = prior.density_d;
    std::vector<double> vals(static_cast<std::size_t>(gridpts));
#pragma omp parallel for schedule(static) num_threads(worker_count()) if (parallel)
    for (int i = 0; i < gridpts; ++i) {
        const double theta = lo + h * i;
        double acc = 0.0;
        for (std::size_t j = 0; j < ne; ++j) {
            const double e = pom.elements[j].guess - theta;
            acc += e * e * poly_at(tp[j], theta);
        }
        vals[static_cast<std::size_t>(i)] = z * acc;
    }
    double s4 = 0.0, s2 = 0.0;
    for (int i = 1; i < gridpts - 1; i += 2) s4 += vals[static_cast<std::size_t>(i)];
    for (int i = 2; i < gridpts - 1; i += 2) s2 += vals[static_cast<std::size_t>(i)];
    return h / 3.0 * (vals.front() + vals.back() + 4.0 * s4 + 2.0 * s2);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t counter)
    : state_(mix64((seed ^ kGamma) + counter * 0xD1B54A32D192ED03ULL)) {}

std::uint64_t CounterRng::next_u64() {
    state_ += kGamma;
    return mix64(state_);
}

double CounterRng::next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double sample_prior(const Prior& prior, CounterRng& rng) {
    return prior.lower_d + (prior.upper_d - prior.lower_d) * rng.next_uniform();
}

std::vector<double> outcome_dist_mixture(const MixtureStrategy& s, double theta) {
    TrialScratch scr;
    mixture_probs(s, log_binomials(s.copies), theta, scr);
    return scr.p;
}

SimReport simulate_mixture(const MixtureStrategy& s, const std::vector<double>& guesses,
                           const Prior& prior, long long trials, std::uint64_t seed) {
    return simulate_mixture_impl(s, guesses, prior, trials, seed, true);
}

SimReport simulate_two_qubit(char case_id, double x, const EstimatorPOM& pom, const Prior& prior,
                             long long trials, std::uint64_t seed) {
    return simulate_two_qubit_impl(case_id, x, pom, prior, trials, seed, true);
}

double grid_oracle(const MatrixPolynomial& family, const EstimatorPOM& pom, const Prior& prior,
                   int gridpts) {
    return grid_oracle_impl(family, pom, prior, gridpts, true);
}

namespace reference {

SimReport simulate_mixture(const MixtureStrategy& s, const std::vector<double>& guesses,
                           const Prior& prior, long long trials, std::uint64_t seed) {
    return simulate_mixture_impl(s, guesses, prior, trials, seed, false);
}

SimReport simulate_two_qubit(char case_id, double x, const EstimatorPOM& pom, const Prior& prior,
                             long long trials, std::uint64_t seed) {
    return simulate_two_qubit_impl(case_id, x, pom, prior, trials, seed, false);
}

double grid_oracle(const MatrixPolynomial& family, const EstimatorPOM& pom, const Prior& prior,
                   int gridpts) {
    return grid_oracle_impl(family, pom, prior, gridpts, false);
}

}  // namespace reference

}  // namespace depolarb
