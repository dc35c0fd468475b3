#include "depolarb/analytic.hpp"

#include <cmath>

namespace depolarb {

namespace {

void check_x(double x, const char* where) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(where) + ": x outside [0,1]");
}

ComplexMatrix psi_phi_block(double m00, double m01, double m11, double p0, double p1) {
    ComplexMatrix t(4, 4);
    t(0, 0) = m00;
    t(0, 1) = t(1, 0) = m01;
    t(1, 1) = m11;
    t(2, 2) = p0;
    t(3, 3) = p1;
    return t;
}

}  // namespace

CaseAResult case_a(double x) {
    check_x(x, "case_a");
    double y = x * (1.0 - x);
    double s = std::sqrt(y);
    double r = std::sqrt(1.0 + 12.0 * y);
    CaseAResult out;
    out.r = r;
    out.theta_matrix =
        psi_phi_block(2.0 / 9.0 * (1.0 + x), 2.0 / 9.0 * 2.0 * s, 2.0 / 9.0 * (2.0 - x), 1.0 / 9.0, 1.0 / 9.0);
    out.guesses = {(3.0 + r) / 9.0, (3.0 - r) / 9.0, 1.0 / 9.0, 1.0 / 9.0};
    double cg = std::sqrt((r - 1.0 + 2.0 * x) / (2.0 * r));
    double sg = std::sqrt((r + 1.0 - 2.0 * x) / (2.0 * r));
    out.gamma_angle = std::atan2(sg, cg);
    out.cost = 8.0 / 81.0 * (1.0 + (x - 0.5) * (x - 0.5));
    return out;
}

CaseBResult case_b(double x) {
    check_x(x, "case_b");
    double y = x * (1.0 - x);
    double s = std::sqrt(y);
    double den = 17.0 * (13.0 + 8.0 * y);
    CaseBResult out;
    out.a_coef = 7.0 * x * (35.0 - 20.0 * x + 2.0 * x * x);
    out.b_coef = 7.0 * (1.0 - x) * (17.0 + 16.0 * x + 2.0 * x * x);
    out.c_coef = 9.0 * (9.0 - 2.0 * y) * s;
    out.theta_matrix = psi_phi_block(out.a_coef / den, out.c_coef / den, out.b_coef / den, 0.2, 0.2);
    double diff = out.a_coef - out.b_coef;
    out.r = std::sqrt(diff * diff + 4.0 * out.c_coef * out.c_coef);
    double num = 119.0 * (1.0 + 2.0 * y);
    out.theta_plus = (num + out.r) / (2.0 * den);
    out.theta_minus = (num - out.r) / (2.0 * den);
    out.cost = 8.0 * (391.0 + 606.0 * y - 10.0 * y * y) / (2295.0 * (13.0 + 8.0 * y));
    return out;
}

AppendixIntermediates appendix_intermediates(char case_id, double x) {
    check_x(x, "appendix_intermediates");
    double y = x * (1.0 - x);
    double s = std::sqrt(y);
    AppendixIntermediates out;
    out.u0 = ComplexMatrix::identity(4);
    if (case_id == 'a') {
        double r0 = std::sqrt(1.0 - 3.0 * y);  // in [1/2, 1]
        out.r0 = r0;
        out.cos_g0 = std::sqrt((r0 - 1.0 + 2.0 * x) / (2.0 * r0));
        out.sin_g0 = std::sqrt((r0 + 1.0 - 2.0 * x) / (2.0 * r0));
        out.w0_eigs = {(1.0 + r0) / 3.0, (1.0 - r0) / 3.0, (1.0 - x) / 3.0, x / 3.0};
        // The raw diagonal entries are 0/0 at the x endpoints; with
        // 3y = (1-r0)(1+r0) substituted they reduce to (3 r0 +- 1)/(9 r0),
        // which is the same function without the cancellation.
        out.theta_tilde = psi_phi_block((3.0 * r0 + 1.0) / (9.0 * r0), -(1.0 - 2.0 * x) * s / (3.0 * r0),
                                        (3.0 * r0 - 1.0) / (9.0 * r0), 1.0 / 9.0, 1.0 / 9.0);
    } else if (case_id == 'b') {
        double r0 = std::sqrt(81.0 - 128.0 * y);  // in [7, 9]
        out.r0 = r0;
        out.cos_g0 = std::sqrt((r0 - 9.0 * (1.0 - 2.0 * x)) / (2.0 * r0));
        out.sin_g0 = std::sqrt((r0 + 9.0 * (1.0 - 2.0 * x)) / (2.0 * r0));
        out.w0_eigs = {(17.0 + r0) / 54.0, (17.0 - r0) / 54.0, 5.0 / 27.0, 5.0 / 27.0};
        // Same rewrite: r0 - 9 + 16y and r0 + 9 - 16y factor through
        // 128y = (9 - r0)(9 + r0), removing the endpoint cancellation.
        double tt11 = 7.0 * (r0 + 9.0) * (10.0 - 16.0 * y) / (r0 * (r0 + 1.0) * (17.0 + r0));
        double tt22 = 112.0 * y * (r0 + 1.0) / (r0 * (9.0 + r0) * (17.0 - r0));
        double tt12 = 8.0 * (1.0 - 2.0 * x) * s / (17.0 * r0);
        out.theta_tilde = psi_phi_block(tt11, tt12, tt22, 0.2, 0.2);
    } else {
        throw DomainError("appendix_intermediates: case must be 'a' or 'b'");
    }
    out.u0(0, 0) = out.cos_g0;
    out.u0(0, 1) = -out.sin_g0;
    out.u0(1, 0) = out.sin_g0;
    out.u0(1, 1) = out.cos_g0;
    return out;
}

double MixtureStrategy::f0_at(double theta) const {
    double r = f0_d.back();
    for (int j = static_cast<int>(f0_d.size()) - 2; j >= 0; --j) r = theta * r + f0_d[j];
    return r;
}

double MixtureStrategy::f1_at(double theta) const {
    double r = f1_d.back();
    for (int j = static_cast<int>(f1_d.size()) - 2; j >= 0; --j) r = theta * r + f1_d[j];
    return r;
}

MixtureStrategy make_strategy(const MixtureFamily& family, int pairs) {
    if (pairs < 1) throw DomainError("make_strategy: pair count must be >= 1");
    MixtureStrategy s;
    s.f0 = family.f0;
    s.f1 = family.f1;
    for (const auto& q : s.f0) s.f0_d.push_back(to_double(q));
    for (const auto& q : s.f1) s.f1_d.push_back(to_double(q));
    s.copies = pairs * family.copy_multiplier;
    s.weight_base = family.weight_base;
    s.d = family.d;
    return s;
}

MixtureStrategy make_strategy(StrategyKind kind, int d, int pairs) {
    return make_strategy(output_family_ddim(kind, d), pairs);
}

Rational mixture_moment(const MixtureStrategy& s, int m, int k, const Prior& prior) {
    if (m < 0 || m > s.copies) throw DomainError("mixture_moment: m outside 0..N");
    if (k < 0 || k > 2) throw DomainError("mixture_moment: k outside 0..2");
    auto mul = [](const std::vector<Rational>& p, const std::vector<Rational>& q) {
        std::vector<Rational> r(p.size() + q.size() - 1, Rational(0));
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
        return r;
    };
    std::vector<Rational> poly{Rational(1)};
    for (int i = 0; i < s.copies - m; ++i) poly = mul(poly, s.f0);
    for (int i = 0; i < m; ++i) poly = mul(poly, s.f1);
    Rational acc(0);
    for (size_t j = 0; j < poly.size(); ++j) acc += poly[j] * prior.moment(k + static_cast<int>(j));
    acc.canonicalize();
    return acc;
}

namespace {

// The three strategy families all have f0 = (1 + c phi)/(c+1), f1 = (1 - phi)/(c+1)
// with phi = theta^t. When that shape holds, all N+1 moment triples come out of
// an integer recursion instead of N+1 polynomial expansions.
struct PhiForm {
    bool ok = false;
    long c = 0;
    long big_d = 0;
    int t = 1;
};

PhiForm phi_form(const MixtureStrategy& s) {
    PhiForm pf;
    int t;
    if (s.f0.size() == 2 && s.f1.size() == 2) {
        t = 1;
    } else if (s.f0.size() == 3 && s.f1.size() == 3 && s.f0[1] == 0 && s.f1[1] == 0) {
        t = 2;
    } else {
        return pf;
    }
    const Rational& lead = s.f0[t];
    const Rational& base = s.f0[0];
    if (base.get_num() != 1) return pf;
    long big_d = base.get_den().get_si();
    long c = big_d - 1;
    if (c < 1) return pf;
    if (lead != rat(c, big_d)) return pf;
    if (s.f1[0] != rat(1, big_d) || s.f1[t] != rat(-1, big_d)) return pf;
    pf.ok = true;
    pf.c = c;
    pf.big_d = big_d;
    pf.t = t;
    return pf;
}

struct MomentTable {
    std::vector<std::array<Rational, 3>> omega;  // omega[m][k]
};

MomentTable batch_moments(const MixtureStrategy& s, const Prior& prior) {
    const int n = s.copies;
    MomentTable tab;
    tab.omega.resize(n + 1);
    PhiForm pf = phi_form(s);
    if (!pf.ok || prior.upper != 1) {
        for (int m = 0; m <= n; ++m)
            for (int k = 0; k < 3; ++k) tab.omega[m][k] = mixture_moment(s, m, k, prior);
        return tab;
    }

    const int t = pf.t;
    const long c = pf.c;
    const int nmax = 2 + t * n;

    // Scaled power moments: J[i] = L ql^(nmax+1) * int_l^1 theta^i dtheta, all integer,
    // with l = pl/ql and L = lcm(1..nmax+1).
    BigInt pl = prior.lower.get_num();
    BigInt ql = prior.lower.get_den();
    BigInt lcm(1);
    for (int i = 2; i <= nmax + 1; ++i) mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), i);
    std::vector<BigInt> qpow(nmax + 2), ppow(nmax + 2);
    qpow[0] = 1;
    ppow[0] = 1;
    for (int i = 1; i <= nmax + 1; ++i) {
        qpow[i] = qpow[i - 1] * ql;
        ppow[i] = ppow[i - 1] * pl;
    }
    std::vector<BigInt> jmom(nmax + 1);
    for (int i = 0; i <= nmax; ++i)
        jmom[i] = (lcm / (i + 1)) * qpow[nmax - i] * (qpow[i + 1] - ppow[i + 1]);

    Rational denom(int_pow(BigInt(pf.big_d), n) * lcm * qpow[nmax + 1]);

    // h holds the integer coefficients of (1 + c phi)^(n-m) (1 - phi)^m in phi.
    std::vector<BigInt> h(n + 2), u(n + 2);
    for (int j = 0; j <= n; ++j) h[j] = binomial(n, j) * int_pow(BigInt(c), j);

    for (int m = 0; m <= n; ++m) {
        for (int k = 0; k < 3; ++k) {
            BigInt r(0);
            for (int j = 0; j <= n; ++j) r += h[j] * jmom[k + t * j];
            Rational w = prior.density * Rational(r) / denom;
            w.canonicalize();
            tab.omega[m][k] = w;
        }
        if (m < n) {
            // h <- h * (1 - phi) / (1 + c phi), exact synthetic division
            u[0] = h[0];
            for (int j = 1; j <= n; ++j) u[j] = h[j] - h[j - 1];
            u[n + 1] = -h[n];
            h[0] = u[0];
            for (int j = 1; j <= n; ++j) h[j] = u[j] - c * h[j - 1];
            if (u[n + 1] - c * h[n] != 0)
                throw DomainError("cost_series: moment recursion lost exactness");
        }
    }
    return tab;
}

Rational outcome_weight(int n, int m, long k) { return Rational(binomial(n, m) * int_pow(BigInt(k), m)); }

}  // namespace

SeriesResult cost_series(const MixtureStrategy& s, const Prior& prior) {
    MomentTable tab = batch_moments(s, prior);
    SeriesResult out;
    Rational cost(0);
    for (int m = 0; m <= s.copies; ++m) {
        const auto& om = tab.omega[m];
        if (om[0] <= 0) throw DomainError("cost_series: vanishing outcome probability mass");
        Rational guess = om[1] / om[0];
        cost += outcome_weight(s.copies, m, s.weight_base) * (om[2] - om[1] * guess);
        out.guesses.push_back(to_double(guess));
        out.guesses_exact.push_back(guess);
    }
    cost.canonicalize();
    out.cost_exact = cost;
    out.cost = to_double(cost);
    return out;
}

MlResult cost_ml(int pairs, int d, const Prior& prior) {
    MixtureStrategy s = make_strategy(StrategyKind::sep, d, pairs);
    MomentTable tab = batch_moments(s, prior);
    const int n = s.copies;  // 2M single channel uses
    MlResult out;
    Rational exact(0);
    for (int m = 0; m <= n; ++m) {
        // Likelihood f0^(n-m) f1^m peaks at theta = 1 - m d / (n (d-1)).
        Rational g = Rational(1) - rat(static_cast<long>(m) * d, static_cast<long>(n) * (d - 1));
        const auto& om = tab.omega[m];
        exact += outcome_weight(n, m, s.weight_base) * (g * g * om[0] - 2 * g * om[1] + om[2]);
        out.guesses.push_back(g);
    }
    exact.canonicalize();
    out.exact_rational = exact;
    out.exact = to_double(exact);
    BigInt dd1 = BigInt(d) * d - 1;
    Rational formula = Rational(int_pow(BigInt(d), 5) * (d + 3)) / Rational(BigInt(12) * pairs * int_pow(dd1, 3));
    formula.canonicalize();
    out.formula_rational = formula;
    out.formula = to_double(formula);
    return out;
}

MlResult cost_ml(int pairs, int d) { return cost_ml(pairs, d, Prior::uniform_full(d)); }

}  // namespace depolarb
