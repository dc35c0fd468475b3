#pragma once

#include "depolarb/errors.hpp"
#include "depolarb/rational.hpp"

namespace depolarb {

// Uniform prior on [lower, 1] with constant density z = 1/(1 - lower).
// Bounds kept as exact rationals; doubles cached for the sampling paths.
struct Prior {
    Rational lower;
    Rational upper;
    Rational density;
    double lower_d = 0.0;
    double upper_d = 0.0;
    double density_d = 0.0;

    // z * int_lower^upper theta^n dtheta, exact
    Rational moment(int n) const {
        Rational num = rat_pow(upper, n + 1) - rat_pow(lower, n + 1);
        Rational q = density * num / Rational(n + 1);
        q.canonicalize();
        return q;
    }

    static Prior make(const Rational& lower, const Rational& upper) {
        Prior p;
        p.lower = lower;
        p.upper = upper;
        p.density = 1 / Rational(upper - lower);
        p.density.canonicalize();
        p.lower_d = to_double(p.lower);
        p.upper_d = to_double(p.upper);
        p.density_d = to_double(p.density);
        return p;
    }

    // Complete positivity bound: theta in [-1/(d^2-1), 1].
    static Prior uniform_full(int d) {
        if (d < 2) throw DomainError("prior: dimension must be >= 2");
        return make(rat(-1, static_cast<long>(d) * d - 1), Rational(1));
    }

    static Prior uniform_narrow() { return make(Rational(0), Rational(1)); }
};

}  // namespace depolarb
