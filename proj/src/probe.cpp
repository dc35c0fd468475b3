#include "depolarb/probe.hpp"

#include <cmath>

#include "depolarb/errors.hpp"

namespace depolarb {

ComplexMatrix schmidt_state(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("schmidt_state: x outside [0,1]");
    ComplexMatrix v(4, 1);
    v(0, 0) = std::sqrt(x);
    v(1, 0) = std::sqrt(1.0 - x);
    return v;
}

ComplexMatrix max_entangled(int d) {
    if (d < 2) throw DomainError("max_entangled: d must be >= 2");
    ComplexMatrix v(d * d, 1);
    double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) v(i * d + i, 0) = amp;
    return v;
}

}  // namespace depolarb
