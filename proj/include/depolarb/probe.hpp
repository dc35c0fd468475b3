#pragma once

#include "depolarb/linalg.hpp"

namespace depolarb {

// Two-qubit probe sqrt(x)|0 f0> + sqrt(1-x)|1 f1> as a column vector in the
// canonical basis order (|0 f0>, |1 f1>, |0 f1>, |1 f0>).
ComplexMatrix schmidt_state(double x);

// (1/sqrt(d)) sum_i |i>|i>, column vector of dim d*d in the product basis.
ComplexMatrix max_entangled(int d);

}  // namespace depolarb
