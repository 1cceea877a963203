#pragma once

#include <vector>

namespace speclab {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// q-point Gauss–Legendre rule (Newton iteration on P_q).
GaussRule gauss_legendre(int q);

}  // namespace speclab
