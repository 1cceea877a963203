#include "speclab/quadrature.hpp"

#include "speclab/errors.hpp"

#include <cmath>
#include <numbers>

namespace speclab {

GaussRule gauss_legendre(int q)
{
    if (q < 1) raise(ErrorKind::parameter, "Gauss rule needs at least one point");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(q));
    rule.weights.resize(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= q; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace speclab
