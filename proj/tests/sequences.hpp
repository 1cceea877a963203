#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace speclab::testing {

// Upper root in x of  Σ(x−ηᵢ)² = (4c/n)Σ(x−ηᵢ)ηᵢ  over the first k terms.
inline double yang_upper_root(const std::vector<double>& v, int k, double n, double c = 1.0)
{
    double s = 0.0, q = 0.0;
    for (int i = 0; i < k; ++i) {
        s += v[static_cast<std::size_t>(i)];
        q += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    }
    const double b = (2.0 + 4.0 * c / n) * s;
    const double disc = b * b - 4.0 * k * (1.0 + 4.0 * c / n) * q;
    return (b + std::sqrt(std::max(disc, 0.0))) / (2.0 * k);
}

// Ascending positive sequence of length `len` whose every prefix satisfies the
// Yang-form hypothesis: each new term is drawn between the previous term and
// the upper root admitted by the terms before it. Ties are produced with
// positive probability.
inline std::vector<double> yang_sequence(std::mt19937_64& rng, int len, double n, double c = 1.0)
{
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> v{std::exp(4.0 * uni(rng) - 2.0)};
    while (static_cast<int>(v.size()) < len) {
        const int k = static_cast<int>(v.size());
        const double hi = yang_upper_root(v, k, n, c);
        const double u = uni(rng);
        const double t = u < 0.1 ? 0.0 : (u > 0.95 ? 1.0 : uni(rng));
        v.push_back(std::max(v.back(), v.back() + t * (hi - v.back())));
    }
    return v;
}

// Arbitrary ascending positive sequence (no hypothesis).
inline std::vector<double> random_sequence(std::mt19937_64& rng, int len)
{
    std::exponential_distribution<double> gap(1.0);
    std::vector<double> v{0.1 + gap(rng)};
    while (static_cast<int>(v.size()) < len) v.push_back(v.back() + gap(rng) * (1.0 + v.size()));
    return v;
}

}  // namespace speclab::testing
