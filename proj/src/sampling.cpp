#include "rhls/sampling.hpp"

#include <cmath>

#include "rhls/functionals.hpp"

namespace rhls {

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

RadialProfile random_monotone_profile(const RadialGrid& grid, Rng& rng)
{
    const auto& c = grid.centers();
    std::vector<double> v(c.size(), 0.0);
    const int terms = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int k = 0; k < terms; ++k) {
        const double amp = std::exp(uniform(rng, -2.0, 2.0));
        const double s = std::pow(10.0, uniform(rng, -1.0, 1.0));
        const bool bump = uniform(rng, 0.0, 1.0) < 0.4;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double x = c[i] / s;
            v[i] += amp * (bump ? std::max(0.0, 1.0 - x * x) : std::exp(-x * x));
        }
    }
    return RadialProfile(grid, std::move(v));
}

RadialProfile random_nonnegative_profile(const RadialGrid& grid, Rng& rng)
{
    std::vector<double> v = random_monotone_profile(grid, rng).values();
    const auto& c = grid.centers();
    const int rings = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int k = 0; k < rings; ++k) {
        const double amp = std::exp(uniform(rng, -1.0, 3.0));
        const double r0 = std::pow(10.0, uniform(rng, -0.5, 0.7));
        const double s = r0 * uniform(rng, 0.05, 0.5);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double x = (c[i] - r0) / s;
            v[i] += amp * std::exp(-x * x);
        }
    }
    return RadialProfile(grid, std::move(v));
}

RadialProfile random_zero_mass_profile(const RadialGrid& grid, Rng& rng)
{
    RadialProfile a = random_monotone_profile(grid, rng);
    RadialProfile b = random_monotone_profile(grid, rng);
    const double ratio = mass(a) / mass(b);
    const auto& w = grid.volumes();
    std::vector<double> h(grid.size());
    double l1 = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        h[i] = a[i] - ratio * b[i];
        l1 += w[i] * std::abs(h[i]);
    }
    for (double& x : h)
        x /= l1;
    return RadialProfile(grid, std::move(h), true);
}

}  // namespace rhls
