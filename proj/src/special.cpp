#include "rhls/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace rhls {

double gamma_fn(double x)
{
    if (!std::isfinite(x))
        throw std::domain_error("gamma_fn: non-finite argument");
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("gamma_fn: pole at non-positive integer");
    return boost::math::tgamma(x);
}

double log_gamma(double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("log_gamma: argument must be positive and finite");
    return boost::math::lgamma(x);
}

double sphere_area(int N)
{
    if (N < 1)
        throw std::invalid_argument("sphere_area: dimension must be >= 1");
    if (N == 1)
        return 2.0;
    const double h = 0.5 * N;
    return 2.0 * std::pow(std::numbers::pi, h) / gamma_fn(h);
}

double ball_volume(int N) { return sphere_area(N) / N; }

double wallis_integral(int N)
{
    if (N < 2)
        throw std::invalid_argument("wallis_integral: dimension must be >= 2");
    return std::sqrt(std::numbers::pi) * gamma_fn(0.5 * (N - 1)) / gamma_fn(0.5 * N);
}

}  // namespace rhls
