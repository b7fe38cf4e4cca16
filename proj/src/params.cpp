#include "rhls/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rhls/constants.hpp"

namespace rhls {

Params::Params(int N_, double lambda_, double q_) : N(N_), lambda(lambda_), q(q_)
{
    if (N < 1)
        throw std::invalid_argument("dimension N must be >= 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("lambda must be positive and finite");
    if (!(q > 0.0) || !std::isfinite(q))
        throw std::invalid_argument("q must be positive and finite");
    alpha = q == 1.0 ? std::numeric_limits<double>::quiet_NaN() : alpha_exponent(N, lambda, q);
}

double Params::lq_exponent() const
{
    if (!has_alpha())
        throw std::invalid_argument("lq_exponent undefined for q = 1");
    return lambda / (N * (1.0 - q));
}

}  // namespace rhls
