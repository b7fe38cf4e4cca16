#pragma once
#include <random>

#include "rhls/profile.hpp"

namespace rhls {

using Rng = std::mt19937_64;

/// Random radial non-increasing density: positive mixture of Gaussians exp(-(r/s)^2) and
/// compact bumps (1 - (r/s)^2)_+ with scales spread over two decades around 1.
RadialProfile random_monotone_profile(const RadialGrid& grid, Rng& rng);

/// Random nonnegative profile, not necessarily monotone: a monotone draw plus Gaussian rings
/// exp(-((r - r0)/s)^2) centred away from the origin.
RadialProfile random_nonnegative_profile(const RadialGrid& grid, Rng& rng);

/// Random signed radial profile with zero grid mass, normalised to int |h| = 1.
RadialProfile random_zero_mass_profile(const RadialGrid& grid, Rng& rng);

/// Uniform draw on [a, b).
double uniform(Rng& rng, double a, double b);

}  // namespace rhls
