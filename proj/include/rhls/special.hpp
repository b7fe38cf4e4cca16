#pragma once

namespace rhls {

/// Gamma function (Boost.Math Lanczos approximation for double).
/// Throws std::domain_error at poles.
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Surface area of the unit sphere S^{N-1} in R^N; |S^0| = 2.
double sphere_area(int N);

/// Volume of the unit ball in R^N.
double ball_volume(int N);

/// Wallis integral W_N = int_0^pi sin^{N-2}(phi) dphi, N >= 2.
double wallis_integral(int N);

}  // namespace rhls
