#pragma once
#include <functional>

namespace rhls {

using RealFunction = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (61-point) on a finite interval.
double integrate(const RealFunction& f, double a, double b, double rel_tol = 1e-13);

/// Double-exponential (tanh-sinh) rule on a finite interval; tolerates endpoint singularities.
double integrate_singular(const RealFunction& f, double a, double b, double rel_tol = 1e-13);

/// int_0^inf f(r) dr by tanh-sinh on [0,1] and on [1,inf) mapped through r = 1/u.
double integrate_half_line(const RealFunction& f, double rel_tol = 1e-13);

/// Independent rule for the same half-line integral: Gauss-Kronrod with r = u^2 on [0,1]
/// and r = 1/u on [1,inf), the latter split dyadically toward u = 0.
double integrate_half_line_kronrod(const RealFunction& f, double rel_tol = 1e-13);

/// Composite Gauss-Legendre (20 nodes per panel) over the given breakpoints.
double integrate_panels(const RealFunction& f, const double* breaks, std::size_t count);

}  // namespace rhls
