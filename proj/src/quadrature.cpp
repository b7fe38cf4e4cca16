#include "rhls/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "rhls/error.hpp"

namespace rhls {

namespace bq = boost::math::quadrature;

double integrate(const RealFunction& f, double a, double b, double rel_tol)
{
    if (a == b)
        return 0.0;
    double err = 0.0;
    const double v = bq::gauss_kronrod<double, 61>::integrate(f, a, b, 15, rel_tol, &err);
    if (!std::isfinite(v))
        throw NumericalError("integrate: non-finite result");
    return v;
}

double integrate_singular(const RealFunction& f, double a, double b, double rel_tol)
{
    if (a == b)
        return 0.0;
    static thread_local bq::tanh_sinh<double> rule(15);
    const double v = rule.integrate(f, a, b, rel_tol);
    if (!std::isfinite(v))
        throw NumericalError("integrate_singular: non-finite result");
    return v;
}

double integrate_half_line(const RealFunction& f, double rel_tol)
{
    const double inner = integrate_singular(f, 0.0, 1.0, rel_tol);
    auto g = [&](double u) {
        if (u <= 0.0)
            return 0.0;
        const double r = 1.0 / u;
        const double v = f(r) * r * r;
        return std::isfinite(v) ? v : 0.0;
    };
    return inner + integrate_singular(g, 0.0, 1.0, rel_tol);
}

double integrate_half_line_kronrod(const RealFunction& f, double rel_tol)
{
    auto inner = [&](double u) { return f(u * u) * 2.0 * u; };
    double sum = integrate(inner, 0.0, 1.0, rel_tol);
    auto outer = [&](double u) {
        const double r = 1.0 / u;
        return f(r) * r * r;
    };
    // The mapped integrand may carry an algebraic singularity at u = 0; dyadic panels
    // keep each Kronrod call smooth, so a shallow bisection depth suffices (a deep one only
    // chases the rounding floor of small panels).
    double hi = 1.0;
    for (int k = 0; k < 200; ++k) {
        const double lo = 0.5 * hi;
        double err = 0.0;
        const double piece = bq::gauss_kronrod<double, 61>::integrate(outer, lo, hi, 5, rel_tol, &err);
        if (!std::isfinite(piece))
            throw NumericalError("integrate_half_line_kronrod: non-finite result");
        sum += piece;
        hi = lo;
        if (std::abs(piece) < 1e-3 * rel_tol * std::abs(sum))
            break;
    }
    return sum;
}

double integrate_panels(const RealFunction& f, const double* breaks, std::size_t count)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < count; ++i)
        s += bq::gauss<double, 20>::integrate(f, breaks[i], breaks[i + 1]);
    return s;
}

}  // namespace rhls
