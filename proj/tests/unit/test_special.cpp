#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "rhls/quadrature.hpp"
#include "rhls/special.hpp"

using namespace rhls;
using Big = boost::multiprecision::cpp_bin_float_50;

TEST_CASE("gamma matches a 50-digit oracle")
{
    const double xs[] = {-3.5, -2.25, -1.5, -0.75, -0.1, 0.05, 0.3, 0.5, 0.999, 1.0, 1.25, 1.5, 2.0, 2.5,
                         3.3,  4.75,  6.0,  9.5,   12.1, 17.0, 25.5, 37.2, 55.5, 101.3, 150.0};
    for (double x : xs) {
        const double ref = static_cast<double>(boost::math::tgamma(Big(x)));
        CHECK(std::abs(gamma_fn(x) / ref - 1.0) < 1e-13);
        if (x > 0.0) {
            const double lref = static_cast<double>(boost::math::lgamma(Big(x)));
            CHECK(std::abs(log_gamma(x) - lref) < 1e-13 * std::max(1.0, std::abs(lref)));
        }
    }
}

TEST_CASE("gamma rejects poles")
{
    CHECK_THROWS(gamma_fn(0.0));
    CHECK_THROWS(gamma_fn(-2.0));
}

TEST_CASE("sphere areas, ball volumes and Wallis integrals")
{
    const double pi = std::numbers::pi;
    CHECK(sphere_area(1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sphere_area(2) == doctest::Approx(2.0 * pi).epsilon(1e-14));
    CHECK(sphere_area(3) == doctest::Approx(4.0 * pi).epsilon(1e-14));
    CHECK(sphere_area(4) == doctest::Approx(2.0 * pi * pi).epsilon(1e-14));
    CHECK(ball_volume(3) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-14));
    for (int N = 1; N <= 10; ++N)
        CHECK(ball_volume(N) == doctest::Approx(sphere_area(N) / N).epsilon(1e-14));
    for (int N = 2; N <= 10; ++N) {
        const double direct = integrate([N](double p) { return std::pow(std::sin(p), N - 2); }, 0.0, pi);
        CHECK(wallis_integral(N) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("quadrature rules on known integrals")
{
    const double pi = std::numbers::pi;
    CHECK(integrate_singular([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0) ==
          doctest::Approx(2.0).epsilon(1e-12));
    auto cauchy = [](double x) { return 1.0 / (1.0 + x * x); };
    CHECK(integrate_half_line(cauchy) == doctest::Approx(pi / 2.0).epsilon(1e-13));
    CHECK(integrate_half_line_kronrod(cauchy) == doctest::Approx(pi / 2.0).epsilon(1e-13));
    auto expo = [](double x) { return std::exp(-x); };
    CHECK(integrate_half_line(expo) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(integrate_half_line_kronrod(expo) == doctest::Approx(1.0).epsilon(1e-13));
    const double breaks[] = {0.0, 0.5, 1.0, 2.0};
    CHECK(integrate_panels([](double x) { return x * x; }, breaks, 4) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
}
