#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rhls/kernel.hpp"
#include "rhls/special.hpp"

using namespace rhls;

TEST_CASE("angular kernel closed forms")
{
    const double pi = std::numbers::pi;
    CHECK(angular_kernel(1, 2.0, 1.0, 2.0) == doctest::Approx(20.0).epsilon(1e-14));
    for (auto [r, s] : {std::pair{0.3, 1.7}, std::pair{2.0, 2.0}, std::pair{5.0, 0.01}})
        CHECK(angular_kernel(3, 2.0, r, s) == doctest::Approx(16.0 * pi * pi * (r * r + s * s)).epsilon(1e-13));
}

TEST_CASE("sphere mean for lambda = 2 is r^2 + s^2 in every dimension")
{
    for (int N : {1, 2, 3, 4, 7})
        for (auto [r, s] : {std::pair{0.5, 1.5}, std::pair{1.0, 1.0}, std::pair{3.0, 0.2}})
            CHECK(sphere_mean_kernel(N, 2.0, r, s) == doctest::Approx(r * r + s * s).epsilon(1e-12));
}

TEST_CASE("sphere mean: symmetry and homogeneity")
{
    for (int N : {1, 2, 3, 4, 6})
        for (double lambda : {0.5, 1.0, 2.5, 4.0}) {
            const double k = sphere_mean_kernel(N, lambda, 0.7, 1.9);
            CHECK(k > 0.0);
            CHECK(sphere_mean_kernel(N, lambda, 1.9, 0.7) == doctest::Approx(k).epsilon(1e-13));
            CHECK(sphere_mean_kernel(N, lambda, 2.1, 5.7) == doctest::Approx(std::pow(3.0, lambda) * k).epsilon(1e-12));
        }
}

TEST_CASE("N = 3 sphere mean against the elementary antiderivative")
{
    for (double lambda : {0.5, 1.0, 3.0, 5.5})
        for (auto [r, s] : {std::pair{0.4, 1.0}, std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
            const double ref = (std::pow(r + s, lambda + 2) - std::pow(std::abs(r - s), lambda + 2)) /
                               (2.0 * r * s * (lambda + 2));
            CHECK(sphere_mean_kernel(3, lambda, r, s) == doctest::Approx(ref).epsilon(1e-12));
        }
}

TEST_CASE("N = 2 sphere mean against Monte Carlo over two circles")
{
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (auto [lambda, r, s] : {std::tuple{1.0, 1.0, 1.0}, std::tuple{3.0, 0.6, 1.3}, std::tuple{0.5, 2.0, 0.4}}) {
        const int n = 1000000;
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
            const double a = angle(rng), b = angle(rng);
            const double dx = r * std::cos(a) - s * std::cos(b), dy = r * std::sin(a) - s * std::sin(b);
            sum += std::pow(std::hypot(dx, dy), lambda);
        }
        CHECK(sphere_mean_kernel(2, lambda, r, s) == doctest::Approx(sum / n).epsilon(1e-3));
    }
    // r = s = 1, lambda = 1: mean of |2 sin(theta/2)| is 4/pi.
    CHECK(sphere_mean_kernel(2, 1.0, 1.0, 1.0) == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("high-dimensional sphere mean against direct polar quadrature")
{
    for (int N : {4, 5, 10})
        for (double lambda : {0.7, 3.3}) {
            const double r = 1.0, s = 0.8;
            const int n = 200000;
            double num = 0.0, den = 0.0;
            for (int k = 0; k < n; ++k) {
                const double phi = std::numbers::pi * (k + 0.5) / n;
                const double w = std::pow(std::sin(phi), N - 2);
                num += w * std::pow(r * r + s * s - 2.0 * r * s * std::cos(phi), 0.5 * lambda);
                den += w;
            }
            CHECK(sphere_mean_kernel(N, lambda, r, s) == doctest::Approx(num / den).epsilon(1e-8));
        }
}

TEST_CASE("kernel matrix is symmetric and cached")
{
    const RadialGrid g = RadialGrid::geometric(2, 10.0, 64, 1e-2);
    const auto k = kernel_matrix(g, 1.5);
    CHECK(kernel_matrix(g, 1.5) == k);
    for (std::size_t i = 0; i < g.size(); i += 7)
        for (std::size_t j = 0; j < g.size(); j += 5) {
            CHECK((*k)(i, j) == doctest::Approx((*k)(j, i)).epsilon(1e-14));
            CHECK((*k)(i, j) == doctest::Approx(sphere_mean_kernel(2, 1.5, g.centers()[i], g.centers()[j])).epsilon(1e-12));
        }
}
