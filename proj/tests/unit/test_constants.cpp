#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "rhls/constants.hpp"
#include "rhls/params.hpp"

using namespace rhls;

TEST_CASE("alpha exponent")
{
    CHECK(alpha_exponent(1, 2.0, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(alpha_exponent(4, 2.0, 2.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(alpha_exponent(3, 4.0, 0.9) == doctest::Approx(-10.0).epsilon(1e-13));
    for (int N : {1, 2, 5})
        for (double lambda : {0.5, 2.0, 7.0})
            for (double q : {0.2, 0.55, 0.93}) {
                const Params p(N, lambda, q);
                CHECK(p.alpha + (2.0 - p.alpha) / q == doctest::Approx((2.0 * N + lambda) / N).epsilon(1e-13));
            }
    CHECK_THROWS(alpha_exponent(1, 2.0, 1.0));
    CHECK_THROWS(Params(0, 1.0, 0.5));
    CHECK_THROWS(Params(1, -1.0, 0.5));
}

TEST_CASE("threshold ordering")
{
    for (int N : {1, 2, 3, 4, 10})
        for (double lambda : {0.3, 1.0, 2.0, 3.5, 8.0}) {
            const Thresholds t = thresholds(N, lambda, false);
            CHECK(t.q_admissible < t.q_conformal);
            CHECK(t.q_conformal < 1.0);
            if (lambda >= 1.0)
                CHECK(t.q_explicit_bound < t.q_conformal);
        }
    CHECK(qbar_curve(4, 2.0) == 4.0 / 6.0);
    CHECK(qbar_curve(4, 3.0) > 4.0 / 7.0);
    CHECK(qbar_curve(4, 6.0) <= explicit_qbar_bound(4, 6.0));
}

TEST_CASE("closed-form constants")
{
    const double pi = std::numbers::pi;
    CHECK(conformal_constant(1, 2.0) == doctest::Approx(1.0 / (2.0 * pi * pi)).epsilon(1e-12));
    CHECK(lambda2_constant(1, 0.5) == doctest::Approx(1.0 / (2.0 * pi * pi)).epsilon(1e-12));
    CHECK_FALSE(closed_form_constant(2, 3.0, 0.6).has_value());
    CHECK(*closed_form_constant(2, 1.0, 0.8) == doctest::Approx(conformal_constant(2, 1.0)).epsilon(1e-15));
    // Where the families cross (lambda = 2 on the conformal line) both formulas agree.
    for (int N : {1, 2, 3, 6})
        CHECK(lambda2_constant(N, N / (N + 1.0)) == doctest::Approx(conformal_constant(N, 2.0)).epsilon(1e-12));
}

TEST_CASE("Carlson-Levin constant")
{
    CHECK(carlson_levin(1, 2.0, 0.5).constant == doctest::Approx(0.5 / std::numbers::pi).epsilon(1e-12));
    for (auto [N, lambda, q] : {std::tuple{1, 2.0, 0.5}, std::tuple{2, 1.0, 0.8}, std::tuple{3, 4.5, 0.7}}) {
        const CarlsonLevin cl = carlson_levin(N, lambda, q);
        CHECK(carlson_levin_quotient(cl.optimizer, N, lambda, q) == doctest::Approx(cl.constant).epsilon(1e-6));
        const AnalyticProfile box{"box", [](double r) { return r < 1.0 ? 1.0 : 0.0; }};
        CHECK(carlson_levin_quotient(box, N, lambda, q) > cl.constant * (1.0 + 1e-6));
        const AnalyticProfile gauss{"gauss", [](double r) { return std::exp(-r * r); }};
        CHECK(carlson_levin_quotient(gauss, N, lambda, q) > cl.constant);
    }
}

TEST_CASE("ball-pair ratio")
{
    for (int N : {1, 2, 3, 5})
        for (auto [R, S] : {std::pair{1.0, 0.3}, std::pair{2.0, 2.0}, std::pair{0.5, 4.0}})
            CHECK(ratio_F(N, 2.0, R, S) == doctest::Approx(1.0).epsilon(1e-10));
    for (int N : {1, 2, 3, 4, 10})
        CHECK(sup_ratio_A(N, 2.0).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(B_lower_bound(4, 4.0) == doctest::Approx(16.0 / 9.0).epsilon(1e-14));
    CHECK(sup_ratio_A(4, 4.0).value >= 16.0 / 9.0);
    for (int N : {1, 2, 7})
        CHECK(B_lower_bound(N, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("one-dimensional sup of F against brute-force double integrals")
{
    namespace bq = boost::math::quadrature;
    for (double lambda : {2.5, 3.0, 4.0}) {
        // (x, y) -> |x - y|^lambda over [-1, 1] x [-t, t], against the moment normalisation.
        auto F = [&](double t) {
            auto inner = [&](double x) {
                return bq::gauss_kronrod<double, 31>::integrate(
                    [&](double y) { return std::pow(std::abs(x - y), lambda); }, -t, t, 10, 1e-12);
            };
            const double num = bq::gauss_kronrod<double, 31>::integrate(inner, -1.0, 1.0, 10, 1e-12);
            const double mt = 2.0 * std::pow(t, lambda + 1) / (lambda + 1), m1 = 2.0 / (lambda + 1);
            return num / (2.0 * mt + 2.0 * t * m1);
        };
        double best = 0.0;
        for (int k = 1; k <= 400; ++k)
            best = std::max(best, F(k / 400.0));
        CHECK(ratio_F(1, lambda, 1.0, 0.37) == doctest::Approx(F(0.37)).epsilon(1e-8));
        CHECK(sup_ratio_A(1, lambda).value == doctest::Approx(best).epsilon(1e-4));
        CHECK(sup_ratio_A(1, lambda).value >= best * (1.0 - 1e-10));
    }
}

TEST_CASE("kappa star and the uniqueness region")
{
    CHECK(kappa_star(1, 2.0, 0.5) == doctest::Approx(1.5 * std::cbrt(2.0)).epsilon(1e-14));
    CHECK(kappa_star(1, 2.0, 0.999) > 50.0 * kappa_star(1, 2.0, 0.9));
    CHECK_THROWS(kappa_star(1, 0.5, 0.4));
    CHECK(uniqueness_region(4, 3.0, 0.9));
    CHECK(uniqueness_region(1, 1.0, 0.9));
    CHECK_FALSE(uniqueness_region(4, 6.0, 0.5));
    CHECK_FALSE(uniqueness_region(4, 3.0, 0.5));
}
