#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rhls/constants.hpp"
#include "rhls/energy.hpp"
#include "rhls/error.hpp"
#include "rhls/functionals.hpp"
#include "rhls/minimize.hpp"
#include "rhls/sampling.hpp"
#include "rhls/special.hpp"

using namespace rhls;

TEST_CASE("optimal Dirac mass")
{
    CHECK(optimal_dirac_mass(1.0, 1.0, 0.5) == 0.0);
    CHECK(optimal_dirac_mass(4.0, 1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(optimal_dirac_mass(2.0, 1.0, 0.5) == 0.0);
    CHECK(optimal_dirac_mass(5.0, 1.0, -0.5) == 0.0);
}

TEST_CASE("explicit lambda = 2 optimizer is an Euler-Lagrange fixed point")
{
    const Params p(1, 2.0, 0.5);
    // The truncated second moment leaves a residual of order 1 / r_max.
    const RadialGrid g = default_grid(p, 4096, 1e10);
    const AnalyticProfile opt{"opt", [](double r) { return std::pow(1.0 + r * r, -2.0); }};
    const RadialProfile f = opt.sample(g);
    const RelaxedMeasure m(f.scaled(1.0 / mass(f)), 0.0);
    ElDiagnostics d;
    const RelaxedMeasure next = el_iterate(m, p, 1.0, &d);
    CHECK(d.residual < 1e-8);
    CHECK(mass(next.profile()) + next.dirac_mass() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Euler-Lagrange steps descend on the lambda = 2 family")
{
    for (double q : {0.5, 0.7}) {
        const Params p(1, 2.0, q);
        const RadialGrid g = default_grid(p, 1024);
        const AnalyticProfile gauss{"gauss", [](double r) { return std::exp(-r * r); }};
        RelaxedMeasure m(gauss.sample(g), 0.2);
        double Q = quotient(m, p);
        for (int k = 0; k < 20; ++k) {
            m = el_iterate(m, p, 0.5);
            CHECK(mass(m.profile()) + m.dirac_mass() == doctest::Approx(1.0).epsilon(1e-13));
            const double Qn = quotient(m, p);
            CHECK(Qn <= Q + 1e-12);
            Q = Qn;
        }
    }
}

TEST_CASE("minimize_relaxed recovers the lambda = 2 constant")
{
    const Params p(1, 2.0, 0.7);
    const MinimizerReport r = minimize_relaxed(p);
    CHECK(r.converged);
    CHECK(r.estimate_C == doctest::Approx(lambda2_constant(1, 0.7)).epsilon(1e-2));
    CHECK(r.estimate_C == doctest::Approx(quotient(r.measure, p)).epsilon(1e-14));
    CHECK(r.classification == Classification::case1_bounded);
    CHECK(r.measure.dirac_mass() == 0.0);
    REQUIRE(r.predicted_rho0.has_value());
    CHECK(*r.predicted_rho0 == doctest::Approx(r.measure.profile()[0]).epsilon(1e-2));
    CHECK(r.virial_residual < 1e-3);
}

TEST_CASE("minimize_relaxed on the conformal line")
{
    const Params p(2, 1.0, 0.8);
    const MinimizerReport r = minimize_relaxed(p);
    CHECK(r.estimate_C == doctest::Approx(conformal_constant(2, 1.0)).epsilon(1e-2));
    CHECK(r.classification != Classification::case3_dirac);
}

TEST_CASE("degenerate parameters are rejected")
{
    CHECK_THROWS_AS(minimize_relaxed(Params(4, 2.0, 2.0 / 3.0)), DegenerateError);
    CHECK_THROWS_AS(minimize_relaxed(Params(4, 2.0, 0.6666666)), DegenerateError);
}

TEST_CASE("classification never reports a Dirac mass when alpha <= 0")
{
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        const int N = 1 + k % 3;
        const double lambda = 1.0 + 0.3 * k;
        const double q = 2.0 * N / (2.0 * N + lambda) + 0.05;
        const Params p(N, lambda, q);
        const RadialGrid g = RadialGrid::geometric(N, 50.0, 256, 1e-3);
        const RelaxedMeasure m(random_monotone_profile(g, rng), uniform(rng, 0.0, 1.0));
        const ClassificationResult c = classify_minimizer(m, p);
        CHECK(c.classification != Classification::case3_dirac);
        CHECK(c.test_quantity > 0.0);
    }
}

TEST_CASE("virial residual flags a non-stationary measure")
{
    const Params p(1, 2.0, 0.6);
    const RadialGrid g = default_grid(p, 1024);
    const AnalyticProfile box{"box", [](double r) { return r < 3.0 ? 1.0 : 0.0; }};
    const RelaxedMeasure m(box.sample(g), 0.0);
    CHECK_NOTHROW(classify_minimizer(m, p));
    CHECK(virial_residual(m, p) > 1e-2);
}

TEST_CASE("origin exponent fit")
{
    const RadialGrid g = RadialGrid::geometric(2, 10.0, 1024, 1e-6);
    const AnalyticProfile cube{"r^-3", [](double r) { return std::pow(r, -3.0); }};
    CHECK(fit_origin_exponent(cube.sample(g)) == doctest::Approx(-3.0).epsilon(1e-6));
    double prev = INFINITY;
    for (double r_inner : {1e-2, 1e-4, 1e-6}) {
        const RadialGrid h = RadialGrid::geometric(2, 10.0, 1024, r_inner);
        const AnalyticProfile bounded{"bounded", [](double r) { return std::pow(1.0 + r * r, -2.0); }};
        const double s = std::abs(fit_origin_exponent(bounded.sample(h)));
        CHECK(s < prev);
        prev = s;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("degenerate quotient curve")
{
    CHECK(degenerate_quotient_curve(1, 1.0, {std::exp(1.0)})[0] == doctest::Approx(0.5).epsilon(1e-6));
    const auto c = degenerate_quotient_curve(3, 2.0, {1e2, 1e3, 1e4, 1e5, 1e6});
    for (std::size_t k = 1; k < c.size(); ++k)
        CHECK(c[k] < c[k - 1]);
    CHECK(c.back() == doctest::Approx(std::pow(sphere_area(3) * std::log(1e6), -2.0 / 3.0)).epsilon(1e-3));
}

TEST_CASE("exchanging a point mass for a bump in two dimensions")
{
    const Params p(2, 3.0, 0.7);
    const RadialGrid g = default_grid(p, 2048);
    const RadialProfile f = carlson_levin(2, 3.0, 0.7).optimizer.sample(g);
    const RelaxedMeasure m(f.scaled(0.7 / mass(f)), 0.3);
    const AnalyticProfile sigma{"gauss", [](double r) { return std::exp(-r * r); }};
    const ExchangeProbe e = dirac_exchange_probe(m, p, sigma, {1e-2, 5e-3, 2.5e-3, 1.25e-3}, 0.1);
    CHECK(e.exchange_lowers);
    CHECK(e.predicts_no_dirac);
    CHECK(e.gain_exponent == doctest::Approx(2.0 * 0.3).epsilon(0.1));
    CHECK(e.cost_exponent == doctest::Approx(2.0).epsilon(0.1));
}
