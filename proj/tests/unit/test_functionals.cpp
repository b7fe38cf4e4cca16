#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rhls/constants.hpp"
#include "rhls/error.hpp"
#include "rhls/functionals.hpp"
#include "rhls/sampling.hpp"

using namespace rhls;

namespace {

RadialProfile indicator(int N, std::size_t K, double R = 2.0)
{
    const RadialGrid g = RadialGrid::uniform(N, R, K);
    std::vector<double> v(K);
    for (std::size_t i = 0; i < K; ++i)
        v[i] = g.centers()[i] < 1.0 ? 1.0 : 0.0;
    return RadialProfile(g, v);
}

}  // namespace

TEST_CASE("moments of the interval indicator")
{
    const RadialProfile f = indicator(1, 2000);
    CHECK(mass(f) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(lambda_moment(f, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(lq_integral(f, 0.5) == doctest::Approx(2.0).epsilon(1e-13));
    const Params p(1, 2.0, 0.5);
    const Moments m = moments(RelaxedMeasure(f, 3.0), p);
    CHECK(m.mass == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(m.lambda_moment == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(m.lq_integral == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("moments of the unit ball in three dimensions")
{
    const RadialProfile f = indicator(3, 4000);
    CHECK(mass(f) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-12));
    CHECK(lambda_moment(f, 2.0) == doctest::Approx(4.0 * std::numbers::pi / 5.0).epsilon(1e-6));
}

TEST_CASE("interaction energy of the interval indicator")
{
    const RadialProfile f = indicator(1, 2000);
    CHECK(interaction_energy(f, 2.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-6));
    CHECK(interaction_energy(f, 1.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-5));
    CHECK(relaxed_interaction(RelaxedMeasure(f, 1.0), 2.0) == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(relaxed_interaction(RelaxedMeasure(f, 0.0), 2.0) == interaction_energy(f, 2.0));
    const RadialProfile zero(f.grid(), std::vector<double>(f.size(), 0.0));
    CHECK(interaction_energy(zero, 2.0) == 0.0);
    CHECK(relaxed_interaction(RelaxedMeasure(zero, 2.0), 3.0) == 0.0);
}

TEST_CASE("potential of the interval indicator is r^2 + 1/3")
{
    const RadialProfile f = indicator(1, 2000);
    const std::vector<double> at{0.0, 0.25, 1.0, 3.0};
    const auto V = potential(f, 0.0, 2.0, at);
    for (std::size_t k = 0; k < at.size(); ++k)
        CHECK(V[k] == doctest::Approx(at[k] * at[k] + 1.0 / 3.0).epsilon(1e-6));
    const RadialProfile zero(f.grid(), std::vector<double>(f.size(), 0.0));
    const auto W = potential(zero, 1.0, 3.0, at);
    for (std::size_t k = 0; k < at.size(); ++k)
        CHECK(W[k] == doctest::Approx(std::pow(at[k], 3.0) / 3.0).epsilon(1e-14));
    const auto Vc = potential_at_centers(f, 0.0, 2.0);
    for (std::size_t i = 0; i < f.size(); i += 97)
        CHECK(Vc[i] == doctest::Approx(std::pow(f.grid().centers()[i], 2) + 1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("quotient examples and invariances")
{
    const Params p(1, 2.0, 0.5);
    CHECK(quotient(RelaxedMeasure(indicator(1, 2000), 0.0), p) == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
    const RadialGrid g = RadialGrid::geometric(1, 1e5, 2048, 1e-4);
    const AnalyticProfile opt{"opt", [](double r) { return std::pow(1.0 + r * r, -2.0); }};
    CHECK(quotient(RelaxedMeasure(opt.sample(g), 0.0), p) ==
          doctest::Approx(1.0 / (2.0 * std::numbers::pi * std::numbers::pi)).epsilon(1e-4));
    const RelaxedMeasure m(opt.sample(g), 0.3);
    const Params p2(2, 3.0, 0.7);
    const double Q = quotient(m, p2);
    CHECK(quotient(RelaxedMeasure(m.profile().scaled(4.5), 4.5 * 0.3), p2) == doctest::Approx(Q).epsilon(1e-13));
    const RadialProfile zero(g, std::vector<double>(g.size(), 0.0));
    CHECK_THROWS_AS(quotient(RelaxedMeasure(zero, 1.0), p), DegenerateError);
}

TEST_CASE("bilinearity, lambda = 2 identity and the rearrangement bounds")
{
    Rng rng(0);
    for (int k = 0; k < 20; ++k) {
        const int N = 1 + k % 4;
        const RadialGrid g = RadialGrid::geometric(N, 30.0, 160, 1e-3);
        const RadialProfile f = random_monotone_profile(g, rng);
        const RadialProfile h = random_zero_mass_profile(g, rng);
        const double lambda = 0.5 + 0.25 * k;
        std::vector<double> s(g.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] = f[i] + h[i];
        const RadialProfile sum(g, s, true);
        const double lhs = interaction_energy(sum, lambda);
        const double rhs = interaction_energy(f, lambda) + 2.0 * bilinear_interaction(f, h, lambda) +
                           interaction_energy(h, lambda);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        CHECK(bilinear_interaction(f, h, lambda) == doctest::Approx(bilinear_interaction(h, f, lambda)).epsilon(1e-13));
        CHECK(interaction_energy(f, 2.0) == doctest::Approx(2.0 * mass(f) * lambda_moment(f, 2.0)).epsilon(1e-12));
        CHECK(interaction_energy(f, lambda) >= lambda_moment(f, lambda) * mass(f));
        if (lambda >= 1.0)
            CHECK(interaction_energy(f, lambda) <= std::pow(2.0, lambda) * lambda_moment(f, lambda) * mass(f));
    }
}

TEST_CASE("quotient dominates the closed-form constant on random profiles")
{
    Rng rng(1);
    const struct {
        int N;
        double lambda, q;
    } pts[] = {{1, 2.0, 0.5}, {1, 2.0, 0.7}, {3, 2.0, 0.8}, {2, 1.0, 0.8}, {3, 4.0, 0.6}};
    for (const auto& pt : pts) {
        const Params p(pt.N, pt.lambda, pt.q);
        const double C = *closed_form_constant(pt.N, pt.lambda, pt.q);
        const RadialGrid g = RadialGrid::geometric(pt.N, 50.0, 256, 1e-3);
        for (int k = 0; k < 20; ++k)
            CHECK(quotient(RelaxedMeasure(random_nonnegative_profile(g, rng), 0.0), p) >= C);
    }
}
