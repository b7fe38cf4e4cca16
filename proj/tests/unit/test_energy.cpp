#include <doctest.h>

#include <cmath>
#include <vector>
#include <numbers>

#include "rhls/constants.hpp"
#include "rhls/energy.hpp"
#include "rhls/functionals.hpp"
#include "rhls/minimize.hpp"
#include "rhls/profile.hpp"
#include "rhls/sampling.hpp"

using namespace rhls;

namespace {

RadialProfile indicator(std::size_t K)
{
    const RadialGrid g = RadialGrid::uniform(1, 2.0, K);
    std::vector<double> v(K);
    for (std::size_t i = 0; i < K; ++i)
        v[i] = g.centers()[i] < 1.0 ? 1.0 : 0.0;
    return RadialProfile(g, v);
}

}  // namespace

TEST_CASE("relaxed free energy examples")
{
    const Params p(1, 2.0, 0.5);
    const RadialProfile f = indicator(2000);
    CHECK(free_energy_relaxed(RelaxedMeasure(f, 0.0), p) == doctest::Approx(-10.0 / 3.0).epsilon(1e-6));
    const RadialProfile zero(f.grid(), std::vector<double>(f.size(), 0.0));
    CHECK(free_energy_relaxed(RelaxedMeasure(zero, 1.0), p) == 0.0);
    const double J = lambda_moment(f, 2.0);
    const double d = free_energy_relaxed(RelaxedMeasure(f, 1.5), p) - free_energy_relaxed(RelaxedMeasure(f, 0.5), p);
    CHECK(d == doctest::Approx(J / 2.0).epsilon(1e-12));
    CHECK(g_functional(RelaxedMeasure(f, 0.7), p) == doctest::Approx(free_energy_relaxed(RelaxedMeasure(f, 0.7), p)).epsilon(1e-14));
}

TEST_CASE("optimal rescale and the scaling reduction")
{
    const Params p(1, 2.0, 0.7);
    const RadialGrid g = default_grid(p);
    const CarlsonLevin cl = carlson_levin(1, 2.0, 0.7);
    const RadialProfile opt = cl.optimizer.sample(g);
    const Rescale r = optimal_rescale(opt, p);
    CHECK(r.ell_star > 0.0);
    const double C = lambda2_constant(1, 0.7);
    const double e = p.N * (1.0 - p.q) / (p.lambda - p.N * (1.0 - p.q));
    CHECK(r.min_energy == doctest::Approx(-kappa_star(1, 2.0, 0.7) * std::pow(C, -e)).epsilon(1e-4));
    const RelaxedMeasure unit = normalize_and_dilate(RelaxedMeasure(opt, 0.0), 1.0);
    CHECK(r.min_energy <= free_energy_relaxed(unit, p) + 1e-14);
    const RelaxedMeasure best(dilate_exact(unit.profile(), r.ell_star), 0.0);
    CHECK(optimal_rescale(best, p).ell_star == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(virial_residual(best, p) < 1e-10);
    CHECK(free_energy_relaxed(best, p) == doctest::Approx(r.min_energy).epsilon(1e-12));
    const EnergyReport rep = energy_report(best, p, C);
    CHECK(rep.free_energy >= *rep.lower_bound - 1e-6 * std::abs(*rep.lower_bound));
}

TEST_CASE("min energy is a minimum over dilations")
{
    Rng rng(0);
    const Params p(2, 3.0, 0.7);
    const RadialGrid g = RadialGrid::geometric(2, 50.0, 256, 1e-3);
    for (int k = 0; k < 10; ++k) {
        const RadialProfile f = random_monotone_profile(g, rng);
        const RelaxedMeasure unit = normalize_and_dilate(RelaxedMeasure(f, 0.0), 1.0);
        const Rescale r = optimal_rescale(f, p);
        for (double ell : {0.5, 0.9, 1.0, 1.3, 2.0})
            CHECK(r.min_energy <= free_energy_relaxed(RelaxedMeasure(dilate_exact(unit.profile(), ell), 0.0), p) + 1e-13);
    }
}

TEST_CASE("free energy is unbounded below at the admissible endpoint")
{
    // rho_R = |x|^{-(N+lambda)} on 1 <= |x| <= R has Q -> 0, so the optimal energy diverges.
    const int N = 1;
    const double lambda = 2.0, q = N / (N + lambda);
    const Params p(N, lambda, q);
    std::vector<double> e;
    for (double R : {1e2, 1e4, 1e6}) {
        const RadialGrid g = RadialGrid::geometric(N, 10.0 * R, 1024, 1e-2);
        const AnalyticProfile f{"rho_R", [=](double r) { return r >= 1.0 && r <= R ? std::pow(r, -(N + lambda)) : 0.0; }};
        e.push_back(optimal_rescale(f.sample(g), p).min_energy);
    }
    // Equal drops per factor of R: the energy falls linearly in log R without bound.
    CHECK(e[1] < e[0]);
    CHECK(e[2] - e[1] == doctest::Approx(e[1] - e[0]).epsilon(1e-2));
    CHECK(e[2] - e[1] < -1.0);
}

TEST_CASE("coercivity constant")
{
    const Params p(2, 3.0, 0.8);
    const double C = 0.05;
    const Coercivity c = coercivity(p, C);
    const double a = p.N * (1.0 - p.q) / p.lambda;
    const double foc = a * std::pow(c.argmax, a - 1.0) * std::pow(C, -a) / (1.0 - p.q) - 1.0 / (4.0 * p.lambda);
    CHECK(std::abs(foc) < 1e-12);
    CHECK(c.constant > 0.0);
    CHECK(coercivity_constant(p, C) == c.constant);
    // Scan oracle and monotonicity in C.
    double best = -INFINITY;
    for (int k = -4000; k <= 4000; ++k) {
        const double X = std::exp(k * 0.01);
        best = std::max(best, std::pow(X / C, a) / (1.0 - p.q) - X / (4.0 * p.lambda));
    }
    CHECK(c.constant == doctest::Approx(best).epsilon(1e-6));
    double prev = INFINITY;
    for (double Cv : {0.01, 0.1, 1.0, 10.0}) {
        const double k = coercivity_constant(p, Cv);
        CHECK(k < prev);
        prev = k;
    }
}

TEST_CASE("moment bound examples")
{
    const Params p(1, 2.0, 0.5);
    const RadialProfile f = indicator(2000);
    const MomentBound full = moment_bound_check(RelaxedMeasure(f, 0.0), p, 0.0, 3.0);
    CHECK(full.holds);
    CHECK(full.rhs <= 0.0);
    const MomentBound unit = moment_bound_check(RelaxedMeasure(f, 0.0), p, 0.0, 1.0);
    CHECK(unit.holds);
    CHECK(unit.rhs < 0.0);
    // Normalised to a probability measure: I = (8/3)/4.
    CHECK(unit.lhs == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}
