#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rhls/error.hpp"
#include "rhls/functionals.hpp"
#include "rhls/grid.hpp"
#include "rhls/io.hpp"
#include "rhls/profile.hpp"
#include "rhls/special.hpp"

using namespace rhls;

TEST_CASE("cell volumes tile the ball")
{
    for (int N : {1, 2, 3, 5}) {
        const RadialGrid g = RadialGrid::geometric(N, 40.0, 300, 1e-4);
        double sum = 0.0;
        for (double w : g.volumes()) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(ball_volume(N) * std::pow(40.0, N)).epsilon(1e-12));
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(g.edges()[i] < g.edges()[i + 1]);
    }
}

TEST_CASE("grid constructors validate input")
{
    CHECK_THROWS(RadialGrid::geometric(0, 1.0, 64, 1e-3));
    CHECK_THROWS(RadialGrid::geometric(1, 1.0, 64, 2.0));
    CHECK_THROWS(RadialGrid::from_edges(1, {0.0, 1.0, 0.5}));
    CHECK_THROWS(RadialProfile(RadialGrid::uniform(1, 1.0, 4), {1.0, -1.0, 1.0, 1.0}));
    CHECK_THROWS(RadialProfile(RadialGrid::uniform(1, 1.0, 4), {1.0, NAN, 1.0, 1.0}, true));
    CHECK_THROWS(RelaxedMeasure(RadialProfile(RadialGrid::uniform(1, 1.0, 2), {1.0, 0.0}), -1.0));
    const RelaxedMeasure empty(RadialProfile(RadialGrid::uniform(1, 1.0, 2), {0.0, 0.0}), 0.0);
    CHECK_THROWS_AS(quotient(empty, Params(1, 2.0, 0.5)), DegenerateError);
}

TEST_CASE("scaled grid and exact dilation")
{
    const RadialGrid g = RadialGrid::geometric(3, 20.0, 200, 1e-3);
    const AnalyticProfile gauss{"g", [](double r) { return std::exp(-r * r); }};
    const RadialProfile f = gauss.sample(g);
    const RadialProfile d = dilate_exact(f, 2.5);
    CHECK(d.grid().r_max() == doctest::Approx(50.0).epsilon(1e-14));
    CHECK(mass(d) == doctest::Approx(mass(f)).epsilon(1e-13));
    CHECK(lambda_moment(d, 2.0) == doctest::Approx(6.25 * lambda_moment(f, 2.0)).epsilon(1e-13));
}

TEST_CASE("centres determine geometric and uniform grids")
{
    for (const RadialGrid& g : {RadialGrid::geometric(2, 1e6, 512, 1e-2), RadialGrid::uniform(1, 10.0, 400),
                                RadialGrid::geometric(4, 30.0, 128, 1e-3).scaled(0.3)}) {
        const RadialGrid h = RadialGrid::from_centers(g.dim(), g.centers(), g.r_max());
        CHECK(h.geometric_begin() == g.geometric_begin());
        for (std::size_t i = 1; i <= g.size(); ++i)
            CHECK(h.edges()[i] == doctest::Approx(g.edges()[i]).epsilon(1e-13));
    }
}

TEST_CASE("profile CSV round trip")
{
    const RadialGrid g = RadialGrid::geometric(2, 100.0, 128, 1e-3);
    const AnalyticProfile f{"f", [](double r) { return 1.0 / (1.0 + r * r * r); }};
    const RelaxedMeasure m(f.sample(g), 0.25);
    std::stringstream ss;
    write_profile_csv(ss, m, 1.5, 0.7);
    const ProfileFile pf = read_profile_csv(ss);
    CHECK(pf.header.N == 2);
    CHECK(*pf.header.lambda == 1.5);
    CHECK(*pf.header.q == 0.7);
    CHECK(pf.header.K == 128);
    CHECK(pf.measure.dirac_mass() == 0.25);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(pf.measure.profile()[i] == m.profile()[i]);
        CHECK(pf.measure.grid().volumes()[i] == doctest::Approx(g.volumes()[i]).epsilon(1e-12));
    }
    std::stringstream bad("# N=2 R_max=1 K=3 dirac_mass=0\nr_center,value\n0.1,1\n");
    CHECK_THROWS(read_profile_csv(bad));
}
