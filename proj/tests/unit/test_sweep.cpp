#include <doctest.h>

#include <sstream>

#include "rhls/constants.hpp"
#include "rhls/sweep.hpp"

using namespace rhls;

TEST_CASE("region labels on special lines")
{
    const RegionLabels a = region_labels(4, 2.0, 2.0 / 3.0);
    CHECK(a.on_admissible_line);
    CHECK_FALSE(a.admissible);
    REQUIRE(a.q_bar.has_value());
    CHECK(*a.q_bar == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(a.on_qbar_curve);

    const RegionLabels u = region_labels(4, 3.0, 0.9);
    CHECK(u.admissible);
    CHECK(u.uniqueness);
    CHECK(u.above_conformal);

    const RegionLabels c = region_labels(2, 1.0, 0.8);
    CHECK(c.on_conformal_line);
    CHECK_FALSE(c.q_bar.has_value());

    const RegionLabels w = region_labels(4, 4.0, 0.45);
    CHECK(w.concentration_window);
    CHECK_FALSE(region_labels(2, 4.0, 0.45).concentration_window);
}

TEST_CASE("sweep spec validation")
{
    SweepSpec s;
    s.lambda = {1.0, 2.0, 1};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.lambda = {0.0, 2.0, 4};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.lambda = {1.0, 2.0, 4};
    s.q = {0.1, 1.0, 4};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.q = {0.1, 0.9, 4};
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("analytic sweep and outputs")
{
    SweepSpec s;
    s.N = 3;
    s.lambda = {1.0, 5.0, 5};
    s.q = {0.1, 0.9, 9};
    const auto pts = sweep_region(s, 2);
    REQUIRE(pts.size() == 45);
    CHECK(pts[0].lambda == 1.0);
    CHECK(pts[1].q == doctest::Approx(0.2));
    for (const auto& pt : pts)
        CHECK(pt.labels.admissible == (pt.q > 3.0 / (3.0 + pt.lambda)));

    std::ostringstream csv, svg;
    write_sweep_csv(csv, s, pts);
    const std::string text = csv.str();
    CHECK(text.find("lambda,q") == 0);
    int lines = 0;
    for (char ch : text)
        lines += ch == '\n';
    CHECK(lines == 46);
    write_sweep_svg(svg, s, pts);
    CHECK(svg.str().find("<svg") != std::string::npos);
    CHECK(svg.str().find("</svg>") != std::string::npos);
}

TEST_CASE("classification sweep at lambda = 2")
{
    SweepSpec s;
    s.N = 1;
    s.lambda = {2.0, 3.0, 2};
    s.q = {0.2, 0.8, 3};
    s.mode = SweepMode::minimize_classify;
    s.cells = 512;
    const auto pts = sweep_region(s, 2);
    REQUIRE(pts.size() == 6);
    // q = 0.2 sits below 1/3 and is recorded as a per-point failure.
    CHECK(pts[0].error.find("degenerate") != std::string::npos);
    for (int k = 1; k < 3; ++k) {
        CHECK(pts[k].error.empty());
        CHECK(pts[k].classification == "case1_bounded");
        CHECK(pts[k].dirac_mass == 0.0);
        CHECK(pts[k].estimate_C == doctest::Approx(lambda2_constant(1, pts[k].q)).epsilon(2e-2));
    }
}
