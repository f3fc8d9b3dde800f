#include <doctest.h>

#include <cmath>

#include "tfl/validation.hpp"

using namespace tfl;

TEST_CASE("traveling-wave ODE")
{
    CHECK(tw_ode_check(6.0, 1.0, {0.2, 1.0, 5.0}) < 1e-10);
    CHECK(tw_ode_check(1.0, 3.0, {0.2, 1.0, 5.0}) < 1e-10);
}

TEST_CASE("special solutions are consistent with the thin-film equation")
{
    const std::vector<double> dy{0.08, 0.04, 0.02};
    CHECK(residual_order(special::traveling_wave(), {{0.5, 6.0}}, dy, 0.25).order > 1.8);
    CHECK(residual_order(special::smyth_hill(), {{0.5, 0.3}}, dy, 0.25).order > 1.8);
    CHECK(tfe_residual(special::equilibrium(), {{0.5, 1.0}}, 0.01, 0.04).max_residual < 1e-9);
}

TEST_CASE("a field that is not a solution leaves a residual")
{
    const Field wrong = [](double t, double y) { return 1.0 + t + y * y * y * y; };
    CHECK(tfe_residual(wrong, {{0.5, 1.0}}, 0.005, 0.01).max_residual > 1.0);
}

TEST_CASE("non-positive heights are rejected; thin stencils are skipped")
{
    CHECK_THROWS_AS(tfe_residual(special::traveling_wave(), {{0.5, 3.0}}, 0.01, 0.02), StencilError);
    const Field thin = [](double, double y) { return 1e-9 + y * y; };
    const ResidualReport r = tfe_residual(thin, {{0.5, 10.0}, {0.5, 0.0}}, 0.01, 0.01);
    CHECK(r.evaluated == 1);
    CHECK(r.skipped == 1);
}

TEST_CASE("Smyth-Hill profile")
{
    const Field h = special::smyth_hill(1.0);
    CHECK(h(0.0, 0.0) == doctest::Approx(1.0 / 120.0));
    CHECK(h(0.0, 0.5) == doctest::Approx(0.5625 / 120.0));
    CHECK(h(0.0, 2.0) == 0.0);
}
