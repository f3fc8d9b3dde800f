#include <doctest.h>

#include <cmath>

#include "tfl/evolution.hpp"

using namespace tfl;

TEST_CASE("implicit Euler keeps x and x^2 fixed")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    const DiscreteOperator op = assemble(g);
    for (int pw : {1, 2}) {
        const auto w = GridFunction::of_x(g, [pw](double x) { return std::pow(x, pw); });
        const auto next = step(op, w, GridFunction(g), 1e-2);
        CHECK((next - w).max_abs() / w.max_abs() < 1e-9);
    }
}

TEST_CASE("monitored energy decreases along a linear run")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 513);
    const auto u0 = GridFunction::of_x(g, [](double x) { return x * x * x * std::exp(-x); });
    const EvolutionState st = run(assemble(g), u0, {}, 2e-2, 1.0);
    CHECK(st.traj.t.size() == 51);
    CHECK(st.energy_monotone());
    CHECK(st.energy_log.back().base < st.energy_log.front().base);
}

TEST_CASE("energy of a kernel element is zero")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 513);
    // (D - 1) x = 0
    const EnergyReading e = energy(GridFunction::of_x(g, [](double x) { return x; }), {});
    CHECK(e.base < 1e-10);
}

TEST_CASE("Simpson average of the forcing")
{
    const LogGrid g = LogGrid::make(-4.0, 2.0, 65);
    const RhsFunction f = [&](double t) { return t * t * GridFunction::of_x(g, [](double x) { return x; }); };
    const auto avg = average_rhs(f, 2, 0.5);
    // mean of t^2 over [0.5, 1]
    CHECK(avg[10] == doctest::Approx(7.0 / 12.0 * g.x(10)).epsilon(1e-13));
}

TEST_CASE("leading coefficients of a polynomial profile")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    const auto u = GridFunction::of_x(g, [](double x) { return (0.3 * x - 0.2 * x * x + 0.1 * x * x * x) * std::exp(-x * x); });
    const auto c = leading_coefficients(u);
    CHECK(c[0] == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(c[1] == doctest::Approx(-0.2).epsilon(1e-6));
    CHECK(c[2] == doctest::Approx(0.1 - 0.3).epsilon(1e-3));
}

TEST_CASE("PDE tracks follow the j = 1 coefficient relation")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    const auto u0 = GridFunction::of_x(g, [](double x) { return x * x * x * std::exp(-x); });
    const EvolutionState st = run(assemble(g), u0, {}, 1e-2, 1.0);
    CHECK(coefficient_track_defect(st) < 1e-2);
}
