#include <doctest.h>

#include <cmath>

#include "tfl/resolvent.hpp"

using namespace tfl;

namespace {

GridFunction manufactured_rhs(const LogGrid& g)
{
    // (1 + A) x^2 e^{-x}
    return GridFunction::of_x(g, [](double x) {
        return x * x * std::exp(-x) +
               std::exp(-x) * (std::pow(x, 5) - 10 * std::pow(x, 4) + 20 * x * x * x + 6 * x * x - 12 * x);
    });
}

double rel_l2(const GridFunction& u)
{
    double num = 0.0, den = 0.0;
    for (int i = 0; i < u.size(); ++i) {
        const double x = u.grid.x(i), w = x * x * std::exp(-x);
        num += (u[i] - w) * (u[i] - w);
        den += w * w;
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("discrete A reproduces the manufactured forcing")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    const auto w = GridFunction::of_x(g, [](double x) { return x * x * std::exp(-x); });
    const auto aw = apply_operator(assemble(g), w);
    const auto f = manufactured_rhs(g);
    for (int i = 16; i < g.n - 16; i += 37) CHECK(aw[i] + w[i] == doctest::Approx(f[i]).epsilon(1e-5));
}

TEST_CASE("manufactured solution converges at fourth order")
{
    const double smax = far_field_s_max(1.0);
    double prev = 0.0;
    for (int n : {257, 513}) {
        const LogGrid g = LogGrid::make(-12.0, smax, n);
        const ResolventSolve r = solve(assemble(g), 1.0, manufactured_rhs(g));
        const double e = rel_l2(r.solution);
        if (prev > 0.0) CHECK(std::log2(prev / e) > 3.5);
        prev = e;
        CHECK(r.residual_norm < 1e-9);
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("one factorization serves several right-hand sides")
{
    const LogGrid g = LogGrid::make(-12.0, far_field_s_max(2.0), 513);
    const DiscreteOperator op = assemble(g);
    const ResolventFactor f(op, 2.0);
    const auto g1 = manufactured_rhs(g);
    const auto a = f.solve(g1);
    const auto b = f.solve(3.0 * g1);
    for (int i = 0; i < g.n; i += 31) CHECK(b[i] == doctest::Approx(3.0 * a[i]).epsilon(1e-12));
}

TEST_CASE("far-field decay rate")
{
    const LogGrid g = LogGrid::make(-12.0, far_field_s_max(1.0), 1025);
    const ResolventSolve r = solve(assemble(g), 1.0, manufactured_rhs(g));
    CHECK(r.decay.ok);
    CHECK(r.decay.rate > 0.55);
    CHECK(r.decay.rate < 0.85);
}

TEST_CASE("right-hand sides must vanish at the contact line")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 257);
    const auto bad = GridFunction::of_x(g, [](double x) { return std::exp(-x); });
    CHECK_THROWS_AS(solve(assemble(g), 1.0, bad), CompatibilityError);
}
