#include <doctest.h>

#include <cmath>

#include "tfl/elliptic.hpp"

using namespace tfl;

namespace {

double worst_rel(const GridFunction& got, const GridFunction& want, int margin)
{
    double e = 0.0;
    for (int i = margin; i < got.size() - margin; ++i) e = std::max(e, std::abs(got[i] - want[i]) / std::abs(want[i]));
    return e;
}

}  // namespace

TEST_CASE("B on monomials")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    for (int j = 1; j <= 4; ++j) {
        const auto xj = GridFunction::of_x(g, [j](double x) { return std::pow(x, j); });
        const auto image = GridFunction::of_x(g, [j](double x) { return (j - 2) * std::pow(x, j + 1) + j * std::pow(x, j); });
        CHECK(worst_rel(apply_B_inverse(image), xj, 0) < 1e-7);
    }
}

TEST_CASE("S inverts A on a known image")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    const auto img = GridFunction::of_x(g, [](double x) { return 18.0 * x * x + 12.0 * x; });
    const auto x3 = GridFunction::of_x(g, [](double x) { return x * x * x; });
    CHECK(worst_rel(apply_S(img), x3, 0) < 1e-7);
}

TEST_CASE("cumulative integral with fitted left tail")
{
    const LogGrid g = LogGrid::make(-10.0, 2.0, 769);
    const auto f = GridFunction::of_s(g, [](double s) { return std::exp(2.0 * s); });
    const auto F = cumulative_integral(f);
    for (int i : {0, 200, 768}) CHECK(F[i] == doctest::Approx(0.5 * std::exp(2.0 * g.s(i))).epsilon(1e-7));
}

TEST_CASE("left decay probe")
{
    const LogGrid g = LogGrid::make(-12.0, 2.0, 1025);
    const auto f = GridFunction::of_s(g, [](double s) { return 3.0 * std::exp(2.0 * s) * (1.0 + 0.5 * std::exp(s)); });
    const TailFit t = probe_left_decay(f);
    CHECK(t.gamma == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(t.amplitude == doctest::Approx(3.0).epsilon(1e-5));
    const auto flat = GridFunction::of_s(g, [](double) { return 1.0; });
    CHECK_THROWS_AS(probe_left_decay(flat), DecayProbeError);
}

TEST_CASE("Hardy inequalities hold with the sharp constants")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    const HardySuiteResult r = hardy_suite(g, 10, {0.25, 1.25, 2.25}, 11);
    CHECK(r.cases == 90);
    CHECK(r.sharp_violations == 0);
    CHECK(r.worst_sharp_ratio >= 1.0);
}

TEST_CASE("a single bump satisfies every sharp inequality")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    const auto w = GridFunction::of_s(g, [](double s) { return smooth_bump((s + 4.0) / 3.0); });
    for (int variant = 1; variant <= 3; ++variant)
        for (double gamma : {0.25, 1.25, 2.25}) {
            const HardyResult h = hardy_check(w, gamma, variant);
            CHECK(h.lhs >= hardy_sharp_constant(gamma, variant) * h.rhs * (1.0 - 1e-10));
        }
}

TEST_CASE("smooth bump")
{
    CHECK(smooth_bump(0.0) == doctest::Approx(1.0));
    CHECK(smooth_bump(1.0) == 0.0);
    CHECK(smooth_bump(-1.5) == 0.0);
}
