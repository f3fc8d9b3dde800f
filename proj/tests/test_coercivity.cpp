#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "tfl/coercivity.hpp"

using namespace tfl;

TEST_CASE("quadratic-in-xi^2 symbol agrees with complex evaluation")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> a(-2.0, 4.0), x(-5.0, 5.0);
    for (const auto& P : canonical::all())
        for (int i = 0; i < 50; ++i) {
            const double al = a(rng), xi = x(rng);
            CHECK(symbol(P, al, xi) == doctest::Approx(symbol_complex(P, al, xi)).epsilon(1e-10));
        }
}

TEST_CASE("closed-form windows")
{
    const auto p = range_closed_form(canonical::p());
    REQUIRE(p.size() == 1);
    CHECK(p[0].lo == doctest::Approx(0.75 - 0.25 * std::sqrt(11.0 / 3.0)).epsilon(1e-12));
    CHECK(p[0].hi == doctest::Approx(1.0));
    CHECK(range_closed_form(canonical::q()).empty());
    const auto qt = range_closed_form(canonical::q_tilde());
    REQUIRE(qt.size() == 1);
    CHECK(qt[0].lo == doctest::Approx(1.0));
    CHECK(qt[0].hi == doctest::Approx(2.0));
    const auto ac = composite_range(Composite::A_check);
    REQUIRE(ac.size() == 1);
    CHECK(ac[0].lo == doctest::Approx(1.0 - std::sqrt(5.0 / 6.0)).epsilon(1e-12));
}

TEST_CASE("margin sign follows the numeric window")
{
    const auto P = canonical::p_tilde();
    const auto w = range_numeric(P, -2.0, 6.0, 4000);
    REQUIRE(w.size() == 1);
    CHECK(numeric_margin(P, 0.5 * (w[0].lo + w[0].hi)) > 0.0);
    CHECK(numeric_margin(P, w[0].lo - 0.05) < 0.0);
    CHECK(numeric_margin(P, w[0].hi + 0.05) < 0.0);
}

TEST_CASE("numeric scan is no narrower than the closed form")
{
    for (const auto& P : canonical::all()) {
        const auto r = coercivity_report(P);
        REQUIRE(r.closed.size() == r.numeric.size());
        for (size_t i = 0; i < r.closed.size(); ++i) {
            CHECK(r.numeric[i].lo <= r.closed[i].lo + 1e-9);
            CHECK(r.numeric[i].hi >= r.closed[i].hi - 1e-9);
        }
    }
}

TEST_CASE("interval discrepancy")
{
    CHECK(interval_discrepancy({{0, 1}}, {{0, 1}}) == 0.0);
    CHECK(interval_discrepancy({{0, 1}}, {{0.1, 1.2}}) == doctest::Approx(0.2));
    CHECK(interval_discrepancy({{0, 1}}, {}) == std::numeric_limits<double>::infinity());
}
