#include <doctest.h>

#include <cmath>

#include "tfl/polyops.hpp"

using namespace tfl;

TEST_CASE("canonical quartics factor as printed")
{
    const auto p = canonical::p();
    CHECK(p.roots == std::array<double, 4>{0, 0, 1, 2});
    CHECK(canonical::q().roots == std::array<double, 4>{0, 1, 1, 2});
    // z^2 (z - 1)(z - 2) = z^4 - 3z^3 + 2z^2
    const auto c = p.coefficients();
    REQUIRE(c.size() == 5);
    CHECK(c[0] == 0.0);
    CHECK(c[1] == 0.0);
    CHECK(c[2] == 2.0);
    CHECK(c[3] == -3.0);
    CHECK(c[4] == 1.0);
    for (double z : {-1.3, 0.2, 2.7}) CHECK(p(z) == doctest::Approx(p.eval_expanded(z)).epsilon(1e-13));
}

TEST_CASE("mean and spread of the roots")
{
    CHECK(canonical::p().mean() == doctest::Approx(0.75));
    CHECK(canonical::p().sigma() == doctest::Approx(std::sqrt(11.0) / 4.0));
    CHECK(canonical::q_tilde().mean() == doctest::Approx(1.5));
}

TEST_CASE("monomial action of A")
{
    for (int j = 0; j <= 7; ++j) {
        const auto [pj, qj] = monomial_action(j);
        CHECK(pj == doctest::Approx(double(j) * j * (j - 1) * (j - 2)));
        CHECK(qj == doctest::Approx(double(j) * (j - 1) * (j - 1) * (j - 2)));
    }
    const auto [p3, q3] = monomial_action(3);
    CHECK(p3 == 18.0);
    CHECK(q3 == 12.0);
}

TEST_CASE("truncated coefficient system: the e3 ladder is linear in time")
{
    CoefficientVector cv = CoefficientVector::zeros(3);
    cv.u[2] = 1.0;
    const auto tr = integrate_coefficients(cv, {}, 0.05, 2.0);
    const size_t last = tr.t.size() - 1;
    CHECK(tr.t[last] == doctest::Approx(2.0));
    CHECK(tr.u[last][0] == doctest::Approx(-24.0).epsilon(1e-12));
    CHECK(tr.u[last][1] == doctest::Approx(-36.0).epsilon(1e-12));
}

TEST_CASE("forcing enters the lowest coefficient")
{
    CoefficientVector cv = CoefficientVector::zeros(2);
    const auto tr = integrate_coefficients(cv, [](double t) { return std::vector<double>{std::cos(t), 0.0}; }, 0.01, 1.0);
    CHECK(tr.u.back()[0] == doctest::Approx(std::sin(1.0)).epsilon(1e-9));
}
