#include <doctest.h>

#include <cmath>

#include "tfl/grid.hpp"
#include "tfl/norms.hpp"

using namespace tfl;

TEST_CASE("Fornberg weights")
{
    const auto w = fd_weights(0.0, {-1.0, 0.0, 1.0}, 2);
    CHECK(w[0] == doctest::Approx(1.0));
    CHECK(w[1] == doctest::Approx(-2.0));
    CHECK(w[2] == doctest::Approx(1.0));
    const auto d1 = fd_weights(0.0, {-2.0, -1.0, 0.0, 1.0, 2.0}, 1);
    CHECK(d1[0] == doctest::Approx(1.0 / 12.0));
    CHECK(d1[1] == doctest::Approx(-2.0 / 3.0));
}

TEST_CASE("D acts on powers of x by multiplication")
{
    const LogGrid g = LogGrid::make(-8.0, 3.0, 513);
    const auto w = GridFunction::of_x(g, [](double x) { return x * x; });
    for (int j = 1; j <= 4; ++j) {
        const auto d = d_derivative(w, j);
        for (int i : {100, 256, 400}) CHECK(d[i] == doctest::Approx(std::pow(2.0, j) * w[i]).epsilon(1e-6));
    }
}

TEST_CASE("weighted norm against the Gamma function")
{
    // |x e^{-x}|_{0,alpha}^2 = Gamma(2 - 2 alpha) / 2^{2 - 2 alpha}
    const LogGrid g = LogGrid::make(-16.0, 4.5, 2049);
    const auto w = GridFunction::of_x(g, [](double x) { return x * std::exp(-x); });
    for (double a : {0.0, 0.25, 0.5}) {
        const double want = std::sqrt(std::tgamma(2.0 - 2.0 * a) / std::pow(2.0, 2.0 - 2.0 * a));
        CHECK(weighted_norm(w, NormSpec{0, a}) == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("subtracting the expansion makes larger weights finite")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    // |w - 0.3x|_{0,1.25} is finite although |w|_{0,1.25} is not
    const auto w = GridFunction::of_x(g, [](double x) { return 0.3 * x * std::exp(-x); });
    NormSpec spec{0, 1.25, 1};
    spec.coeffs = {0.3};
    spec.tail_cut = kNormTailCut;
    const double got = weighted_norm(w, spec);
    // integral of x^{-2.5} (0.3 x (e^{-x} - 1))^2 dx / x over (0, e^4)
    double ref = 0.0;
    const int m = 200000;
    for (int i = 0; i < m; ++i) {
        const double s = -30.0 + 34.0 * (i + 0.5) / m, x = std::exp(s);
        const double f = 0.3 * x * std::expm1(-x);
        ref += std::exp(-2.5 * s) * f * f * 34.0 / m;
    }
    CHECK(got == doctest::Approx(std::sqrt(ref)).epsilon(1e-4));
}

TEST_CASE("expansion coefficients near the contact line")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    const auto w =
        GridFunction::of_x(g, [](double x) { return 0.3 * x - 0.2 * x * x + x * x * x * std::exp(-x); });
    const auto c = extract_coefficients(w, 3, interior_window(g));
    CHECK(c[0] == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(c[1] == doctest::Approx(-0.2).epsilon(1e-6));
    CHECK(c[2] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("trapezoid is exact for linear data")
{
    CHECK(trapezoid({0.0, 1.0, 2.0, 3.0}, 0.5) == doctest::Approx(2.25));
}

TEST_CASE("index sets")
{
    const auto I = index_set_I(1, 0.25);
    int base = 0, shifted = 0;
    for (const auto& it : I) (it.alpha == 0.25 ? base : shifted)++;
    CHECK(base == 3);     // (l, m) with l + m <= 1
    CHECK(shifted == 1);  // alpha = 1.25 allows only l = m = 0
    CHECK(index_set_J(1, 0.25).size() == 2 * I.size());
}

TEST_CASE("init norm registers a kernel shift")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    const auto w = GridFunction::of_x(g, [](double x) { return x * x * x * std::exp(-x); });
    const auto shifted = GridFunction::of_x(g, [](double x) { return 0.3 * x + x * x * x * std::exp(-x); });
    const double a = init_norm(w, 1, 3, 0.25), b = init_norm(shifted, 1, 3, 0.25);
    CHECK(a > 0.0);
    CHECK(b > a);
}
