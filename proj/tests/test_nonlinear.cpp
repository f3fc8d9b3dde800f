#include <doctest.h>

#include <cmath>

#include "tfl/nonlinear.hpp"

using namespace tfl;

TEST_CASE("N vanishes on zero and on traveling-wave shifts")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    CHECK(eval_N(GridFunction(g)).max_abs() == 0.0);
    const auto shift = GridFunction::of_x(g, [](double x) { return 0.02 * (3 * x * x + 2 * x); });
    CHECK(eval_N(shift).max_abs() < 1e-12 * shift.max_abs());
}

TEST_CASE("N against a symbolic evaluation")
{
    // u = 1e-2 x^2 e^{-x}; values from exact differentiation of the unsimplified operator
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    const auto N = eval_N(GridFunction::of_x(g, [](double x) { return 1e-2 * x * x * std::exp(-x); }));
    const struct {
        int i;
        double want;
    } refs[] = {{736, 2.9472917998814061e-5},
                {768, -9.2285495257013511e-5},
                {800, -2.7219707433111347e-5},
                {832, 5.0432439297768775e-5},
                {896, -1.3662929057226174e-6}};
    for (const auto& r : refs) CHECK(N[r.i] == doctest::Approx(r.want).epsilon(1e-5));
}

TEST_CASE("N is quadratically small")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    auto ratio = [&](double eps) {
        const auto w = GridFunction::of_x(g, [eps](double x) { return eps * x * x * std::exp(-x); });
        return weighted_norm(eval_N(w), NormSpec{0, 0.25}) / (eps * eps);
    };
    CHECK(ratio(1e-3) == doctest::Approx(ratio(1e-4)).epsilon(0.02));
}

TEST_CASE("von Mises guard")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 513);
    const auto big = GridFunction::of_x(g, [](double x) { return 5.0 * x * x * std::exp(-x); });
    CHECK_FALSE(lipschitz_guard(to_v(big)).ok);
    CHECK_THROWS_AS(eval_N(big), GuardError);
    CHECK(v_at_contact_line(GridFunction::of_x(g, [](double x) { return x; })) == doctest::Approx(0.5));
}

TEST_CASE("smooth cutoff")
{
    CHECK(smooth_cutoff(0.5) == 1.0);
    CHECK(smooth_cutoff(4.5) == 0.0);
    CHECK(smooth_cutoff(2.5) == doctest::Approx(0.5));
    CHECK(smooth_cutoff(2.0) > smooth_cutoff(3.0));
}

TEST_CASE("zero data stays on the traveling wave")
{
    const LogGrid g = LogGrid::make(-12.0, 6.0, 513);
    NonlinearOptions opt;
    opt.track_init_norm = false;
    const NonlinearState st = run_nonlinear(assemble(g), GridFunction(g), 0.05, 0.5, opt);
    for (const auto& u : st.traj.u) CHECK(u.max_abs() == 0.0);
    CHECK(st.contact_line.back() == doctest::Approx(3.0));
}

TEST_CASE("a small tapered perturbation decays and the contact line follows u1/2")
{
    const LogGrid g = LogGrid::make(-12.0, 6.0, 1025);
    const NonlinearState st = run_nonlinear(assemble(g), perturbation(g, 1e-3, true), 1e-2, 1.0, {});
    CHECK(st.init_norms.back() < st.init_norms.front());
    for (int p : st.picard_iterations) CHECK(p <= 5);
    const size_t j = st.traj.t.size() - 1;
    CHECK(extrapolated_contact_line(st.traj.u[j], st.traj.t[j]) == doctest::Approx(st.contact_line[j]).epsilon(1e-10));
}

TEST_CASE("film reconstruction agrees with the local expansion")
{
    const LogGrid g = LogGrid::make(-12.0, 6.0, 1025);
    const auto u = perturbation(g, 1e-3, true);
    const auto c = leading_coefficients(u);
    const double Y0 = 0.5 * c[0];
    const double y = Y0 + 1e-2;
    const auto rec = reconstruct(u, 0.0, {y});
    CHECK(rec.contact_line == doctest::Approx(Y0).epsilon(1e-10));
    CHECK(rec.samples[0].second == doctest::Approx(film_height(u, 0.0, y)).epsilon(1e-6));
    CHECK(film_height(u, 0.0, y) == doctest::Approx(h_expansion(y, 0.0, c[0], c[1], c[2])).epsilon(1e-5));
}

TEST_CASE("reconstruction of the unperturbed wave")
{
    const LogGrid g = LogGrid::make(-12.0, 4.0, 1025);
    const auto rec = reconstruct(GridFunction(g), 1.0, {6.5, 7.0, 9.0});
    for (const auto& [y, h] : rec.samples) {
        const double x = y - 6.0;
        CHECK(h == doctest::Approx(x * x * x + x * x).epsilon(1e-6));
    }
}

TEST_CASE("rescaling between physical and normalized variables")
{
    const double V = 2.5, nu = 0.7, x = 1.9;
    const FilmState phys{0.3, x, x, V / 6.0 * x * x * x + nu * x * x, 0.01, 0.02};
    const FilmState n = rescale(V, nu, RescaleDirection::to_normalized, phys);
    CHECK(n.h == doctest::Approx(n.x * n.x * n.x + n.x * n.x).epsilon(1e-13));
    const FilmState back = rescale(V, nu, RescaleDirection::from_normalized, n);
    CHECK(back.t == doctest::Approx(phys.t));
    CHECK(back.u == doctest::Approx(phys.u));
    CHECK(back.v == doctest::Approx(phys.v));
}
