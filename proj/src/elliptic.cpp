#include "tfl/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "tfl/fit.hpp"

namespace tfl {

TailFit probe_left_decay(const GridFunction& f, double band)
{
    const LogGrid& g = f.grid;
    int m = 0;
    while (m < g.n && (g.s(m) <= g.s_min + band + 1e-12 || m < 8)) ++m;
    double fmax = 0.0;
    for (int i = 0; i < m; ++i) fmax = std::max(fmax, std::abs(f.v[i]));
    if (fmax == 0.0) return {};
    const double sign = f.v[0] >= 0.0 ? 1.0 : -1.0;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (int i = 0; i < m; ++i) {
        if (f.v[i] * sign <= 0.0) throw DecayProbeError("decay probe: integrand changes sign at the contact line");
        const double s = g.s(i);
        rows.push_back({1.0, s, std::exp(s)});
        rhs.push_back(std::log(std::abs(f.v[i])));
    }
    const auto c = least_squares(rows, rhs);
    if (!(c[1] > 0.0)) throw DecayProbeError("decay probe: integrand does not vanish at the contact line");
    return {sign * std::exp(c[0]), c[1], c[2]};
}

GridFunction cumulative_integral(const GridFunction& f)
{
    const LogGrid& g = f.grid;
    const double h = g.h();
    const TailFit t = probe_left_decay(f);
    double tail = 0.0;
    if (t.amplitude != 0.0) {
        const double s0 = g.s_min;
        tail = t.amplitude * (std::exp(t.gamma * s0) / t.gamma +
                              t.correction * std::exp((t.gamma + 1.0) * s0) / (t.gamma + 1.0));
    }
    const GridFunction df = d_derivative(f, 1);
    GridFunction out(g);
    double acc = 0.0;
    out.v[0] = tail;
    for (int i = 1; i < g.n; ++i) {
        acc += 0.5 * h * (f.v[i - 1] + f.v[i]);
        out.v[i] = tail + acc - h * h / 12.0 * (df.v[i] - df.v[0]);
    }
    return out;
}

GridFunction apply_A(const GridFunction& w)
{
    return apply_two_scale(canonical::p().coefficients(), canonical::q().coefficients(), w);
}

GridFunction apply_B(const GridFunction& w)
{
    // x(D-2)w + Dw = (x+1)^3 D[(x+1)^{-2} w], which keeps (x+1)^2 in the discrete kernel
    GridFunction r(w.grid);
    for (int i = 0; i < w.size(); ++i) r.v[i] = w.v[i] / std::pow(w.grid.x(i) + 1.0, 2);
    GridFunction out = d_derivative(r, 1);
    for (int i = 0; i < w.size(); ++i) out.v[i] *= std::pow(w.grid.x(i) + 1.0, 3);
    return out;
}

GridFunction apply_B_inverse(const GridFunction& f)
{
    GridFunction integrand(f.grid);
    for (int i = 0; i < f.size(); ++i) integrand.v[i] = f.v[i] / std::pow(f.grid.x(i) + 1.0, 3);
    GridFunction out = cumulative_integral(integrand);
    for (int i = 0; i < f.size(); ++i) out.v[i] *= std::pow(f.grid.x(i) + 1.0, 2);
    return out;
}

GridFunction apply_S(const GridFunction& g)
{
    const LogGrid& gr = g.grid;
    auto times_x = [&](GridFunction f) {
        for (int i = 0; i < gr.n; ++i) f.v[i] *= gr.x(i);
        return f;
    };
    // (x^3 + x^2) u''' = int_0^x g, then three integrations from the contact line
    GridFunction third = cumulative_integral(times_x(g));
    for (int i = 0; i < gr.n; ++i) {
        const double x = gr.x(i);
        third.v[i] /= x * x * (x + 1.0);
    }
    GridFunction second = cumulative_integral(times_x(third));
    GridFunction first = cumulative_integral(times_x(second));
    return cumulative_integral(times_x(first));
}

HardyResult hardy_check(const GridFunction& g, double gamma, int variant)
{
    if (variant < 1 || variant > 3) throw std::invalid_argument("hardy_check: variant must be 1..3");
    const int n = g.size();
    const double scale = std::max(g.max_abs(), 1e-300);
    for (int i = 0; i < 8; ++i)
        if (std::abs(g.v[i]) > 1e-14 * scale || std::abs(g.v[n - 1 - i]) > 1e-14 * scale)
            throw std::invalid_argument("hardy_check: support touches the grid boundary");
    const double shift = variant - 1;
    const double weight = gamma - 0.5 * shift;
    GridFunction dg = d_derivative(g, 1);
    for (int i = 0; i < n; ++i) dg.v[i] -= shift * g.v[i];
    const double lhs = std::pow(weighted_norm(dg, NormSpec{0, weight}), 2);
    const double rhs = std::pow(weighted_norm(g, NormSpec{0, weight}), 2);
    static constexpr std::array<double, 3> offsets{1.0, 2.5, 4.0};
    const double c = gamma - offsets[variant - 1];
    return {lhs, rhs, c * c};
}

double hardy_sharp_constant(double gamma, int variant)
{
    // g = e^{a s} h with a the weight exponent gives |(D - shift) g|^2 >= (a - shift)^2 |g|^2
    static constexpr std::array<double, 3> offsets{0.0, 1.5, 3.0};
    const double c = gamma - offsets[variant - 1];
    return c * c;
}

double smooth_bump(double z)
{
    if (std::abs(z) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - z * z));
}

HardySuiteResult hardy_suite(const LogGrid& g, int count, const std::vector<double>& gammas, std::uint64_t seed,
                             double rel_tol)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> center(-7.0, 0.0);
    std::uniform_real_distribution<double> width(0.5, 3.0);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    HardySuiteResult res;
    res.worst_ratio = res.worst_sharp_ratio = std::numeric_limits<double>::infinity();
    for (int c = 0; c < count; ++c) {
        std::array<double, 3> cs{}, ls{}, as{};
        for (int m = 0; m < 3; ++m) {
            cs[m] = center(rng);
            ls[m] = width(rng);
            as[m] = amp(rng);
        }
        const GridFunction fn = GridFunction::of_s(g, [&](double s) {
            double v = 0.0;
            for (int m = 0; m < 3; ++m) v += as[m] * smooth_bump((s - cs[m]) / ls[m]);
            return v;
        });
        for (int variant = 1; variant <= 3; ++variant) {
            for (double gamma : gammas) {
                const HardyResult r = hardy_check(fn, gamma, variant);
                const double sharp = hardy_sharp_constant(gamma, variant);
                ++res.cases;
                if (r.lhs < r.constant * r.rhs * (1.0 - rel_tol)) ++res.violations;
                if (r.lhs < sharp * r.rhs * (1.0 - rel_tol)) ++res.sharp_violations;
                if (r.constant > 0.0) res.worst_ratio = std::min(res.worst_ratio, r.lhs / (r.constant * r.rhs));
                if (sharp > 0.0) res.worst_sharp_ratio = std::min(res.worst_sharp_ratio, r.lhs / (sharp * r.rhs));
            }
        }
    }
    return res;
}

EllipticPair polynomial_elliptic_check(const PolynomialOperator& P, const GridFunction& w, double rho, int k)
{
    const int n = w.size();
    const double scale = std::max(w.max_abs(), 1e-300);
    for (int i = 0; i < 8; ++i)
        if (std::abs(w.v[i]) > 1e-12 * scale || std::abs(w.v[n - 1 - i]) > 1e-12 * scale)
            throw DecayProbeError("polynomial_elliptic_check: w does not vanish at the grid edges");
    const GridFunction pw = apply_poly(P.coefficients(), w);
    return {weighted_norm(w, NormSpec{k + 4, rho}), weighted_norm(pw, NormSpec{k, rho})};
}

}  // namespace tfl
