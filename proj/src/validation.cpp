#include "tfl/validation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "tfl/fit.hpp"

namespace tfl {

ResidualReport tfe_residual(const Field& h, const std::vector<StencilPoint>& centers, double dt, double dy,
                            double floor_rel)
{
    if (!(dt > 0.0) || !(dy > 0.0)) throw std::invalid_argument("tfe_residual: spacings must be positive");
    struct Sampled {
        double residual;
        double min_h;
    };
    std::vector<Sampled> found;
    double peak = 0.0;
    for (const auto& c : centers) {
        double H[5][7];
        double min_h = INFINITY;
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 7; ++b) {
                const double v = h(c.t + (a - 2) * dt, c.y + (b - 3) * dy);
                if (!(v > 0.0))
                    throw StencilError("tfe_residual: stencil around (" + std::to_string(c.t) + ", " +
                                       std::to_string(c.y) + ") touches h = 0");
                H[a][b] = v;
                min_h = std::min(min_h, v);
                peak = std::max(peak, v);
            }
        const double* row = H[2];
        const double ht = (H[0][3] - 8.0 * H[1][3] + 8.0 * H[3][3] - H[4][3]) / (12.0 * dt);
        auto flux = [&](int b) {
            const double hyyy = (-row[b - 2] + 2.0 * row[b - 1] - 2.0 * row[b + 1] + row[b + 2]) / (2.0 * dy * dy * dy);
            return row[b] * hyyy;
        };
        const double fy = (flux(4) - flux(2)) / (2.0 * dy);
        found.push_back({ht + fy, min_h});
    }
    ResidualReport r;
    r.spacing = dy;
    double sq = 0.0;
    for (const auto& f : found) {
        if (f.min_h < floor_rel * peak) {
            ++r.skipped;
            continue;
        }
        ++r.evaluated;
        r.max_residual = std::max(r.max_residual, std::abs(f.residual));
        sq += f.residual * f.residual;
    }
    if (r.evaluated > 0) r.l2_residual = std::sqrt(sq / r.evaluated);
    return r;
}

double tw_ode_check(double V, double nu, const std::vector<double>& x_samples)
{
    auto H = [&](double x) { return V / 6.0 * x * x * x + nu * x * x; };
    auto dH = [&](double x) { return 0.5 * V * x * x + 2.0 * nu * x; };
    // third differences are exact on cubics; the forward one at 0 gives h_yyy at the contact line
    auto third = [&](double x0, double e) {
        return (H(x0 + 3 * e) - 3.0 * H(x0 + 2 * e) + 3.0 * H(x0 + e) - H(x0)) / (e * e * e);
    };
    const double scale = std::max(1.0, std::abs(V));
    double worst = std::max({std::abs(H(0.0)), std::abs(dH(0.0)), std::abs(third(0.0, 0.1) - V) / scale});
    for (double x : x_samples) {
        if (!(x > 0.0)) throw std::invalid_argument("tw_ode_check: samples must be positive");
        const double e = 0.1 * std::max(1.0, x);
        worst = std::max(worst, std::abs(third(x - 1.5 * e, e) - V) / scale);
    }
    return worst;
}

namespace special {

Field traveling_wave()
{
    return [](double t, double y) {
        const double x = y - 6.0 * t;
        return x > 0.0 ? x * x * x + x * x : 0.0;
    };
}

Field equilibrium()
{
    return [](double, double y) { return y > 0.0 ? y * y : 0.0; };
}

Field smyth_hill(double X)
{
    return [X](double t, double y) {
        const double sc = std::pow(t + 1.0, -0.2);
        const double x = sc * y;
        if (std::abs(x) >= X) return 0.0;
        const double w = x * x - X * X;
        return sc * w * w / 120.0;
    };
}

}  // namespace special

OrderStudy residual_order(const Field& h, const std::vector<StencilPoint>& centers, const std::vector<double>& dy,
                          double ratio)
{
    if (dy.size() < 2) throw std::invalid_argument("residual_order: need at least two spacings");
    OrderStudy st;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (double d : dy) {
        const ResidualReport r = tfe_residual(h, centers, ratio * d, d);
        st.spacings.push_back(d);
        st.residuals.push_back(r.max_residual);
        rows.push_back({1.0, std::log(d)});
        rhs.push_back(std::log(std::max(r.max_residual, 1e-300)));
    }
    st.order = least_squares(rows, rhs)[1];
    return st;
}

Field film_field(const NonlinearState& st)
{
    auto shared = std::make_shared<NonlinearState>(st);
    return [shared](double t, double y) {
        const auto& ts = shared->traj.t;
        const double dt = shared->dt;
        const long j = std::lround((t - ts.front()) / dt);
        if (j < 0 || j >= static_cast<long>(ts.size()) || std::abs(ts[j] - t) > 1e-9 * std::max(1.0, t))
            throw std::domain_error("film_field: t = " + std::to_string(t) + " is not a stored time");
        return film_height(shared->traj.u[j], t, y);
    };
}

}  // namespace tfl
