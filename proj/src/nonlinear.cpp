#include "tfl/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

// pchip.hpp calls isnan unqualified
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/roots.hpp>

#include "tfl/fit.hpp"

namespace tfl {

namespace {

// x^k d^k v / dx^k for k = 1, 2, 3 as falling factorials of D.
struct XDerivatives {
    GridFunction d1, d2, d3;
};

XDerivatives x_derivatives(const GridFunction& v)
{
    const GridFunction D1 = d_derivative(v, 1);
    const GridFunction D2 = d_derivative(v, 2);
    const GridFunction D3 = d_derivative(v, 3);
    XDerivatives out{D1, D2 - D1, D3 - 3.0 * D2};
    out.d3 += 2.0 * D1;
    return out;
}

}  // namespace

GridFunction to_v(const GridFunction& u)
{
    GridFunction v(u.grid);
    for (int i = 0; i < u.size(); ++i) {
        const double x = u.grid.x(i);
        v.v[i] = u.v[i] / (3.0 * x * x + 2.0 * x);
    }
    return v;
}

double v_at_contact_line(const GridFunction& u)
{
    if (u.max_abs() == 0.0) return 0.0;
    return 0.5 * extract_coefficients(u, 3)[0];
}

LipschitzReport lipschitz_guard(const GridFunction& v, double threshold)
{
    LipschitzReport r;
    r.threshold = threshold;
    const GridFunction dv = d_derivative(v, 1);
    for (int i = 0; i < v.size(); ++i) r.sup_vx = std::max(r.sup_vx, std::abs(dv.v[i]) / v.grid.x(i));
    r.ok = std::isfinite(r.sup_vx) && r.sup_vx < threshold;
    return r;
}

GridFunction eval_N(const GridFunction& u, double threshold)
{
    const GridFunction v = to_v(u);
    const LipschitzReport guard = lipschitz_guard(v, threshold);
    if (!guard.ok)
        throw GuardError("von Mises guard: sup |v_x| = " + std::to_string(guard.sup_vx) + " exceeds " +
                         std::to_string(threshold));
    const XDerivatives xd = x_derivatives(v);
    GridFunction G(u.grid);
    for (int i = 0; i < u.size(); ++i) {
        const double x = u.grid.x(i);
        const double g = xd.d1.v[i] / x;
        const double g1 = xd.d2.v[i] / (x * x);
        const double g2 = xd.d3.v[i] / (x * x * x);
        const double a = 1.0 / (1.0 + g);
        const double P = 3.0 * x * x + 2.0 * x, P1 = 6.0 * x + 2.0, P2 = 6.0;

        // phi = a - 1, psi = g^2 a, with derivatives by the chain rule
        const double phi = -g * a;
        const double phi1 = -g1 * a * a;
        const double phi2 = -g2 * a * a + 2.0 * g1 * g1 * a * a * a;
        const double psi = g * g * a;
        const double psi1 = g1 * g * (2.0 + g) * a * a;
        const double psi2 = g2 * g * (2.0 + g) * a * a + 2.0 * g1 * g1 * a * a * a;

        const double phiP1 = phi1 * P + phi * P1;                          // (phi P)'
        const double phiP2 = phi2 * P + 2.0 * phi1 * P1 + phi * P2;        // (phi P)''
        const double inner = phi1 * phiP1 + phi * phiP2;                   // (phi (phi P)')'
        const double q1 = inner + phi * (phiP2 + phi1 * P1 + phi * P2 + inner);
        const double lin = psi2 * P + 3.0 * psi1 * P1 + 3.0 * P2 * psi;    // (psi P)'' + 6 psi + (psi P')'

        // every term is at least quadratic in v, so the linear part of A cancels exactly
        G.v[i] = (x * x * x + x * x) * (q1 + lin);
    }
    GridFunction N = d_derivative(G, 1);
    for (int i = 0; i < N.size(); ++i) N.v[i] /= u.grid.x(i);
    return N;
}

double smooth_cutoff(double x)
{
    auto f = [](double z) { return z > 0.0 ? std::exp(-1.0 / z) : 0.0; };
    const double a = f(4.0 - x), b = f(x - 1.0);
    return a / (a + b);
}

GridFunction perturbation(const LogGrid& g, double eps, bool taper)
{
    return GridFunction::of_x(g, [&](double x) {
        return eps * (3.0 * x * x + 2.0 * x) * (taper ? std::exp(-x) : smooth_cutoff(x));
    });
}

NonlinearState run_nonlinear(const DiscreteOperator& op, const GridFunction& u0, double dt, double T,
                             const NonlinearOptions& opt)
{
    if (!(dt > 0.0) || !(T > 0.0)) throw std::invalid_argument("run_nonlinear: dt and T must be positive");
    const long steps = std::lround(T / dt);
    if (steps < 1 || steps > 1000000) throw std::invalid_argument("run_nonlinear: T/dt must lie in [1, 1e6]");
    const LipschitzReport g0 = lipschitz_guard(to_v(u0), opt.threshold);
    if (!g0.ok) throw GuardError("initial data violates the von Mises guard: sup |v_x| = " + std::to_string(g0.sup_vx));

    NonlinearState st;
    st.dt = dt;
    st.T = steps * dt;
    st.monitor = opt.monitor;
    const ResolventFactor factor(op, 1.0 / dt);
    GridFunction u = u0;
    auto record = [&](double t, int iterations) {
        st.traj.t.push_back(t);
        st.traj.u.push_back(u);
        st.energy_log.push_back(energy(u, opt.monitor));
        st.coefficients.push_back(leading_coefficients(u));
        st.picard_iterations.push_back(iterations);
        st.sup_vx.push_back(lipschitz_guard(to_v(u), opt.threshold).sup_vx);
        st.contact_line.push_back(6.0 * t + 0.5 * st.coefficients.back()[0]);
        if (opt.track_init_norm) st.init_norms.push_back(u.max_abs() == 0.0 ? 0.0 : init_norm(u, 1, 3, 0.25));
    };
    record(0.0, 0);
    for (long j = 1; j <= steps; ++j) {
        GridFunction iterate = u;
        int it = 0;
        double change = 0.0;
        while (true) {
            ++it;
            GridFunction g = eval_N(iterate, opt.threshold);
            g += factor.lambda() * u;
            GridFunction next = factor.solve(g);
            change = (next - iterate).max_abs();
            iterate = std::move(next);
            if (change < opt.picard_tol) break;
            if (it >= opt.picard_max)
                throw PicardError("Picard iteration did not converge at t = " + std::to_string(j * dt) +
                                  " (last change " + std::to_string(change) +
                                  "); stability is only asserted for sufficiently small data");
        }
        u = std::move(iterate);
        record(j * dt, it);
    }
    return st;
}

FilmReconstruction reconstruct(const GridFunction& u, double t, const std::vector<double>& y_grid, double threshold)
{
    const GridFunction v = to_v(u);
    const LipschitzReport guard = lipschitz_guard(v, threshold);
    if (!guard.ok) throw GuardError("reconstruct: von Mises guard failed");
    FilmReconstruction rec;
    rec.t = t;
    const auto c = u.max_abs() == 0.0 ? std::array<double, 3>{0.0, 0.0, 0.0} : leading_coefficients(u);
    rec.u1 = c[0];
    rec.u2 = c[1];
    rec.contact_line = 6.0 * t + 0.5 * rec.u1;

    std::vector<double> ys{rec.contact_line}, hs{0.0};
    for (int i = 0; i < u.size(); ++i) {
        const double x = u.grid.x(i);
        const double Y = x + 6.0 * t + v.v[i];
        if (Y <= ys.back()) {
            // the first nodes sit within the fit tolerance of Y_0
            if (ys.size() > 8) throw GuardError("reconstruct: Y(t, x) is not monotone");
            continue;
        }
        ys.push_back(Y);
        hs.push_back(x * x * x + x * x);
    }
    const double y_hi = ys.back();
    boost::math::interpolators::pchip<std::vector<double>> interp(std::move(ys), std::move(hs));
    for (double y : y_grid) {
        if (y > y_hi) throw std::invalid_argument("reconstruct: y beyond the grid's far end");
        const double h = y <= rec.contact_line ? 0.0 : std::max(0.0, interp(y));
        rec.samples.emplace_back(y, h);
    }
    return rec;
}

double film_height(const GridFunction& u, double t, double y)
{
    const LogGrid& g = u.grid;
    const GridFunction v = to_v(u);
    auto Y = [&](int i) { return g.x(i) + 6.0 * t + v.v[i]; };
    if (y <= Y(0)) {
        if (y <= 6.0 * t + v_at_contact_line(u)) return 0.0;
        throw std::domain_error("film_height: y falls between the contact line and the first node");
    }
    if (y >= Y(g.n - 1)) throw std::domain_error("film_height: y beyond the far end of the grid");
    int lo = 0, hi = g.n - 1;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        (Y(mid) <= y ? lo : hi) = mid;
    }
    const int start = std::clamp(lo - 3, 0, g.n - 8);
    auto v_at = [&](double s) {
        double acc = 0.0;
        for (int a = 0; a < 8; ++a) {
            double l = 1.0;
            for (int b = 0; b < 8; ++b)
                if (b != a) l *= (s - g.s(start + b)) / (g.s(start + a) - g.s(start + b));
            acc += l * v.v[start + a];
        }
        return acc;
    };
    auto f = [&](double s) { return std::exp(s) + 6.0 * t + v_at(s) - y; };
    boost::uintmax_t iters = 100;
    const auto root = boost::math::tools::toms748_solve(f, g.s(lo), g.s(hi), f(g.s(lo)), f(g.s(hi)),
                                                        boost::math::tools::eps_tolerance<double>(52), iters);
    const double x = std::exp(0.5 * (root.first + root.second));
    return x * x * x + x * x;
}

double extrapolated_contact_line(const GridFunction& u, double t)
{
    const GridFunction v = to_v(u);
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (int i = 0; i < 12; ++i) {
        const double x = u.grid.x(i);
        rows.push_back({1.0, x, x * x});
        rhs.push_back(x + 6.0 * t + v.v[i]);
    }
    return least_squares(rows, rhs)[0];
}

double h_expansion(double y, double t, double u1, double u2, double u3)
{
    const double a = 1.0 + 0.5 * u2 - 0.75 * u1;
    const double z = (y - 6.0 * t - 0.5 * u1) / a;
    return z * z + (1.0 - u3 + 2.0 * u2 - 3.0 * u1) / a * z * z * z;
}

FilmState rescale(double V, double nu, RescaleDirection dir, const FilmState& s)
{
    if (!(V > 0.0) || !(nu > 0.0)) throw std::invalid_argument("rescale: V and nu must be positive");
    const double L = 6.0 * nu / V;              // length
    const double tau = 36.0 * nu / (V * V);     // time
    const double H = 36.0 * nu * nu * nu / (V * V);
    const double f = dir == RescaleDirection::to_normalized ? -1.0 : 1.0;
    FilmState o;
    o.t = s.t * std::pow(tau, f);
    o.x = s.x * std::pow(L, f);
    o.y = s.y * std::pow(L, f);
    o.h = s.h * std::pow(H, f);
    o.u = s.u * std::pow(nu * L * L, f);
    o.v = s.v * std::pow(L, f);
    return o;
}

}  // namespace tfl
