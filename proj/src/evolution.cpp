#include "tfl/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfl/polyops.hpp"

namespace tfl {

GridFunction average_rhs(const RhsFunction& f, int j, double dt)
{
    const double a = (j - 1) * dt;
    GridFunction out = f(a);
    out += 4.0 * f(a + 0.5 * dt);
    out += f(a + dt);
    out *= 1.0 / 6.0;
    return out;
}

GridFunction step(const ResolventFactor& factor, const GridFunction& u_prev, const GridFunction& f_avg)
{
    GridFunction g = f_avg;
    g += factor.lambda() * u_prev;
    return factor.solve(g);
}

GridFunction step(const DiscreteOperator& op, const GridFunction& u_prev, const GridFunction& f_avg, double dt)
{
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    return step(ResolventFactor(op, 1.0 / dt), u_prev, f_avg);
}

EnergyReading energy(const GridFunction& u, const EnergyMonitor& mon)
{
    GridFunction ut = d_derivative(u, 1);
    ut -= u;
    EnergyReading r;
    r.base = std::pow(weighted_norm(ut, NormSpec{0, mon.alpha_tilde}), 2);
    if (mon.k > 0) {
        GridFunction d = ut;
        for (int j = 0; j < mon.k;) {
            const int m = std::min(4, mon.k - j);
            d = d_derivative(d, m);
            j += m;
        }
        r.top = std::pow(weighted_norm(d, NormSpec{0, mon.alpha_tilde}), 2);
    } else {
        r.top = r.base;
    }
    return r;
}

std::array<double, 3> leading_coefficients(const GridFunction& u)
{
    if (u.max_abs() == 0.0) return {0.0, 0.0, 0.0};
    const auto c = extract_coefficients(u, 3, interior_window(u.grid));
    return {c[0], c[1], c[2]};
}

EvolutionState run(const DiscreteOperator& op, const GridFunction& u0, const RhsFunction& rhs, double dt, double T,
                   const EnergyMonitor& mon)
{
    if (!(dt > 0.0) || !(T > 0.0)) throw std::invalid_argument("run: dt and T must be positive");
    const long steps = std::lround(T / dt);
    if (steps < 1 || steps > 1000000) throw std::invalid_argument("run: T/dt must lie in [1, 1e6]");
    EvolutionState st;
    st.dt = dt;
    st.T = steps * dt;
    st.monitor = mon;
    const ResolventFactor factor(op, 1.0 / dt);
    GridFunction u = u0;
    auto record = [&](double t) {
        st.traj.t.push_back(t);
        st.traj.u.push_back(u);
        st.energy_log.push_back(energy(u, mon));
        st.coefficients.push_back(leading_coefficients(u));
    };
    record(0.0);
    const GridFunction zero(op.grid);
    for (long j = 1; j <= steps; ++j) {
        const GridFunction f = rhs ? average_rhs(rhs, static_cast<int>(j), dt) : zero;
        u = step(factor, u, f);
        record(j * dt);
        const double prev = st.energy_log[j - 1].base;
        if (!rhs && st.energy_log[j].base > prev * (1.0 + mon.slack) && st.energy_log[j].base > 0.0)
            st.energy_increase_steps.push_back(static_cast<int>(j));
    }
    return st;
}

double coefficient_track_defect(const EvolutionState& st, const std::function<double(double)>& f1)
{
    const size_t m = st.coefficients.size();
    if (m < 2) throw std::invalid_argument("coefficient_track_defect: need at least two steps");
    const double p2 = canonical::p()(2.0);
    const double q3 = canonical::q()(3.0);
    double worst = 0.0, scale = 0.0;
    // backward differences: the implicit step imposes the relation at the new time level
    for (size_t j = 1; j < m; ++j) {
        const double du1 = (st.coefficients[j][0] - st.coefficients[j - 1][0]) / st.dt;
        const double a = p2 * st.coefficients[j][1];
        const double b = q3 * st.coefficients[j][2];
        const double f = f1 ? f1(st.traj.t[j]) : 0.0;
        scale = std::max({scale, std::abs(du1), std::abs(a), std::abs(b), std::abs(f)});
        worst = std::max(worst, std::abs(du1 + a + b - f));
    }
    if (scale > 0.0) worst /= scale;
    return worst;
}

}  // namespace tfl
