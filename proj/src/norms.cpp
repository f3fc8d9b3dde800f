#include "tfl/norms.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

namespace tfl {

namespace {

void check_params(int N, double delta)
{
    if (N < 0 || N > 2) throw std::invalid_argument("composite norm: N must be 0, 1 or 2");
    if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("composite norm: delta must lie in (0, 1/2)");
}

int ifloor(double a) { return static_cast<int>(std::floor(a)); }

double term(const GridFunction& w, int k, double alpha, int sub)
{
    if (sub > 5) throw std::invalid_argument("composite norm: expansion order above 5");
    NormSpec spec{k, alpha, std::max(sub, 0), {}, kNormTailCut, w.grid.s_max - kFarFieldLayer};
    // coefficients from the window the tail closure sees, not the extreme left edge
    if (spec.sub > 0 && w.max_abs() > 0.0) spec.coeffs = extract_coefficients(w, spec.sub, interior_window(w.grid));
    const double v = weighted_norm(w, spec);
    return v * v;
}

// Second-order differences on a uniform time grid, one-sided at the ends.
std::vector<GridFunction> differentiate(const std::vector<GridFunction>& u, double dt)
{
    const int m = static_cast<int>(u.size());
    std::vector<GridFunction> out(m, GridFunction(u[0].grid));
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < u[0].size(); ++i) {
            double d;
            if (j == 0)
                d = (-3.0 * u[0].v[i] + 4.0 * u[1].v[i] - u[2].v[i]) / (2.0 * dt);
            else if (j == m - 1)
                d = (3.0 * u[m - 1].v[i] - 4.0 * u[m - 2].v[i] + u[m - 3].v[i]) / (2.0 * dt);
            else
                d = (u[j + 1].v[i] - u[j - 1].v[i]) / (2.0 * dt);
            out[j].v[i] = d;
        }
    }
    return out;
}

double trapezoid_time(const std::vector<double>& t, const std::vector<double>& f)
{
    double acc = 0.0;
    for (size_t j = 1; j < t.size(); ++j) acc += 0.5 * (t[j] - t[j - 1]) * (f[j] + f[j - 1]);
    return acc;
}

struct TrajectoryCache {
    const Trajectory& traj;
    std::vector<std::vector<GridFunction>> plain;
    std::vector<std::vector<GridFunction>> under;

    const std::vector<GridFunction>& get(int l, bool underlined)
    {
        auto& cache = underlined ? under : plain;
        while (static_cast<int>(cache.size()) <= l) {
            if (cache.empty()) {
                std::vector<GridFunction> base = traj.u;
                if (underlined)
                    for (auto& g : base) g = underline(g);
                cache.push_back(std::move(base));
            } else {
                cache.push_back(differentiate(cache.back(), traj.t[1] - traj.t[0]));
            }
        }
        return cache[l];
    }
};

void check_trajectory(const Trajectory& traj, int max_l)
{
    if (traj.u.size() != traj.t.size() || traj.u.empty())
        throw std::invalid_argument("composite norm: malformed trajectory");
    if (max_l > 0 && traj.u.size() < 3)
        throw std::invalid_argument("composite norm: trajectory too short for time differences");
    for (size_t j = 1; j < traj.t.size(); ++j) {
        const double dt = traj.t[1] - traj.t[0];
        if (!(dt > 0.0) || std::abs(traj.t[j] - traj.t[j - 1] - dt) > 1e-9 * dt)
            throw std::invalid_argument("composite norm: time steps must be uniform");
    }
}

}  // namespace

std::vector<IndexTriple> index_set_I(int N, double delta)
{
    std::vector<IndexTriple> out;
    for (double alpha : {delta, 1.0 + delta}) {
        const int top = N - ifloor(alpha);
        for (int l = 0; l <= top; ++l)
            for (int m = 0; l + m <= top; ++m) out.push_back({alpha, l, m});
    }
    return out;
}

std::vector<IndexTriple> index_set_J(int N, double delta)
{
    auto out = index_set_I(N, delta);
    for (const auto& it : index_set_I(N, delta)) out.push_back({it.alpha - 0.5, it.l, it.m});
    return out;
}

GridFunction underline(const GridFunction& w)
{
    GridFunction out(w.grid);
    for (int i = 0; i < w.size(); ++i) out.v[i] = w.v[i] / (w.grid.x(i) + 1.0);
    return out;
}

double init_norm(const GridFunction& u0, int N, int k, double delta)
{
    check_params(N, delta);
    // (weight, subtracted order); repeated index entries contribute once
    std::set<std::pair<double, int>> terms;
    for (const auto& it : index_set_I(N, delta))
        for (int r = 0; r <= it.m; ++r) terms.insert({it.alpha + it.m + r, ifloor(it.alpha) + it.m + r});
    double total = 0.0;
    for (const auto& [alpha, sub] : terms) total += term(u0, k + 4 * N + 1, alpha, sub);
    return std::sqrt(total);
}

CompositeNormReport composite_norm(const Trajectory& traj, CompositeKind which, int N, int k, double delta)
{
    check_params(N, delta);
    CompositeNormReport rep;
    rep.horizon = traj.horizon();
    if (which == CompositeKind::init) {
        if (traj.u.empty()) throw std::invalid_argument("composite norm: empty trajectory");
        rep.value = init_norm(traj.u.front(), N, k, delta);
        return rep;
    }
    check_trajectory(traj, N + 1);
    TrajectoryCache cache{traj, {}, {}};
    const auto I = index_set_I(N, delta);
    const auto J = index_set_J(N, delta);
    const int steps = static_cast<int>(traj.u.size());

    std::set<std::tuple<int, bool, int, double, int>> sups, integrals;
    if (which == CompositeKind::sol) {
        for (const auto& it : I)
            for (int r = 0; r <= it.m; ++r)
                sups.insert({it.l, false, k + 4 * (N - it.l) + 1, it.alpha + it.m + r, ifloor(it.alpha) + it.m + r});
        for (const auto& it : J)
            for (int r = 0; r <= it.m; ++r) {
                integrals.insert({it.l + 1, true, k + 4 * (N - it.l) - 1, it.alpha + it.m + r - 1,
                                  ifloor(it.alpha) + it.m + r - 1});
                integrals.insert({it.l, false, k + 4 * (N - it.l) + 3, it.alpha + it.m + r + 1,
                                  ifloor(it.alpha) + it.m + r + 1});
            }
    } else {
        if (N >= 1)
            for (const auto& it : index_set_I(N - 1, delta))
                for (int r = 0; r <= it.m; ++r)
                    sups.insert({it.l, false, k + 4 * (N - it.l) - 3, it.alpha + it.m + r,
                                 ifloor(it.alpha) + it.m + r});
        for (const auto& it : J)
            for (int r = 0; r <= it.m; ++r)
                integrals.insert({it.l, true, k + 4 * (N - it.l) - 1, it.alpha + it.m + r - 1,
                                  ifloor(it.alpha) + it.m + r - 1});
    }

    double total = 0.0;
    for (const auto& [l, under, kk, alpha, sub] : sups) {
        const auto& f = cache.get(l, under);
        double best = 0.0;
        for (int j = 0; j < steps; ++j) best = std::max(best, term(f[j], kk, alpha, sub));
        total += best;
    }
    for (const auto& [l, under, kk, alpha, sub] : integrals) {
        const auto& f = cache.get(l, under);
        std::vector<double> vals(steps);
        for (int j = 0; j < steps; ++j) vals[j] = term(f[j], kk, alpha, sub);
        total += trapezoid_time(traj.t, vals);
    }
    rep.value = std::sqrt(total);
    rep.terms = static_cast<int>(sups.size() + integrals.size());
    return rep;
}

std::vector<GridFunction> time_derivative(const Trajectory& traj, int l)
{
    check_trajectory(traj, l);
    TrajectoryCache cache{traj, {}, {}};
    return cache.get(l, false);
}

}  // namespace tfl
