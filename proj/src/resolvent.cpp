#include "tfl/resolvent.hpp"

#include <algorithm>
#include <cmath>

#include "tfl/fit.hpp"
#include "tfl/polyops.hpp"

namespace tfl {

namespace {

void add_scaled(SparseRow& row, int start, const std::vector<real_ext>& w, real_ext c)
{
    if (c == 0) return;
    const int len = static_cast<int>(w.size());
    if (row.w.empty()) {
        row.start = start;
        row.w.assign(len, 0);
    }
    const int lo = std::min(row.start, start);
    const int hi = std::max(row.start + static_cast<int>(row.w.size()), start + len);
    if (lo < row.start || hi > row.start + static_cast<int>(row.w.size())) {
        std::vector<real_ext> grown(hi - lo, 0);
        for (size_t k = 0; k < row.w.size(); ++k) grown[row.start - lo + k] = row.w[k];
        row.start = lo;
        row.w = std::move(grown);
    }
    for (int k = 0; k < len; ++k) row.w[start - row.start + k] += c * w[k];
}

// Same footprints as derivative_rows, weights in extended precision.
void stencil(const LogGrid& g, int j, int node, int& start, std::vector<real_ext>& w)
{
    const int hw = j <= 2 ? 2 : 3;
    int len = 2 * hw + 1;
    start = node - hw;
    if (start < 0 || node + hw >= g.n) {
        len = j + 4;
        start = node < g.n / 2 ? 0 : g.n - len;
    }
    std::vector<real_ext> nodes(len);
    for (int k = 0; k < len; ++k) nodes[k] = start + k;
    w = fornberg<real_ext>(node, nodes, j);
    const real_ext h = (static_cast<real_ext>(g.s_max) - g.s_min) / (g.n - 1);
    real_ext scale = 1;
    for (int k = 0; k < j; ++k) scale /= h;
    for (auto& a : w) a *= scale;
}

real_ext node_x(const LogGrid& g, int i)
{
    const real_ext h = (static_cast<real_ext>(g.s_max) - g.s_min) / (g.n - 1);
    return std::exp(static_cast<real_ext>(g.s_min) + i * h);
}

// prod_g (E - e^{g h}) acting on u_start, u_start+1, ...
SparseRow annihilator(const LogGrid& grid, const std::vector<double>& gammas, int start)
{
    const real_ext h = (static_cast<real_ext>(grid.s_max) - grid.s_min) / (grid.n - 1);
    std::vector<real_ext> c{1};
    for (double g : gammas) {
        const real_ext r = std::exp(g * h);
        std::vector<real_ext> next(c.size() + 1, 0);
        for (size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return SparseRow{start, std::move(c)};
}

}  // namespace

DiscreteOperator assemble(const LogGrid& grid)
{
    if (grid.n < 64) throw std::invalid_argument("assemble: need at least 64 nodes");
    DiscreteOperator op;
    op.grid = grid;
    const int n = grid.n;
    op.rows.resize(n);
    op.mass.assign(n, 0);
    const auto pc = canonical::p().coefficients();
    const auto qc = canonical::q().coefficients();
    std::vector<real_ext> w;
    int start = 0;
    for (int i = 2; i < n - 2; ++i) {
        const real_ext x = node_x(grid, i);
        for (int j = 1; j <= 4; ++j) {
            stencil(grid, j, i, start, w);
            add_scaled(op.rows[i], start, w, x * pc[j] + qc[j]);
        }
        op.mass[i] = x * x;
    }
    // Closure rows are discrete annihilators, so x and x^2 satisfy them identically.
    // contact line: (D-1)(D-2)u = D(D-1)(D-2)u = 0 rules out 1 and x ln x
    op.rows[0] = annihilator(grid, {1.0, 2.0}, 0);
    op.rows[1] = annihilator(grid, {0.0, 1.0, 2.0}, 0);
    // far field: x^3 u''' = x^4 u'''' = 0
    op.rows[n - 2] = annihilator(grid, {0.0, 1.0, 2.0}, n - 4);
    op.rows[n - 1] = annihilator(grid, {0.0, 1.0, 2.0, 3.0}, n - 5);
    int kl = 0, ku = 0;
    for (int i = 0; i < n; ++i) {
        kl = std::max(kl, i - op.rows[i].start);
        ku = std::max(ku, op.rows[i].start + static_cast<int>(op.rows[i].w.size()) - 1 - i);
    }
    op.kl = kl;
    op.ku = ku;
    return op;
}

GridFunction apply_operator(const DiscreteOperator& op, const GridFunction& w)
{
    if (!(w.grid == op.grid)) throw std::invalid_argument("apply_operator: grid mismatch");
    GridFunction out(op.grid);
    for (int i = 0; i < op.grid.n; ++i) {
        if (op.mass[i] == 0.0) continue;
        const auto& r = op.rows[i];
        real_ext acc = 0;
        for (size_t k = 0; k < r.w.size(); ++k) acc += r.w[k] * w.v[r.start + k];
        out.v[i] = static_cast<double>(acc / op.mass[i]);
    }
    return out;
}

ResolventFactor::ResolventFactor(const DiscreteOperator& op, double lambda) : op_(op), lambda_(lambda)
{
    if (!(lambda > 0.0)) throw std::invalid_argument("resolvent: lambda must be positive");
    const int n = op.grid.n;
    kl_ = op.kl;
    width_ = 2 * op.kl + op.ku + 1;
    lu_.assign(static_cast<size_t>(width_) * n, 0);
    row_scale_.assign(n, 1);
    auto at = [&](int i, int j) -> real_ext& { return lu_[static_cast<size_t>(i) * width_ + (j - i + kl_)]; };
    // rows are equilibrated: closure rows are orders of magnitude smaller than far-field rows
    for (int i = 0; i < n; ++i) {
        const auto& r = op.rows[i];
        real_ext big = std::abs(lambda * op.mass[i]);
        for (real_ext a : r.w) big = std::max(big, std::abs(a));
        row_scale_[i] = big > 0 ? 1 / big : 1;
        for (size_t k = 0; k < r.w.size(); ++k) at(i, r.start + static_cast<int>(k)) += row_scale_[i] * r.w[k];
        at(i, i) += row_scale_[i] * lambda * op.mass[i];
    }
    piv_.assign(n, 0);
    const int reach = op.kl + op.ku;
    for (int k = 0; k < n; ++k) {
        const int last = std::min(n - 1, k + op.kl);
        int p = k;
        for (int i = k + 1; i <= last; ++i)
            if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
        piv_[k] = p;
        if (at(p, k) == 0) throw SingularOperatorError("resolvent: singular banded factorization");
        const int right = std::min(n - 1, k + reach);
        if (p != k)
            for (int j = k; j <= right; ++j) std::swap(at(k, j), at(p, j));
        for (int i = k + 1; i <= last; ++i) {
            const real_ext l = at(i, k) / at(k, k);
            at(i, k) = l;
            if (l == 0) continue;
            for (int j = k + 1; j <= right; ++j) at(i, j) -= l * at(k, j);
        }
    }
}

GridFunction ResolventFactor::solve(const GridFunction& g) const
{
    if (!(g.grid == op_.grid)) throw std::invalid_argument("resolvent: grid mismatch");
    const int n = op_.grid.n;
    const int reach = op_.kl + op_.ku;
    auto at = [&](int i, int j) { return lu_[static_cast<size_t>(i) * width_ + (j - i + kl_)]; };
    std::vector<real_ext> b(n);
    for (int i = 0; i < n; ++i) b[i] = row_scale_[i] * op_.mass[i] * g.v[i];
    for (int k = 0; k < n; ++k) {
        std::swap(b[k], b[piv_[k]]);
        const int last = std::min(n - 1, k + op_.kl);
        for (int i = k + 1; i <= last; ++i) b[i] -= at(i, k) * b[k];
    }
    for (int i = n - 1; i >= 0; --i) {
        real_ext acc = b[i];
        const int right = std::min(n - 1, i + reach);
        for (int j = i + 1; j <= right; ++j) acc -= at(i, j) * b[j];
        b[i] = acc / at(i, i);
    }
    GridFunction out(op_.grid);
    for (int i = 0; i < n; ++i) {
        out.v[i] = static_cast<double>(b[i]);
        if (!std::isfinite(out.v[i])) throw SingularOperatorError("resolvent: non-finite solution");
    }
    return out;
}

void check_compatibility(const GridFunction& g)
{
    const double m = g.max_abs();
    if (m == 0.0) return;
    if (std::abs(g.v[0]) > std::sqrt(g.grid.x(0)) * m)
        throw CompatibilityError("resolvent: right-hand side does not vanish at the contact line");
}

ResolventSolve solve(const ResolventFactor& factor, const GridFunction& g)
{
    check_compatibility(g);
    const DiscreteOperator& op = factor.op();
    ResolventSolve out;
    out.lambda = factor.lambda();
    out.solution = factor.solve(g);
    double res = 0.0, scale = 0.0;
    for (int i = 0; i < op.grid.n; ++i) {
        if (op.mass[i] == 0.0) continue;
        const auto& r = op.rows[i];
        real_ext acc = factor.lambda() * op.mass[i] * out.solution.v[i];
        for (size_t k = 0; k < r.w.size(); ++k) acc += r.w[k] * out.solution.v[r.start + k];
        res = std::max(res, static_cast<double>(std::abs(acc - op.mass[i] * g.v[i])));
        scale = std::max(scale, static_cast<double>(std::abs(op.mass[i] * g.v[i])));
    }
    out.residual_norm = scale > 0.0 ? res / scale : res;
    out.decay = far_field_rate(out.solution, factor.lambda());
    return out;
}

ResolventSolve solve(const DiscreteOperator& op, double lambda, const GridFunction& g)
{
    return solve(ResolventFactor(op, lambda), g);
}

FarFieldFit far_field_rate(const GridFunction& u, double lambda, double x_from)
{
    FarFieldFit fit;
    const LogGrid& g = u.grid;
    const int n = g.n;
    const int stop = n - 10;  // skip the closure layer
    const double peak = u.max_abs();
    if (peak == 0.0) {
        fit.message = "solution vanishes";
        return fit;
    }
    // start where the solution has fallen well below its maximum
    int imax = 0;
    for (int i = 0; i < n; ++i)
        if (std::abs(u.v[i]) == peak) imax = i;
    int start = imax;
    while (start < stop && (std::abs(u.v[start]) > 1e-2 * peak || g.x(start) < x_from)) ++start;
    std::vector<double> r, y;
    for (int i = std::max(start, 1); i < stop; ++i) {
        const double a = std::abs(u.v[i]);
        if (a < 1e-290) {
            fit.message = "tail underflow";
            break;
        }
        // envelope samples: local maxima of |u|
        if (a >= std::abs(u.v[i - 1]) && a >= std::abs(u.v[i + 1])) {
            r.push_back(4.0 * std::pow(lambda * g.x(i), 0.25));
            y.push_back(-std::log(a));
        }
    }
    if (r.size() < 3) {
        // monotone tail without oscillation peaks: use every node
        r.clear();
        y.clear();
        for (int i = start; i < stop; ++i) {
            const double a = std::abs(u.v[i]);
            if (a < 1e-290) break;
            r.push_back(4.0 * std::pow(lambda * g.x(i), 0.25));
            y.push_back(-std::log(a));
        }
        if (r.size() < 10) {
            fit.message = "no decaying tail";
            return fit;
        }
    }
    std::vector<std::vector<double>> rows;
    for (double ri : r) rows.push_back({1.0, ri});
    const auto c = least_squares(rows, y);
    fit.rate = c[1];
    fit.points = static_cast<int>(r.size());
    fit.ok = c[1] > 0.0;
    if (!fit.ok) fit.message = "no decaying tail";
    return fit;
}

double far_field_s_max(double lambda, double tol)
{
    const double r = -std::log(tol) / (2.0 * std::sqrt(2.0));
    return std::log(std::pow(r, 4) / lambda);
}

}  // namespace tfl
