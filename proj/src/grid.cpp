#include "tfl/grid.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfl/fit.hpp"

namespace tfl {

LogGrid LogGrid::make(double s_min, double s_max, int n)
{
    if (!(s_min < s_max)) throw std::invalid_argument("grid: s_min must be below s_max");
    if (n < 16) throw std::invalid_argument("grid: need at least 16 nodes");
    return LogGrid{s_min, s_max, n};
}

double LogGrid::x(int i) const { return std::exp(s(i)); }

GridFunction::GridFunction(const LogGrid& g, std::vector<double> values) : grid(g), v(std::move(values))
{
    if (static_cast<int>(v.size()) != g.n) throw std::invalid_argument("grid function: size mismatch");
}

GridFunction GridFunction::of_x(const LogGrid& g, const std::function<double(double)>& f)
{
    GridFunction out(g);
    for (int i = 0; i < g.n; ++i) out.v[i] = f(g.x(i));
    return out;
}

GridFunction GridFunction::of_s(const LogGrid& g, const std::function<double(double)>& f)
{
    GridFunction out(g);
    for (int i = 0; i < g.n; ++i) out.v[i] = f(g.s(i));
    return out;
}

double GridFunction::max_abs() const
{
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
}

static void require_same(const GridFunction& a, const GridFunction& b)
{
    if (!(a.grid == b.grid)) throw std::invalid_argument("grid functions live on different grids");
}

GridFunction& GridFunction::operator+=(const GridFunction& o)
{
    require_same(*this, o);
    for (int i = 0; i < size(); ++i) v[i] += o.v[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o)
{
    require_same(*this, o);
    for (int i = 0; i < size(); ++i) v[i] -= o.v[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double c)
{
    for (double& a : v) a *= c;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double c, GridFunction a) { return a *= c; }

std::vector<double> fd_weights(double z, const std::vector<double>& x, int m)
{
    return fornberg(z, x, m);
}

static int half_width(int j) { return j <= 2 ? 2 : 3; }

static StencilRow make_row(const LogGrid& g, int j, int node, int start, int len)
{
    std::vector<double> nodes(len);
    for (int k = 0; k < len; ++k) nodes[k] = start + k;
    auto w = fd_weights(node, nodes, j);
    const double scale = std::pow(g.h(), -j);
    for (double& a : w) a *= scale;
    return StencilRow{start, std::move(w)};
}

StencilRow edge_row(const LogGrid& g, int j, int node)
{
    const int len = j + 4;
    const int start = node < g.n / 2 ? 0 : g.n - len;
    return make_row(g, j, node, start, len);
}

std::vector<StencilRow> derivative_rows(const LogGrid& g, int j)
{
    if (j < 1 || j > 4) throw std::invalid_argument("derivative order must be 1..4");
    if (g.n < j + 5) throw std::invalid_argument("grid too small for stencil");
    const int hw = half_width(j);
    std::vector<StencilRow> rows(g.n);
    const StencilRow centered = make_row(g, j, hw, 0, 2 * hw + 1);
    for (int i = 0; i < g.n; ++i) {
        if (i - hw >= 0 && i + hw < g.n) {
            rows[i] = StencilRow{i - hw, centered.w};
        } else {
            rows[i] = edge_row(g, j, i);
        }
    }
    return rows;
}

GridFunction d_derivative(const GridFunction& w, int j)
{
    const auto rows = derivative_rows(w.grid, j);
    GridFunction out(w.grid);
    for (int i = 0; i < w.size(); ++i) {
        const auto& r = rows[i];
        double acc = 0.0;
        for (size_t k = 0; k < r.w.size(); ++k) acc += r.w[k] * w.v[r.start + k];
        out.v[i] = acc;
    }
    return out;
}

double trapezoid(const std::vector<double>& f, double h, int lo)
{
    const int n = static_cast<int>(f.size());
    if (n - lo < 2) return 0.0;
    double acc = 0.5 * (f[lo] + f[n - 1]);
    for (int i = lo + 1; i < n - 1; ++i) acc += f[i];
    return acc * h;
}

std::vector<double> extract_coefficients(const GridFunction& w, int order, const ExtractOptions& opt)
{
    if (order < 1 || order > 5) throw std::invalid_argument("extract_coefficients: order must be 1..5");
    const LogGrid& g = w.grid;
    int terms = order <= 3 ? 3 : order + 2;
    double band = order <= 3 ? opt.band : opt.band * (order - 1);
    if (opt.terms > 0) {
        terms = opt.terms;
        band = opt.band;
    }
    if (terms < order) throw std::invalid_argument("extract_coefficients: fewer terms than the order");
    const double lo = opt.from.value_or(g.s_min);
    std::vector<double> s, y, wt;
    for (int i = 0; i < g.n && g.s(i) <= lo + band + 1e-12; ++i) {
        if (g.s(i) < lo - 1e-12) continue;
        s.push_back(g.s(i));
        y.push_back(w.v[i]);
        wt.push_back(std::exp(-g.s(i)));
    }
    if (static_cast<int>(s.size()) < terms + 2)
        throw std::invalid_argument("extract_coefficients: fit window holds too few nodes");
    std::vector<double> exps(terms);
    for (int i = 0; i < terms; ++i) exps[i] = i + 1;
    auto c = fit_exponentials(s, y, wt, exps);
    c.resize(order);
    return c;
}

ExtractOptions interior_window(const LogGrid& g)
{
    return ExtractOptions{4.0, std::max(g.s_min, -7.0), 6};
}

double weighted_norm(const GridFunction& w, const NormSpec& spec)
{
    if (spec.k < 0) throw std::invalid_argument("norm: k must be non-negative");
    const LogGrid& g = w.grid;
    const int sub = std::max(spec.sub, 0);
    std::vector<double> c = spec.coeffs;
    if (sub > 0 && c.empty()) c = extract_coefficients(w, sub);
    if (static_cast<int>(c.size()) < sub) throw std::invalid_argument("norm: too few coefficients");
    c.resize(sub);

    int lo = 0;
    std::vector<double> tail_c;
    std::vector<double> tail_e;
    double sc = g.s_min;
    if (spec.tail_cut) {
        sc = std::max(*spec.tail_cut, g.s_min + 3.0);
        lo = static_cast<int>(std::lround((sc - g.s_min) / g.h()));
        sc = g.s(lo);
        std::vector<double> s, y, wt;
        for (int i = 0; i <= lo; ++i) {
            if (g.s(i) < sc - 3.0 - 1e-12) continue;
            double r = w.v[i];
            for (int a = 1; a <= sub; ++a) r -= c[a - 1] * std::exp(a * g.s(i));
            s.push_back(g.s(i));
            y.push_back(r);
            wt.push_back(std::exp(-(sub + 1) * g.s(i)));
        }
        for (int a = 0; a < 4; ++a) tail_e.push_back(sub + 1 + a);
        tail_c = fit_exponentials(s, y, wt, tail_e);
    }

    int hi = g.n - 1;
    if (spec.upper_cut) hi = std::min(hi, static_cast<int>(std::floor((*spec.upper_cut - g.s_min) / g.h() + 1e-9)));
    if (hi <= lo + 1) throw std::invalid_argument("norm: empty integration window");

    double total = 0.0;
    std::vector<GridFunction> ds{w};
    for (int j = 0; j <= spec.k; ++j) {
        if (j > 0) ds.push_back(j <= 4 ? d_derivative(w, j) : d_derivative(ds[j - 4], 4));
        const GridFunction& d = ds[j];
        std::vector<double> f(hi + 1, 0.0);
        for (int i = lo; i <= hi; ++i) {
            const double si = g.s(i);
            double r = d.v[i];
            for (int a = 1; a <= sub; ++a) r -= c[a - 1] * std::pow(a, j) * std::exp(a * si);
            f[i] = std::exp(-2.0 * spec.alpha * si) * r * r;
        }
        total += trapezoid(f, g.h(), lo);
        for (size_t a = 0; a < tail_c.size(); ++a) {
            for (size_t b = 0; b < tail_c.size(); ++b) {
                const double e = tail_e[a] + tail_e[b] - 2.0 * spec.alpha;
                if (e <= 0.0) throw std::domain_error("norm: tail closure not integrable at this weight");
                total += tail_c[a] * tail_c[b] * std::pow(tail_e[a], j) * std::pow(tail_e[b], j) *
                         std::exp(e * sc) / e;
            }
        }
    }
    return std::sqrt(std::max(total, 0.0));
}

GridFunction apply_poly(const std::vector<double>& coeffs, const GridFunction& w)
{
    GridFunction out(w.grid);
    for (size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0.0) continue;
        const GridFunction d = j == 0 ? w : d_derivative(w, static_cast<int>(j));
        for (int i = 0; i < w.size(); ++i) out.v[i] += coeffs[j] * d.v[i];
    }
    return out;
}

GridFunction apply_two_scale(const std::vector<double>& p1, const std::vector<double>& p2,
                             const GridFunction& w)
{
    const GridFunction a = apply_poly(p1, w);
    const GridFunction b = apply_poly(p2, w);
    GridFunction out(w.grid);
    for (int i = 0; i < w.size(); ++i) {
        const double xi = w.grid.x(i);
        out.v[i] = a.v[i] / xi + b.v[i] / (xi * xi);
    }
    return out;
}

}  // namespace tfl
