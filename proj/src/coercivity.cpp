#include "tfl/coercivity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace tfl {

namespace {

struct Sym {
    double e2;
    double e4;
};

Sym shifted_symmetric(const PolynomialOperator& P, double alpha)
{
    std::array<double, 4> a{};
    for (int j = 0; j < 4; ++j) a[j] = alpha - P.roots[j];
    double e2 = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) e2 += a[i] * a[j];
    return {e2, a[0] * a[1] * a[2] * a[3]};
}

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Interval> intersect(const std::vector<Interval>& a, const std::vector<Interval>& b)
{
    std::vector<Interval> out;
    for (const auto& x : a)
        for (const auto& y : b) {
            const double lo = std::max(x.lo, y.lo);
            const double hi = std::min(x.hi, y.hi);
            if (lo < hi) out.push_back({lo, hi});
        }
    std::sort(out.begin(), out.end(), [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
    return out;
}

}  // namespace

double symbol(const PolynomialOperator& P, double alpha, double xi)
{
    const Sym s = shifted_symmetric(P, alpha);
    const double mu = xi * xi;
    return mu * mu - s.e2 * mu + s.e4;
}

double symbol_complex(const PolynomialOperator& P, double alpha, double xi)
{
    std::complex<double> v = 1.0;
    for (double g : P.roots) v *= std::complex<double>(alpha - g, xi);
    return v.real();
}

double numeric_margin(const PolynomialOperator& P, double alpha)
{
    const Sym s = shifted_symmetric(P, alpha);
    if (s.e2 > 0.0) return s.e4 - 0.25 * s.e2 * s.e2;
    return s.e4;
}

std::vector<Interval> range_closed_form(const PolynomialOperator& P)
{
    const auto& g = P.roots;
    const double m = P.mean();
    const double band = P.sigma() / std::sqrt(3.0);
    const std::vector<Interval> root_gaps{{-kInf, g[0]}, {g[1], g[2]}, {g[3], kInf}};
    return intersect(root_gaps, {{m - band, m + band}});
}

std::vector<Interval> range_numeric(const PolynomialOperator& P, double alpha_lo, double alpha_hi, int n_scan)
{
    if (n_scan < 100) throw std::invalid_argument("range_numeric: n_scan must be at least 100");
    auto positive = [&](double a) { return numeric_margin(P, a) > 0.0; };
    auto polish = [&](double a, double b) {
        // a and b bracket a sign change of the margin
        const bool pa = positive(a);
        for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
            const double c = 0.5 * (a + b);
            if (positive(c) == pa) a = c;
            else b = c;
        }
        return 0.5 * (a + b);
    };
    std::vector<Interval> out;
    const double step = (alpha_hi - alpha_lo) / n_scan;
    bool inside = positive(alpha_lo);
    double start = alpha_lo;
    for (int i = 1; i <= n_scan; ++i) {
        const double a0 = alpha_lo + (i - 1) * step;
        const double a1 = i == n_scan ? alpha_hi : alpha_lo + i * step;
        const bool now = positive(a1);
        if (now != inside) {
            const double edge = polish(a0, a1);
            if (inside) out.push_back({start, edge});
            else start = edge;
            inside = now;
        }
    }
    if (inside) out.push_back({start, alpha_hi});
    return out;
}

std::pair<PolynomialOperator, PolynomialOperator> composite_parts(Composite which)
{
    switch (which) {
    case Composite::A: return {canonical::p(), canonical::q()};
    case Composite::A_tilde: return {canonical::p_tilde(), canonical::q_tilde()};
    case Composite::A_check: return {canonical::p_check(), canonical::q_check()};
    }
    throw std::invalid_argument("unknown composite operator");
}

std::vector<Interval> composite_range(Composite which, bool numeric)
{
    const auto [pp, qq] = composite_parts(which);
    auto range = [&](const PolynomialOperator& P) {
        return numeric ? range_numeric(P, -2.0, 6.0, 4000) : range_closed_form(P);
    };
    auto shift = [](std::vector<Interval> v, double c) {
        for (auto& i : v) {
            i.lo -= c;
            i.hi -= c;
        }
        return v;
    };
    return intersect(shift(range(pp), 0.5), shift(range(qq), 1.0));
}

double composite_margin(Composite which, double alpha)
{
    const auto [pp, qq] = composite_parts(which);
    return std::min(numeric_margin(pp, alpha + 0.5), numeric_margin(qq, alpha + 1.0));
}

double interval_discrepancy(const std::vector<Interval>& a, const std::vector<Interval>& b)
{
    if (a.size() != b.size()) return kInf;
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        for (auto [x, y] : {std::pair{a[i].lo, b[i].lo}, std::pair{a[i].hi, b[i].hi}}) {
            if (std::isinf(x) || std::isinf(y)) {
                if (x != y) d = std::max(d, kInf);
            } else {
                d = std::max(d, std::abs(x - y));
            }
        }
    }
    return d;
}

CoercivityReport coercivity_report(const PolynomialOperator& P, double alpha_lo, double alpha_hi, int n_scan)
{
    CoercivityReport r;
    r.name = P.name;
    r.roots = P.roots;
    r.mean = P.mean();
    r.sigma = P.sigma();
    r.closed = range_closed_form(P);
    r.numeric = range_numeric(P, alpha_lo, alpha_hi, n_scan);
    // unbounded closed-form pieces are compared on the scan window
    std::vector<Interval> clipped;
    for (auto i : r.closed) {
        i.lo = std::max(i.lo, alpha_lo);
        i.hi = std::min(i.hi, alpha_hi);
        if (i.lo < i.hi) clipped.push_back(i);
    }
    r.max_discrepancy = interval_discrepancy(clipped, r.numeric);
    return r;
}

QuadraticForm quadratic_form_check(const PolynomialOperator& P, double alpha, const GridFunction& w)
{
    const int n = w.size();
    const double scale = std::max(w.max_abs(), 1e-300);
    for (int i = 0; i < 8; ++i)
        if (std::abs(w.v[i]) > 1e-12 * scale || std::abs(w.v[n - 1 - i]) > 1e-12 * scale)
            throw std::invalid_argument("quadratic_form_check: support touches the grid boundary");
    const GridFunction pw = apply_poly(P.coefficients(), w);
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = std::exp(-2.0 * alpha * w.grid.s(i)) * w.v[i] * pw.v[i];
    const double lhs = trapezoid(f, w.grid.h());
    const double rhs = std::pow(weighted_norm(w, NormSpec{2, alpha}), 2);
    return {lhs, rhs};
}

}  // namespace tfl
