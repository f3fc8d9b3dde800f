// Logarithmic grids s = ln x, D-derivative stencils, weighted norms.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tfl {

struct LogGrid {
    double s_min = -12.0;
    double s_max = 4.0;
    int n = 1025;

    static LogGrid make(double s_min, double s_max, int n);
    double h() const { return (s_max - s_min) / (n - 1); }
    double s(int i) const { return s_min + i * h(); }
    double x(int i) const;
    bool operator==(const LogGrid& o) const
    {
        return s_min == o.s_min && s_max == o.s_max && n == o.n;
    }
};

struct GridFunction {
    LogGrid grid;
    std::vector<double> v;

    GridFunction() = default;
    GridFunction(const LogGrid& g, std::vector<double> values);
    explicit GridFunction(const LogGrid& g) : grid(g), v(g.n, 0.0) {}

    // Samples f(x) at every node.
    static GridFunction of_x(const LogGrid& g, const std::function<double(double)>& f);
    static GridFunction of_s(const LogGrid& g, const std::function<double(double)>& f);

    int size() const { return grid.n; }
    double operator[](int i) const { return v[i]; }
    double& operator[](int i) { return v[i]; }
    double max_abs() const;

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(double c);
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double c, GridFunction a);

// Finite-difference weights for the m-th derivative at z from arbitrary nodes (Fornberg).
template <class T>
std::vector<T> fornberg(T z, const std::vector<T>& x, int m)
{
    const int n = static_cast<int>(x.size());
    std::vector<std::vector<T>> c(n, std::vector<T>(m + 1, T(0)));
    T c1 = 1;
    T c4 = x[0] - z;
    c[0][0] = 1;
    for (int i = 1; i < n; ++i) {
        const int mn = i < m ? i : m;
        T c2 = 1;
        const T c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const T c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<T> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][m];
    return w;
}

std::vector<double> fd_weights(double z, const std::vector<double>& nodes, int m);

struct StencilRow {
    int start = 0;
    std::vector<double> w;  // already divided by h^j
};

// Fourth-order rows for d^j/ds^j, j = 1..4, centered in the interior and
// one-sided (j + 4 nodes) where the centered footprint leaves the grid.
std::vector<StencilRow> derivative_rows(const LogGrid& g, int j);
StencilRow edge_row(const LogGrid& g, int j, int node);

GridFunction d_derivative(const GridFunction& w, int j);

struct NormSpec {
    int k = 0;
    double alpha = 0.0;
    int sub = 0;
    // Expansion coefficients u_1..u_sub; extracted from w when empty.
    std::vector<double> coeffs;
    // When set, the integral below this s is replaced by the analytic
    // integral of a power-law fit of the remainder.
    std::optional<double> tail_cut;
    // When set, nodes above this s are left out of the integral.
    std::optional<double> upper_cut;
};

double weighted_norm(const GridFunction& w, const NormSpec& spec);
double trapezoid(const std::vector<double>& f, double h, int lo = 0);

struct ExtractOptions {
    double band = 2.0;
    // Window start; the left edge when unset.
    std::optional<double> from;
    // Exponentials in the model; chosen from the order when zero.
    int terms = 0;
};

// Window used for third-order tracks: far enough from the edge that x^3 is
// visible above the discretization floor, close enough that x^7 is not.
ExtractOptions interior_window(const LogGrid& g);

// Weighted least-squares fit of sum_i c_i e^{is} near the left edge.
std::vector<double> extract_coefficients(const GridFunction& w, int order,
                                         const ExtractOptions& opt = {});

// Discrete polynomial operator sum_j c_j D^j applied to w.
GridFunction apply_poly(const std::vector<double>& coeffs, const GridFunction& w);

// e^{-s} P1(D) w + e^{-2s} P2(D) w with monomial coefficients of P1, P2.
GridFunction apply_two_scale(const std::vector<double>& p1, const std::vector<double>& p2,
                             const GridFunction& w);

}  // namespace tfl
