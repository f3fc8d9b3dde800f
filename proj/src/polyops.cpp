#include "tfl/polyops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tfl {

PolynomialOperator PolynomialOperator::from_roots(std::array<double, 4> r, std::string name)
{
    std::sort(r.begin(), r.end());
    return PolynomialOperator{r, std::move(name)};
}

double PolynomialOperator::operator()(double z) const
{
    double v = 1.0;
    for (double g : roots) v *= z - g;
    return v;
}

std::vector<double> PolynomialOperator::coefficients() const
{
    std::vector<double> c{1.0};
    for (double g : roots) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= g * c[i];
        }
        c = std::move(next);
    }
    return c;
}

double PolynomialOperator::eval_expanded(double z) const
{
    const auto c = coefficients();
    double v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
}

double PolynomialOperator::mean() const { return (roots[0] + roots[1] + roots[2] + roots[3]) / 4.0; }

double PolynomialOperator::sigma() const
{
    const double m = mean();
    double acc = 0.0;
    for (double g : roots) acc += (g - m) * (g - m);
    return std::sqrt(acc / 4.0);
}

double eval_poly(const PolynomialOperator& p, double z) { return p(z); }

namespace canonical {
PolynomialOperator p() { return PolynomialOperator::from_roots({0, 0, 1, 2}, "p"); }
PolynomialOperator q() { return PolynomialOperator::from_roots({0, 1, 1, 2}, "q"); }
PolynomialOperator p_tilde() { return PolynomialOperator::from_roots({0, 0, 2, 2}, "p_tilde"); }
PolynomialOperator q_tilde() { return PolynomialOperator::from_roots({0, 1, 2, 3}, "q_tilde"); }
PolynomialOperator p_check() { return PolynomialOperator::from_roots({0, 0, 2, 3}, "p_check"); }
PolynomialOperator q_check() { return PolynomialOperator::from_roots({0, 1, 3, 4}, "q_check"); }
std::vector<PolynomialOperator> all() { return {p(), q(), p_tilde(), q_tilde(), p_check(), q_check()}; }
}  // namespace canonical

std::pair<PolynomialOperator, PolynomialOperator> shifted_pair(int k)
{
    if (k < 0) throw std::invalid_argument("shifted_pair: k must be non-negative");
    const double kk = k;
    auto pk = PolynomialOperator::from_roots({0.0, -kk, 1.0 - kk, 2.0 - kk}, "p_" + std::to_string(k));
    auto qk = PolynomialOperator::from_roots({0.0, 1.0, 1.0 - kk, 2.0 - kk}, "q_" + std::to_string(k));
    return {pk, qk};
}

std::pair<double, double> monomial_action(int j)
{
    if (j < 0) throw std::invalid_argument("monomial_action: j must be non-negative");
    return {canonical::p()(j), canonical::q()(j)};
}

double commutation_residual(Variant variant, const GridFunction& w, int margin)
{
    if (w.size() < 2 * margin + 8) throw std::invalid_argument("commutation_residual: grid too coarse");
    PolynomialOperator p_in, q_in, p_out, q_out;
    double shift;
    if (variant == Variant::tilde) {
        p_in = canonical::p();
        q_in = canonical::q();
        p_out = canonical::p_tilde();
        q_out = canonical::q_tilde();
        shift = 1.0;
    } else {
        p_in = canonical::p_tilde();
        q_in = canonical::q_tilde();
        p_out = canonical::p_check();
        q_out = canonical::q_check();
        shift = 2.0;
    }
    // (D - c) applied discretely.
    auto shifted = [shift](const GridFunction& f) {
        GridFunction d = d_derivative(f, 1);
        for (int i = 0; i < f.size(); ++i) d.v[i] -= shift * f.v[i];
        return d;
    };
    const GridFunction lhs = shifted(apply_two_scale(p_in.coefficients(), q_in.coefficients(), w));
    const GridFunction rhs = apply_two_scale(p_out.coefficients(), q_out.coefficients(), shifted(w));
    double r = 0.0;
    for (int i = margin; i < w.size() - margin; ++i) r = std::max(r, std::abs(lhs.v[i] - rhs.v[i]));
    return r;
}

CoefficientVector CoefficientVector::zeros(int J)
{
    if (J < 1) throw std::invalid_argument("coefficient vector: J must be positive");
    return CoefficientVector{J, std::vector<double>(J, 0.0), std::vector<double>(J, 0.0)};
}

CoefficientTrajectory integrate_coefficients(const CoefficientVector& cv0, const CoefficientRhs& f, double dt,
                                             double T)
{
    const int J = cv0.J;
    if (J < 1 || static_cast<int>(cv0.u.size()) != J) throw std::invalid_argument("coefficients: bad J");
    if (!(dt > 0.0) || !(T >= 0.0)) throw std::invalid_argument("coefficients: dt must be positive");
    for (double a : cv0.u)
        if (!std::isfinite(a)) throw std::invalid_argument("coefficients: non-finite initial data");

    std::vector<double> pj(J + 3), qj(J + 3);
    for (int j = 0; j < J + 3; ++j) {
        pj[j] = canonical::p()(j);
        qj[j] = canonical::q()(j);
    }
    auto rhs = [&](double t, const std::vector<double>& u) {
        std::vector<double> fj = f ? f(t) : std::vector<double>(J, 0.0);
        std::vector<double> du(J);
        for (int j = 1; j <= J; ++j) {
            const double u1 = j + 1 <= J ? u[j] : 0.0;
            const double u2 = j + 2 <= J ? u[j + 1] : 0.0;
            const double fv = j - 1 < static_cast<int>(fj.size()) ? fj[j - 1] : 0.0;
            du[j - 1] = fv - pj[j + 1] * u1 - qj[j + 2] * u2;
        }
        return du;
    };

    CoefficientTrajectory traj;
    std::vector<double> u = cv0.u;
    const long steps = std::lround(std::ceil(T / dt - 1e-9));
    traj.t.push_back(0.0);
    traj.u.push_back(u);
    for (long s = 0; s < steps; ++s) {
        const double t = s * dt;
        const double h = std::min(dt, T - t);
        auto axpy = [](const std::vector<double>& a, double c, const std::vector<double>& b) {
            std::vector<double> r(a.size());
            for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + c * b[i];
            return r;
        };
        const auto k1 = rhs(t, u);
        const auto k2 = rhs(t + 0.5 * h, axpy(u, 0.5 * h, k1));
        const auto k3 = rhs(t + 0.5 * h, axpy(u, 0.5 * h, k2));
        const auto k4 = rhs(t + h, axpy(u, h, k3));
        for (int i = 0; i < J; ++i) u[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        for (double a : u)
            if (!std::isfinite(a)) throw std::runtime_error("coefficients: trajectory became non-finite");
        traj.t.push_back(t + h);
        traj.u.push_back(u);
    }
    return traj;
}

}  // namespace tfl
