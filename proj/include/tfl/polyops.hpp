// Quartic polynomials in the scaling-invariant derivative D and the
// truncated coefficient system they generate.
#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tfl/grid.hpp"

namespace tfl {

struct PolynomialOperator {
    std::array<double, 4> roots{};  // sorted ascending
    std::string name;

    static PolynomialOperator from_roots(std::array<double, 4> r, std::string name = "");
    double operator()(double z) const;
    // Monomial coefficients c_0..c_4 of prod (z - roots[j]).
    std::vector<double> coefficients() const;
    double eval_expanded(double z) const;
    double mean() const;
    double sigma() const;
};

double eval_poly(const PolynomialOperator& p, double z);

namespace canonical {
PolynomialOperator p();
PolynomialOperator q();
PolynomialOperator p_tilde();
PolynomialOperator q_tilde();
PolynomialOperator p_check();
PolynomialOperator q_check();
std::vector<PolynomialOperator> all();
}  // namespace canonical

std::pair<PolynomialOperator, PolynomialOperator> shifted_pair(int k);

// (p(j), q(j)) such that A x^j = p(j) x^{j-1} + q(j) x^{j-2}.
std::pair<double, double> monomial_action(int j);

enum class Variant { tilde, check };

// Max-norm of the discrete commutator defect on the interior.
double commutation_residual(Variant variant, const GridFunction& w, int margin = 12);

struct CoefficientVector {
    int J = 0;
    std::vector<double> u;
    std::vector<double> f;

    static CoefficientVector zeros(int J);
};

struct CoefficientTrajectory {
    std::vector<double> t;
    std::vector<std::vector<double>> u;
};

using CoefficientRhs = std::function<std::vector<double>(double t)>;

// RK4 for du_j/dt + p(j+1) u_{j+1} + q(j+2) u_{j+2} = f_j, u_{J+1} = u_{J+2} = 0.
CoefficientTrajectory integrate_coefficients(const CoefficientVector& cv0, const CoefficientRhs& f,
                                             double dt, double T);

}  // namespace tfl
