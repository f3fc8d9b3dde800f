// Coercivity windows of quartic operators in the weighted inner products.
#pragma once

#include <string>
#include <vector>

#include "tfl/grid.hpp"
#include "tfl/polyops.hpp"

namespace tfl {

struct Interval {
    double lo;
    double hi;
    bool contains(double a) const { return a > lo && a < hi; }
};

// Re prod (i xi + alpha - gamma_j), evaluated as a quadratic in xi^2.
double symbol(const PolynomialOperator& P, double alpha, double xi);
// Reference evaluation through complex arithmetic.
double symbol_complex(const PolynomialOperator& P, double alpha, double xi);
// min over xi of the symbol.
double numeric_margin(const PolynomialOperator& P, double alpha);

std::vector<Interval> range_closed_form(const PolynomialOperator& P);
std::vector<Interval> range_numeric(const PolynomialOperator& P, double alpha_lo, double alpha_hi,
                                    int n_scan);

enum class Composite { A, A_tilde, A_check };

std::pair<PolynomialOperator, PolynomialOperator> composite_parts(Composite which);
std::vector<Interval> composite_range(Composite which, bool numeric = false);
// Smallest margin of the pair at alpha (+1/2 and +1 shifts applied).
double composite_margin(Composite which, double alpha);

struct CoercivityReport {
    std::string name;
    std::array<double, 4> roots{};
    double mean = 0.0;
    double sigma = 0.0;
    std::vector<Interval> closed;
    std::vector<Interval> numeric;
    // Largest endpoint gap between the two lists (infinite when they differ in count).
    double max_discrepancy = 0.0;
};

CoercivityReport coercivity_report(const PolynomialOperator& P, double alpha_lo = -2.0,
                                   double alpha_hi = 6.0, int n_scan = 4000);
double interval_discrepancy(const std::vector<Interval>& a, const std::vector<Interval>& b);

struct QuadraticForm {
    double lhs;
    double rhs;
};

QuadraticForm quadratic_form_check(const PolynomialOperator& P, double alpha, const GridFunction& w);

}  // namespace tfl
