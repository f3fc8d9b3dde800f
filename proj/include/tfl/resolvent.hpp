// Banded discretization of A with contact-line and far-field closure rows,
// and the resolvent solve (lambda + A) u = g.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfl/grid.hpp"

namespace tfl {

struct SingularOperatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CompatibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operator rows are kept in extended precision: the h^{-4} stencils would otherwise
// put a rounding floor of order eps/h^4 on kernel preservation.
using real_ext = long double;

struct SparseRow {
    int start = 0;
    std::vector<real_ext> w;
};

struct DiscreteOperator {
    LogGrid grid;
    int kl = 7;
    int ku = 7;
    // Rows of x^2 A on interior nodes, closure relations on the first and last two.
    std::vector<SparseRow> rows;
    // Coefficient multiplying lambda on the diagonal and the right-hand side (x_i^2 or 0).
    std::vector<real_ext> mass;
};

DiscreteOperator assemble(const LogGrid& grid);

// Interior rows of A applied to w (unscaled); closure rows are not applied.
GridFunction apply_operator(const DiscreteOperator& op, const GridFunction& w);

// Banded LU with partial pivoting of lambda M + L_h, in extended precision.
class ResolventFactor {
public:
    ResolventFactor(const DiscreteOperator& op, double lambda);
    GridFunction solve(const GridFunction& g) const;
    double lambda() const { return lambda_; }
    const DiscreteOperator& op() const { return op_; }

private:
    DiscreteOperator op_;
    double lambda_;
    int kl_ = 0;
    int width_ = 0;  // stored entries per row: kl + ku + 1 after fill-in
    std::vector<real_ext> lu_;      // row-major band, column offset i - kl
    std::vector<real_ext> row_scale_;
    std::vector<int> piv_;
};

struct FarFieldFit {
    bool ok = false;
    double rate = 0.0;
    int points = 0;
    std::string message;
};

struct ResolventSolve {
    double lambda = 0.0;
    GridFunction solution;
    double residual_norm = 0.0;  // interior max, relative to max |x^2 g|
    FarFieldFit decay;
};

void check_compatibility(const GridFunction& g);
ResolventSolve solve(const DiscreteOperator& op, double lambda, const GridFunction& g);
ResolventSolve solve(const ResolventFactor& factor, const GridFunction& g);

// Slope of -ln|u| against r = 4 (lambda x)^{1/4} along the envelope of the tail.
FarFieldFit far_field_rate(const GridFunction& u, double lambda, double x_from = 0.0);

// Smallest s_max for which e^{-2 sqrt2 (lambda x_max)^{1/4}} < tol.
double far_field_s_max(double lambda, double tol = 1e-12);

}  // namespace tfl
