// Residual oracles on the physical thin-film equation h_t + (h h_yyy)_y = 0.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfl/nonlinear.hpp"

namespace tfl {

using Field = std::function<double(double t, double y)>;

struct StencilError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResidualReport {
    double max_residual = 0.0;
    double l2_residual = 0.0;  // root mean square over evaluated stencils
    double spacing = 0.0;
    int evaluated = 0;
    int skipped = 0;           // stencils below the height floor
};

struct StencilPoint {
    double t;
    double y;
};

// Second-order centered residual on a 5 x 7 (t, y) stencil around each center:
// fourth-order h_t from five time levels, (h h_yyy)_y from seven y nodes.
// Stencils whose minimum height is below floor_rel * (max height seen) are skipped;
// any sample with h <= 0 throws StencilError.
ResidualReport tfe_residual(const Field& h, const std::vector<StencilPoint>& centers, double dt, double dy,
                            double floor_rel = 1e-6);

double tw_ode_check(double V, double nu, const std::vector<double>& x_samples);

namespace special {
Field traveling_wave();                // (y - 6t)^3 + (y - 6t)^2
Field equilibrium();                   // y^2
Field smyth_hill(double X = 1.0);      // (t+1)^{-1/5} (x^2 - X^2)^2 / 120, x = (t+1)^{-1/5} y
}  // namespace special

struct OrderStudy {
    std::vector<double> spacings;
    std::vector<double> residuals;  // max residual per spacing
    double order = 0.0;             // least-squares slope of log residual against log spacing
};

// Residuals with dt = ratio * dy over the given y spacings.
OrderStudy residual_order(const Field& h, const std::vector<StencilPoint>& centers,
                          const std::vector<double>& dy, double ratio = 1.0);

// h(t, y) from the snapshots of a nonlinear run; t must coincide with a stored time.
Field film_field(const NonlinearState& st);

}  // namespace tfl
