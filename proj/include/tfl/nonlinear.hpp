// Nonlinearity of the perturbed traveling wave, Picard time stepping, film reconstruction.
#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "tfl/evolution.hpp"

namespace tfl {

struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PicardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LipschitzReport {
    double sup_vx = 0.0;
    double threshold = 0.5;
    bool ok = true;
};

// v = u / (3x^2 + 2x)
GridFunction to_v(const GridFunction& u);
// v(0+) = u_1 / 2 from the fitted expansion of u.
double v_at_contact_line(const GridFunction& u);

LipschitzReport lipschitz_guard(const GridFunction& v, double threshold = 0.5);

// Throws GuardError when the guard fails.
GridFunction eval_N(const GridFunction& u, double threshold = 0.5);

// C-infinity step equal to 1 on x <= 1 and 0 on x >= 4.
double smooth_cutoff(double x);
// eps (3x^2 + 2x) e^{-x}, or eps (3x^2 + 2x) smooth_cutoff(x) without the taper.
GridFunction perturbation(const LogGrid& g, double eps, bool taper = true);

struct NonlinearOptions {
    double picard_tol = 1e-10;
    int picard_max = 25;
    double threshold = 0.5;
    EnergyMonitor monitor;
    bool track_init_norm = true;
};

struct NonlinearState : EvolutionState {
    std::vector<double> init_norms;     // N = 1, k = 3, delta = 0.25 per step
    std::vector<double> contact_line;   // Y_0(t)
};

NonlinearState run_nonlinear(const DiscreteOperator& op, const GridFunction& u0, double dt, double T,
                             const NonlinearOptions& opt = {});

struct FilmReconstruction {
    double t = 0.0;
    std::vector<std::pair<double, double>> samples;  // (y, h)
    double contact_line = 0.0;
    double u1 = 0.0;
    double u2 = 0.0;
};

FilmReconstruction reconstruct(const GridFunction& u, double t, const std::vector<double>& y_grid,
                               double threshold = 0.5);

// h(t, y) from one state by solving x + 6t + v(x) = y on a local degree-7 interpolant of v in s.
double film_height(const GridFunction& u, double t, double y);

// Y_0 by extrapolating Y(t, x) to x = 0 from the first nodes, independent of u_1.
double extrapolated_contact_line(const GridFunction& u, double t);

// Two-term expansion of h near the contact line from (u_1, u_2, u_3).
double h_expansion(double y, double t, double u1, double u2, double u3);

struct FilmState {
    double t = 0.0, x = 0.0, y = 0.0, h = 0.0, u = 0.0, v = 0.0;
};

enum class RescaleDirection { to_normalized, from_normalized };

FilmState rescale(double V, double nu, RescaleDirection dir, const FilmState& s);

}  // namespace tfl
