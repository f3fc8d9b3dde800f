// Implicit Euler for u_t + A u = f with energy monitoring.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "tfl/norms.hpp"
#include "tfl/resolvent.hpp"

namespace tfl {

using RhsFunction = std::function<GridFunction(double t)>;

// Simpson average of f over [(j-1) dt, j dt].
GridFunction average_rhs(const RhsFunction& f, int j, double dt);

// (u - u_prev)/dt + A u = f_avg with lambda = 1/dt taken from the factorization.
GridFunction step(const ResolventFactor& factor, const GridFunction& u_prev, const GridFunction& f_avg);
GridFunction step(const DiscreteOperator& op, const GridFunction& u_prev, const GridFunction& f_avg, double dt);

struct EnergyMonitor {
    double alpha_tilde = 0.25;
    int k = 2;
    double slack = 1e-10;
};

struct EnergyReading {
    double base = 0.0;    // |(D-1)u|^2 at alpha_tilde
    double top = 0.0;     // |D^k (D-1)u|^2 at alpha_tilde
};

EnergyReading energy(const GridFunction& u, const EnergyMonitor& mon);

struct EvolutionState {
    Trajectory traj;
    std::vector<EnergyReading> energy_log;
    std::vector<std::array<double, 3>> coefficients;  // u_1, u_2, u_3 per step
    std::vector<int> energy_increase_steps;
    std::vector<int> picard_iterations;               // nonlinear runs only
    std::vector<double> sup_vx;                       // nonlinear runs only
    double dt = 0.0;
    double T = 0.0;
    EnergyMonitor monitor;

    bool energy_monotone() const { return energy_increase_steps.empty(); }
};

std::array<double, 3> leading_coefficients(const GridFunction& u);

// rhs may be empty (f = 0).
EvolutionState run(const DiscreteOperator& op, const GridFunction& u0, const RhsFunction& rhs, double dt,
                   double T, const EnergyMonitor& mon = {});

// Max residual of du_1/dt + p(2) u_2 + q(3) u_3 - f_1 along the tracks over the largest term seen.
double coefficient_track_defect(const EvolutionState& st, const std::function<double(double)>& f1 = {});

}  // namespace tfl
