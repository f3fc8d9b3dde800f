// The factorized elliptic operator: B, its explicit inverse, the inverse S of A,
// and Hardy-type inequality checks.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tfl/grid.hpp"
#include "tfl/polyops.hpp"

namespace tfl {

struct DecayProbeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TailFit {
    double amplitude = 0.0;  // signed
    double gamma = 0.0;      // leading exponent in s
    double correction = 0.0; // relative e^{s} correction
};

// Fits f ~ c e^{gamma s}(1 + b e^s) on the leftmost band; throws when gamma <= 0.
TailFit probe_left_decay(const GridFunction& f, double band = 1.0);

// F_i = integral of f from -inf to s_i: end-corrected trapezoid plus fitted tail.
GridFunction cumulative_integral(const GridFunction& f);

// Discrete A = e^{-s} p(D) + e^{-2s} q(D).
GridFunction apply_A(const GridFunction& w);

GridFunction apply_B(const GridFunction& w);
GridFunction apply_B_inverse(const GridFunction& f);
GridFunction apply_S(const GridFunction& g);

struct HardyResult {
    double lhs;
    double rhs;
    double constant;
};

HardyResult hardy_check(const GridFunction& g, double gamma, int variant);
// Best constant in the same inequality for the weight convention of weighted_norm.
double hardy_sharp_constant(double gamma, int variant);

struct HardySuiteResult {
    int cases = 0;
    int violations = 0;        // against hardy_check's constant
    int sharp_violations = 0;  // against hardy_sharp_constant
    double worst_ratio = 0.0;  // min of lhs / (constant rhs)
    double worst_sharp_ratio = 0.0;
};

// Random smooth compactly supported test functions, all variants and weights.
HardySuiteResult hardy_suite(const LogGrid& g, int count, const std::vector<double>& gammas,
                             std::uint64_t seed, double rel_tol = 1e-10);

struct EllipticPair {
    double w_norm;   // |w|_{k+4, rho}
    double pw_norm;  // |P(D) w|_{k, rho}
};

EllipticPair polynomial_elliptic_check(const PolynomialOperator& P, const GridFunction& w, double rho, int k);

// Smooth bump exp(1 - 1/(1 - z^2)) for |z| < 1.
double smooth_bump(double z);

}  // namespace tfl
