// Composite solution / initial-data / right-hand-side norms over the index sets.
#pragma once

#include <vector>

#include "tfl/grid.hpp"

namespace tfl {

struct Trajectory {
    std::vector<double> t;
    std::vector<GridFunction> u;

    double horizon() const { return t.empty() ? 0.0 : t.back() - t.front(); }
};

struct IndexTriple {
    double alpha;
    int l;
    int m;
};

std::vector<IndexTriple> index_set_I(int N, double delta);
// I together with the alpha - 1/2 shifts.
std::vector<IndexTriple> index_set_J(int N, double delta);

enum class CompositeKind { sol, init, rhs };

struct CompositeNormReport {
    double value = 0.0;
    double horizon = 0.0;  // suprema and time integrals only cover [t_0, t_0 + horizon]
    int terms = 0;
};

// Default lower cut for the analytic tail of every term.
inline constexpr double kNormTailCut = -3.0;
// Width in s of the far-field layer left out of composite norms: the far-field closure
// admits a quadratic there, and D^k x^2 = 2^k x^2 swamps high-order terms.
inline constexpr double kFarFieldLayer = 1.0;

double init_norm(const GridFunction& u0, int N, int k, double delta);
CompositeNormReport composite_norm(const Trajectory& traj, CompositeKind which, int N, int k, double delta);

// l-th time derivative at every stored step by repeated second-order differences.
std::vector<GridFunction> time_derivative(const Trajectory& traj, int l);
// w / (x + 1)
GridFunction underline(const GridFunction& w);

}  // namespace tfl
