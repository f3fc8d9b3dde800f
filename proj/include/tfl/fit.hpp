// Small dense least-squares fits used across modules.
#pragma once

#include <vector>

namespace tfl {

// Minimizes sum_i (wt_i (y_i - sum_a c_a e^{e_a s_i}))^2.
std::vector<double> fit_exponentials(const std::vector<double>& s, const std::vector<double>& y,
                                     const std::vector<double>& wt, const std::vector<double>& exps);

// Column-scaled least squares for a dense row-major design matrix.
std::vector<double> least_squares(const std::vector<std::vector<double>>& rows,
                                  const std::vector<double>& rhs);

}  // namespace tfl
