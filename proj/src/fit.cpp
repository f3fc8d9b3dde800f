#include "tfl/fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace tfl {

std::vector<double> least_squares(const std::vector<std::vector<double>>& rows,
                                  const std::vector<double>& rhs)
{
    const int m = static_cast<int>(rows.size());
    if (m == 0) throw std::invalid_argument("least squares: no rows");
    const int n = static_cast<int>(rows[0].size());
    if (m < n) throw std::runtime_error("least squares: fewer samples than unknowns");
    Eigen::MatrixXd a(m, n);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = rows[i][j];
        b(i) = rhs[i];
    }
    Eigen::VectorXd scale(n);
    for (int j = 0; j < n; ++j) {
        const double c = a.col(j).cwiseAbs().maxCoeff();
        scale(j) = c > 0.0 ? c : 1.0;
        a.col(j) /= scale(j);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-14);
    if (qr.rank() < n) throw std::runtime_error("least squares: singular fit matrix");
    const Eigen::VectorXd c = qr.solve(b);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = c(j) / scale(j);
    return out;
}

std::vector<double> fit_exponentials(const std::vector<double>& s, const std::vector<double>& y,
                                     const std::vector<double>& wt, const std::vector<double>& exps)
{
    std::vector<std::vector<double>> rows(s.size(), std::vector<double>(exps.size()));
    std::vector<double> rhs(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        for (size_t a = 0; a < exps.size(); ++a) rows[i][a] = wt[i] * std::exp(exps[a] * s[i]);
        rhs[i] = wt[i] * y[i];
    }
    return least_squares(rows, rhs);
}

}  // namespace tfl
