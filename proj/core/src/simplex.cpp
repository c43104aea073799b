#include "funtf/detail/simplex.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace funtf::detail {

LpResult solve_lp(const Eigen::MatrixXd& m, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  if (b.size() != rows || c.size() != cols)
    throw std::invalid_argument("solve_lp: inconsistent dimensions");
  if ((b.array() < 0).any())
    throw std::invalid_argument("solve_lp: requires b >= 0");

  const double eps = 1e-11;
  const int total = cols + rows;  // structural + slack variables

  // Tableau: one row per constraint plus the objective row.
  Eigen::MatrixXd tab(rows + 1, total + 1);
  tab.setZero();
  tab.block(0, 0, rows, cols) = m;
  tab.block(0, cols, rows, rows) = Eigen::MatrixXd::Identity(rows, rows);
  tab.block(0, total, rows, 1) = b;
  tab.block(rows, 0, 1, cols) = -c.transpose();

  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = cols + i;

  LpResult res;
  const long max_pivots = 4096L * (rows + cols + 4);
  for (long pivot = 0;; ++pivot) {
    if (pivot > max_pivots)
      throw std::runtime_error("solve_lp: pivot limit exceeded");

    // Bland: entering variable is the lowest-index improving column.
    int enter = -1;
    for (int j = 0; j < total; ++j) {
      if (tab(rows, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;  // optimal

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows; ++i) {
      const double a = tab(i, enter);
      if (a > eps) {
        const double ratio = tab(i, total) / a;
        if (ratio < best_ratio - eps ||
            (ratio < best_ratio + eps &&
             (leave < 0 || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      res.unbounded = true;
      return res;
    }

    tab.row(leave) /= tab(leave, enter);
    for (int i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double f = tab(i, enter);
      if (f != 0.0) tab.row(i) -= f * tab.row(leave);
    }
    basis[leave] = enter;
  }

  res.optimal = true;
  res.t = Eigen::VectorXd::Zero(cols);
  for (int i = 0; i < rows; ++i)
    if (basis[i] < cols) res.t(basis[i]) = std::max(0.0, tab(i, total));
  res.prices = tab.block(rows, cols, 1, rows).transpose();
  res.value = c.dot(res.t);
  return res;
}

}  // namespace funtf::detail
