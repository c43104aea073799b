#pragma once

#include <Eigen/Dense>

namespace funtf::detail {

struct LpResult {
  bool optimal = false;
  bool unbounded = false;
  double value = 0.0;
  Eigen::VectorXd t;      // primal solution
  Eigen::VectorXd prices; // dual prices of the row constraints
};

// Solve  max c^T t  s.t.  M t <= b, t >= 0  with b >= 0 (the slack basis is
// feasible). Dense tableau simplex with Bland's rule.
LpResult solve_lp(const Eigen::MatrixXd& m, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c);

}  // namespace funtf::detail
