#pragma once

#include <vector>

#include "funtf/frame.hpp"
#include "funtf/space.hpp"

namespace funtf {

// Operator norm of T : X -> Y with a flag telling whether the value is exact
// (rank-one, real polyhedral domain, or Hilbert-to-Hilbert) or a multi-start
// ascent estimate from below.
struct OperatorNormResult {
  double value = 0.0;
  bool exact = false;
};

OperatorNormResult operator_norm(const CMat& t, const SpaceSpec& domain,
                                 const SpaceSpec& range);
OperatorNormResult operator_norm(const OperatorMatrix& t);

// Worst-case error when any m of the frame coefficients are deleted:
// max over m-subsets of || sum_{j in subset} f_j (x) x_j ||.
struct ErasureReport {
  int m = 0;
  double value = 0.0;
  std::vector<int> argmax_subset;  // 1-based indices
  bool heuristic = false;          // some subset norm was only estimated
  std::vector<std::pair<std::vector<int>, double>> per_subset;
};

ErasureReport erasure_error(const FrameSystem& frame, int m,
                            bool keep_table = false);

// Characterization test for one-erasure optimality of a Schauder frame:
// every pair must satisfy ||x_j|| ||f_j|| = f_j(x_j) = n/N, and the
// norm-rescaled pairs must form a FUNTF.
struct ErasureOptimality {
  bool optimal = false;
  double ratio = 0.0;               // n/N
  std::vector<int> violations;      // 1-based indices failing the equality
  Classification rescaled;          // classification of the rescaled system
};

ErasureOptimality is_erasure_optimal(const FrameSystem& frame,
                                     double tol = 1e-9);

}  // namespace funtf
