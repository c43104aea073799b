#pragma once

#include <cstdint>

#include "funtf/frame.hpp"
#include "funtf/space.hpp"

namespace funtf {

// Nonnegative diagonal (lambda_j) for a 1-unconditional space; the sum is
// the intended projection count.
struct DiagonalTarget {
  SpaceSpec space;
  RVec lambdas;
};

// alpha on the unit sphere of X, beta on the dual sphere, with
// alpha_j * beta_j = t_j coordinatewise.
struct LozFactorization {
  RVec alphas;
  RVec betas;
};

// Splits a simplex weight t into unit-sphere factors. lp rule:
// alpha_j = t_j^(1/p), beta_j = t_j^(1/q); weighted lp absorbs the weights
// as alpha_j = (t_j / w_j)^(1/p), beta_j = t_j^(1/q) w_j^(1/p).
LozFactorization lozanovskii(const SpaceSpec& space, const RVec& t);

// Length-n normalized frame with frame operator diag(lambda), sum lambda = n:
// x_k[j] = w^(kj) alpha_j and f_k[j] = w^(-kj) beta_j with w = exp(-2 pi i/n)
// and 1-based j (k = 0..n-1). Real field only for n = 2, via the sign
// variant x_1 = a1 e1 + a2 e2, x_2 = a1 e1 - a2 e2.
FrameSystem dft_funtf(const DiagonalTarget& target);

// Length-N FUNTF (operator (N/n) I) by induction: repeatedly decrement the
// largest lambda_j > 1 of the uniform diagonal (ties to the lowest index),
// appending the normalized basis pair (e_j/||e_j||, ||e_j|| e_j*), then close
// with dft_funtf on the residual trace-n diagonal.
FrameSystem funtf_of_length(const SpaceSpec& space, int length);

// Real l1^n FUNTF of length n+1 (n >= 3): x_j = a e_j - (1-a)/(n-1) sum e_i,
// sign functionals, closed by the uniform vector; a solves
// -a + (n-3)(1-a)/(n-1) + 1/n = 0.
FrameSystem ell1_funtf_n_plus_1(int n);

// Hard-coded real l1 families (dim, length) in {(3,5), (4,6), (4,7)} with
// operators (5/3) I, (3/2) I, (7/4) I.
FrameSystem ell1_special(int dim, int length);

// Real l1^n FUNTF of any representable length, assembled as a union of
// basis blocks, (n+1)-blocks, and the hard-coded specials. Lengths with no
// known decomposition (e.g. n = 5, N = 7) throw std::domain_error.
FrameSystem ell1_funtf(int n, int length);

struct SearchOptions {
  std::uint64_t seed = 1;
  int max_iters = 2000;
  // > 0 keeps every |x_j[k]| >= min_coord (the coordinate-avoidance
  // restriction of the parity experiment).
  double min_coord = 0.0;
};

struct SearchResult {
  bool success = false;
  double residual = 0.0;  // ||frame_operator - (N/n) I||_F^2 as returned
  int iters = 0;
  FrameSystem frame;
};

// Residual minimization over normalized pairs: projection for the vectors,
// normalizing-functional re-pairing for smooth norms, penalties for
// ||f|| <= 1 and f(x) = 1 otherwise (penalty weight x10 every 200
// iterations).  The reported residual always belongs to an exactly feasible
// frame (each f projected onto the norming face of its x), refined by a
// Gauss-Newton pass; a few deterministic restarts are derived from the seed.
// Success iff the final residual is <= 1e-10.
SearchResult search_funtf(const SpaceSpec& space, int length,
                          const SearchOptions& opts = {});

}  // namespace funtf
