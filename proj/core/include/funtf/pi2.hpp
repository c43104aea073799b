#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "funtf/frame.hpp"
#include "funtf/space.hpp"

namespace funtf {

// A finite sequence (x_j) in X with sum_j |f(x_j)|^2 <= ||f||_{X*}^2 for
// every dual functional f. Certified over the exhaustive dual-vertex set for
// real polyhedral X, by lambda_max for Hilbert X, by sampling otherwise.
struct AdmissibleSequence {
  SpaceSpec space;
  std::vector<CVec> vectors;
};

// Probability weights over unit dual functionals g_i; the gram
// G_w = sum_i w_i conj(g_i) g_i^T (Hermitian PSD) witnesses the upper bound
// pi2(T)^2 <= sup_x ||Tx||^2 / <x, G_w x>.
struct PietschCertificate {
  std::vector<CVec> vertices;
  RVec weights;
  CMat gram;
};

struct Pi2Result {
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;
  AdmissibleSequence witness;
  PietschCertificate certificate;
  bool has_certificate = false;
};

struct Pi2Options {
  double tol = 1e-6;        // target gap upper - lower
  int max_iters = 500;      // outer minimization iterations
  int restarts = 8;         // ascent restarts
  int seq_len = 0;          // 0 = k(k+1)/2 (real) or k^2 (complex), k=rank
  int budget = 64;          // dual sampling budget on non-polyhedral paths
  std::uint64_t seed = 7;
};

// Feasible objective value (a valid lower bound on pi2(T)) plus its witness.
// Projected block-coordinate ascent; feasibility is restored by rescaling
// the whole sequence by 1/sqrt(max admissibility violation).
std::pair<double, AdmissibleSequence> pi2_lower(const CMat& T,
                                                const SpaceSpec& domain,
                                                const SpaceSpec& range,
                                                int seq_len = 0,
                                                int restarts = 8);

// Pietsch-type upper bound: minimize over simplex weights w the value
// sup_x ||Tx||^2 / <x, G_w x> (closed-form inner maximum for polyhedral or
// Hilbert range; sampled otherwise, which makes the value a heuristic).
// Every iterate yields a valid bound; the best one is returned.
std::pair<double, PietschCertificate> pi2_upper(const CMat& T,
                                                const SpaceSpec& domain,
                                                const SpaceSpec& range,
                                                int max_iters = 500,
                                                double tol = 1e-9);

// Certified interval around pi2(T). Hilbert-to-Hilbert returns the Frobenius
// value exactly; otherwise combines pi2_upper, pi2_lower, an LP polish of
// the witness against the certificate, the trace bound |tr T|/sqrt(n), and
// the best single-unit-vector witness. certified = exhaustive dual sets and
// gap <= tol.
Pi2Result pi2(const CMat& T, const SpaceSpec& domain, const SpaceSpec& range,
              const Pi2Options& opts);
Pi2Result pi2(const CMat& T, const SpaceSpec& domain, const SpaceSpec& range,
              double tol = 1e-6);
Pi2Result pi2(const OperatorMatrix& T, double tol = 1e-6);

// Frame potential FP = pi2(S)^2 for the frame operator S: the pi2 interval
// with both endpoints squared (tol is on the pi2 scale).
Pi2Result frame_potential(const FrameSystem& frame, double tol = 1e-6);

// For seeded random S with pi2(S) normalized to 1 (via the certified upper
// endpoint) and ||S - I/sqrt(n)||_F >= 0.1, records gap = sqrt(n) - tr(S);
// the norm-one identity is the unique trace maximizer, so every gap must be
// strictly positive.
struct SmoothnessReport {
  int trials = 0;
  double min_gap = 0.0;
  bool all_positive = false;
  std::vector<double> gaps;
};

SmoothnessReport smoothness_probe(const SpaceSpec& space, int trials,
                                  std::uint64_t seed = 2026);

}  // namespace funtf
