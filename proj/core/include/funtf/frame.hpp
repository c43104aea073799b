#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "funtf/space.hpp"

namespace funtf {

// One frame pair: a vector x and a functional f acting by f(x) = sum f_k x_k
// (bilinear, no conjugation).
struct FramePair {
  CVec x;
  CVec f;
};

inline Complex pairing(const CVec& f, const CVec& x) {
  return (f.array() * x.array()).sum();
}

// N pairs (x_j, f_j) over a common space. The normalized flag reports whether
// ||x_j|| = ||f_j|| = f_j(x_j) = 1 for every j, each within 1e-9.
class FrameSystem {
 public:
  FrameSystem(SpaceSpec space, std::vector<FramePair> pairs);

  const SpaceSpec& space() const { return space_; }
  const std::vector<FramePair>& pairs() const { return pairs_; }
  int length() const { return static_cast<int>(pairs_.size()); }
  bool normalized() const { return normalized_; }

 private:
  SpaceSpec space_;
  std::vector<FramePair> pairs_;
  bool normalized_;
};

// Union of two frames over the same space.
FrameSystem concat(const FrameSystem& a, const FrameSystem& b);

// Frame (d * c_j x_j, f_j / c_j); its operator is d * M.
FrameSystem rescale(const FrameSystem& frame, double d,
                    const std::vector<double>& c);

struct OperatorMatrix {
  CMat mat;
  SpaceSpec space;
};

// S = sum_j f_j (x) x_j as the matrix M_ik = sum_j x_j[i] f_j[k].
OperatorMatrix frame_operator(const FrameSystem& frame);

enum class FrameClass { Funtf, Schauder, Approximate, None };

struct Classification {
  FrameClass kind = FrameClass::None;
  // Fitted tight scale tr(M)/n and the distances used by the decision; the
  // fitted values are reported for every frame, not only FUNTFs.
  double lambda = 0.0;
  double tight_residual = 0.0;     // ||M - lambda I||_F
  double schauder_residual = 0.0;  // ||M - I||_F
  double sigma_min = 0.0;
  bool normalized = false;
};

// funtf(lambda) iff normalized and ||M - lambda I||_F <= tol with
// lambda = tr(M)/n; else schauder iff ||M - I||_F <= tol; else approximate
// iff sigma_min(M) > tol; else none.
Classification classify(const FrameSystem& frame, double tol = 1e-8);

std::string to_string(FrameClass c);

// sum_jk |f_j(x_k)|^2 and sum_jk |f_j(x_k) f_k(x_j)| (both fail as frame
// potentials; kept for the counterexamples).
double naive_potential_sq(const FrameSystem& frame);
double naive_potential_sym(const FrameSystem& frame);

// |sum_j f_j(x_j)|^2 / n, a valid frame-potential lower bound; equals N^2/n
// for normalized frames.
double trace_lower_bound(const FrameSystem& frame);

struct AuerbachOptions {
  int starts = 32;
  int max_iters = 200;
  std::uint64_t seed = 1;
};

// Length-n system with ||x_j|| = ||f_j|| = f_j(x_j) = 1 and f_j(x_i) = 0 for
// i != j (within 1e-8). Canonical basis pairs for Lp/WeightedLp; determinant
// maximization over ball vertices for polytope norms.
FrameSystem auerbach_basis(const SpaceSpec& space,
                           const AuerbachOptions& opts = {});

}  // namespace funtf
