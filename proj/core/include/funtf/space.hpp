#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <vector>

namespace funtf {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

enum class Field { Real, Complex };
enum class NormKind { Lp, WeightedLp, Polytope };

inline constexpr double kInfP = std::numeric_limits<double>::infinity();

// A finite-dimensional normed space over R or C: lp, weighted lp, or a real
// polytope norm ||x|| = max_v |<v, x>| over the stored dual-ball vertices.
class SpaceSpec {
 public:
  // Empty 0-dimensional placeholder; use the factories for real spaces.
  SpaceSpec() = default;

  static SpaceSpec lp(int dim, double p, Field field = Field::Real);
  static SpaceSpec weighted_lp(int dim, double p, RVec weights,
                               Field field = Field::Real);
  static SpaceSpec polytope(int dim, std::vector<RVec> dual_vertices);

  int dim() const { return dim_; }
  Field field() const { return field_; }
  NormKind kind() const { return kind_; }
  double p() const { return p_; }
  const RVec& weights() const { return weights_; }
  // Stored generators of the dual ball, one per +/- pair not deduplicated.
  const std::vector<RVec>& dual_vertices() const { return dual_vertices_; }

  bool is_real() const { return field_ == Field::Real; }
  bool is_hilbert() const { return kind_ == NormKind::Lp && p_ == 2.0; }
  // Unit ball and dual unit ball are polytopes with enumerable vertices.
  bool is_polyhedral() const {
    return is_real() &&
           (kind_ == NormKind::Polytope || p_ == 1.0 || p_ == kInfP);
  }
  bool is_smooth_lp() const {
    return kind_ != NormKind::Polytope && p_ > 1.0 && p_ < kInfP;
  }

  // Dual space metadata: lq with 1/p + 1/q = 1; weights transfer as
  // w -> w^(-q/p) (endpoints p in {1, inf} transfer as w -> 1/w).
  SpaceSpec dual() const;

  double norm(const CVec& x) const;
  double dual_norm(const CVec& f) const;

  // f with ||f||_{X*} = 1 and f(x) = ||x||. Unique for smooth lp; at
  // non-smooth points returns the lexicographically smallest optimal
  // dual-ball vertex (complex lp(1): conj-phases with zeros filled by -1;
  // complex lp(inf): lowest index attaining max modulus).
  CVec normalizing_functional(const CVec& x) const;

  bool operator==(const SpaceSpec& other) const;

 private:
  void check_vector(const CVec& v) const;

  int dim_ = 0;
  Field field_ = Field::Real;
  NormKind kind_ = NormKind::Lp;
  double p_ = 2.0;
  RVec weights_;
  std::vector<RVec> dual_vertices_;
};

struct DualExtremePoints {
  std::vector<CVec> points;
  bool exhaustive = false;
};

// Extreme points of the dual unit ball. Exact (exhaustive) for real
// polyhedral spaces: lp(1) -> {+-1}^n sign vectors, lp(inf) -> +-e_j*,
// polytope -> stored vertices. Smooth real norms: `budget` quasi-uniform
// unit-sphere samples plus all +-e_j*, rescaled to dual norm 1, flagged
// non-exhaustive. Complex: phase-discretized (16 phases) sample, capped by
// budget, non-exhaustive.
DualExtremePoints dual_extreme_points(const SpaceSpec& space, int budget);

// Vertices of the primal unit ball (real polyhedral spaces only):
// lp(1) -> +-e_j, lp(inf) -> sign vectors, polytope -> vertex enumeration of
// {x : |<v, x>| <= 1 for all stored v}.
std::vector<RVec> ball_vertices(const SpaceSpec& space);

// Unit vector attaining f(x) = ||f||_{X*} (the norming point of f).
CVec norming_point(const SpaceSpec& space, const CVec& f);

double norm(const SpaceSpec& space, const CVec& x);
double dual_norm(const SpaceSpec& space, const CVec& f);
CVec normalizing_functional(const SpaceSpec& space, const CVec& x);

// Real view of a vector known to live in a real space.
RVec real_part_checked(const CVec& v);

}  // namespace funtf
