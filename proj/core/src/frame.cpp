#include "funtf/frame.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "funtf/detail/rng.hpp"

namespace funtf {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

FrameSystem::FrameSystem(SpaceSpec space, std::vector<FramePair> pairs)
    : space_(std::move(space)), pairs_(std::move(pairs)) {
  require(!pairs_.empty(), "frame must contain at least one pair");
  normalized_ = true;
  for (const auto& p : pairs_) {
    require(p.x.size() == space_.dim() && p.f.size() == space_.dim(),
            "frame pair dimension mismatch");
    const double nx = space_.norm(p.x);
    const double nf = space_.dual_norm(p.f);
    const Complex fx = pairing(p.f, p.x);
    if (std::abs(nx - 1.0) > 1e-9 || std::abs(nf - 1.0) > 1e-9 ||
        std::abs(fx - Complex(1.0, 0.0)) > 1e-9)
      normalized_ = false;
  }
}

FrameSystem concat(const FrameSystem& a, const FrameSystem& b) {
  require(a.space() == b.space(), "frame union requires a common space");
  std::vector<FramePair> pairs = a.pairs();
  pairs.insert(pairs.end(), b.pairs().begin(), b.pairs().end());
  return FrameSystem(a.space(), std::move(pairs));
}

FrameSystem rescale(const FrameSystem& frame, double d,
                    const std::vector<double>& c) {
  require(static_cast<int>(c.size()) == frame.length(),
          "one scale per frame pair required");
  std::vector<FramePair> pairs;
  pairs.reserve(frame.pairs().size());
  for (int j = 0; j < frame.length(); ++j) {
    require(c[j] != 0.0, "pair scales must be nonzero");
    const auto& p = frame.pairs()[j];
    pairs.push_back({d * c[j] * p.x, p.f / c[j]});
  }
  return FrameSystem(frame.space(), std::move(pairs));
}

OperatorMatrix frame_operator(const FrameSystem& frame) {
  const int n = frame.space().dim();
  CMat m = CMat::Zero(n, n);
  for (const auto& p : frame.pairs()) m += p.x * p.f.transpose();
  return {std::move(m), frame.space()};
}

Classification classify(const FrameSystem& frame, double tol) {
  require(tol > 0.0, "tol must be positive");
  const int n = frame.space().dim();
  const CMat m = frame_operator(frame).mat;
  const Complex lam = m.trace() / static_cast<double>(n);
  const CMat eye = CMat::Identity(n, n);

  Classification c;
  c.normalized = frame.normalized();
  c.lambda = lam.real();
  c.tight_residual = (m - lam * eye).norm();
  c.schauder_residual = (m - eye).norm();
  Eigen::JacobiSVD<CMat> svd(m);
  c.sigma_min = svd.singularValues().minCoeff();

  if (c.normalized && c.tight_residual <= tol)
    c.kind = FrameClass::Funtf;
  else if (c.schauder_residual <= tol)
    c.kind = FrameClass::Schauder;
  else if (c.sigma_min > tol)
    c.kind = FrameClass::Approximate;
  else
    c.kind = FrameClass::None;
  return c;
}

std::string to_string(FrameClass c) {
  switch (c) {
    case FrameClass::Funtf: return "funtf";
    case FrameClass::Schauder: return "schauder";
    case FrameClass::Approximate: return "approximate";
    case FrameClass::None: return "none";
  }
  return "none";
}

double naive_potential_sq(const FrameSystem& frame) {
  double s = 0.0;
  for (const auto& pj : frame.pairs())
    for (const auto& pk : frame.pairs()) s += std::norm(pairing(pj.f, pk.x));
  return s;
}

double naive_potential_sym(const FrameSystem& frame) {
  double s = 0.0;
  for (const auto& pj : frame.pairs())
    for (const auto& pk : frame.pairs())
      s += std::abs(pairing(pj.f, pk.x) * pairing(pk.f, pj.x));
  return s;
}

double trace_lower_bound(const FrameSystem& frame) {
  Complex tr(0.0, 0.0);
  for (const auto& p : frame.pairs()) tr += pairing(p.f, p.x);
  return std::norm(tr) / frame.space().dim();
}

namespace {

FrameSystem canonical_basis_pairs(const SpaceSpec& space) {
  const int n = space.dim();
  std::vector<FramePair> pairs;
  for (int k = 0; k < n; ++k) {
    CVec e = CVec::Zero(n);
    e[k] = 1.0;
    double s = 1.0;
    if (space.kind() == NormKind::WeightedLp) {
      const double w = space.weights()[k];
      s = space.p() == kInfP ? w : std::pow(w, 1.0 / space.p());
    }
    pairs.push_back({e / s, e * s});
  }
  return FrameSystem(space, std::move(pairs));
}

}  // namespace

FrameSystem auerbach_basis(const SpaceSpec& space, const AuerbachOptions& opts) {
  if (space.kind() != NormKind::Polytope) return canonical_basis_pairs(space);

  // Determinant maximization over the ball vertices: cyclic best-vertex
  // exchange from multiple seeded starts. At a maximizer the biorthogonal
  // functionals have dual norm 1.
  const int n = space.dim();
  const std::vector<RVec> verts = ball_vertices(space);
  require(static_cast<int>(verts.size()) >= n, "degenerate polytope ball");
  detail::Rng rng(opts.seed);

  double best_det = 0.0;
  RMat best;
  for (int start = 0; start < opts.starts; ++start) {
    RMat m(n, n);
    for (int j = 0; j < n; ++j)
      m.col(j) = verts[rng.uniform_int(static_cast<int>(verts.size()))];
    double det = std::abs(m.determinant());
    for (int iter = 0; iter < opts.max_iters; ++iter) {
      bool improved = false;
      for (int j = 0; j < n; ++j) {
        for (const auto& v : verts) {
          RMat trial = m;
          trial.col(j) = v;
          const double d = std::abs(trial.determinant());
          if (d > det * (1.0 + 1e-12)) {
            m = trial;
            det = d;
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
    if (det > best_det) {
      best_det = det;
      best = m;
    }
  }
  require(best_det > 1e-12, "auerbach optimizer failed to find a basis");

  const RMat finv = best.inverse();  // rows are the biorthogonal functionals
  std::vector<FramePair> pairs;
  for (int j = 0; j < n; ++j) {
    CVec x(n), f(n);
    x.real() = best.col(j);
    x.imag().setZero();
    f.real() = finv.row(j).transpose();
    f.imag().setZero();
    pairs.push_back({std::move(x), std::move(f)});
  }
  FrameSystem result(space, std::move(pairs));
  for (const auto& p : result.pairs()) {
    if (std::abs(space.norm(p.x) - 1.0) > 1e-8 ||
        std::abs(space.dual_norm(p.f) - 1.0) > 1e-8)
      throw std::runtime_error(
          "auerbach optimizer converged to a non-Auerbach local maximum");
  }
  return result;
}

}  // namespace funtf
