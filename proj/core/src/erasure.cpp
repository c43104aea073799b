#include "funtf/erasure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "funtf/detail/rng.hpp"

namespace funtf {
namespace {

using detail::Rng;

bool hilbert_root(const SpaceSpec& s, RVec* root) {
  if (s.kind() == NormKind::Polytope || s.p() != 2.0) return false;
  *root = s.kind() == NormKind::WeightedLp
              ? s.weights().cwiseSqrt().eval()
              : RVec::Ones(s.dim()).eval();
  return true;
}

// Alternating maximization of ||Tz||_Y over the unit ball of X: the norming
// functional of Tz pulls back to a linear form on X whose norming point can
// only increase the value.
double ascent_from(const CMat& t, const SpaceSpec& dom, const SpaceSpec& ran,
                   CVec z) {
  const double nz = dom.norm(z);
  if (nz < 1e-300) return 0.0;
  z /= nz;
  double best = ran.norm(t * z);
  for (int it = 0; it < 80; ++it) {
    const CVec y = t * z;
    const double ny = ran.norm(y);
    if (ny < 1e-300) break;
    const CVec h = ran.normalizing_functional(y);
    const CVec g = t.transpose() * h;
    const CVec znew = norming_point(dom, g);
    const double val = ran.norm(t * znew);
    if (val <= best + 1e-15) {
      best = std::max(best, val);
      break;
    }
    best = val;
    z = znew;
  }
  return best;
}

}  // namespace

OperatorNormResult operator_norm(const CMat& t, const SpaceSpec& domain,
                                 const SpaceSpec& range) {
  if (t.cols() != domain.dim() || t.rows() != range.dim())
    throw std::invalid_argument("operator_norm: dimension mismatch");
  OperatorNormResult res;

  Eigen::JacobiSVD<CMat> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sing = svd.singularValues();
  const double smax = sing.size() > 0 ? sing[0] : 0.0;
  if (smax <= 0.0) {
    res.value = 0.0;
    res.exact = true;
    return res;
  }
  const bool rank_one = sing.size() < 2 || sing[1] <= 1e-12 * smax;
  if (rank_one) {  // T = x f^T with x = s*u, f = conj(v)
    const CVec x = smax * svd.matrixU().col(0);
    const CVec f = svd.matrixV().col(0).conjugate();
    res.value = range.norm(x) * domain.dual_norm(f);
    res.exact = true;
    return res;
  }

  RVec rd, rr;
  if (hilbert_root(domain, &rd) && hilbert_root(range, &rr)) {
    const CMat a = rr.asDiagonal() * t * rd.cwiseInverse().asDiagonal();
    res.value = a.jacobiSvd().singularValues()[0];
    res.exact = true;
    return res;
  }

  if (domain.is_real() && domain.is_polyhedral() && domain.dim() <= 16) {
    double best = 0.0;
    for (const RVec& v : ball_vertices(domain))
      best = std::max(best, range.norm(t * v.cast<Complex>()));
    res.value = best;
    res.exact = true;
    return res;
  }

  // Heuristic path: multi-start alternating ascent (lower estimate).
  double best = 0.0;
  const DualExtremePoints deps = dual_extreme_points(domain, 32);
  const CVec vtop = svd.matrixV().col(0).conjugate();
  best = std::max(best, ascent_from(t, domain, range, norming_point(domain, vtop)));
  int used = 1;
  for (const CVec& g : deps.points) {
    if (used >= 32) break;
    best = std::max(best, ascent_from(t, domain, range, norming_point(domain, g)));
    ++used;
  }
  Rng rng(20260814u);
  const bool cplx = !domain.is_real() || !range.is_real();
  for (; used < 64; ++used) {
    CVec z(domain.dim());
    for (int i = 0; i < domain.dim(); ++i)
      z[i] = Complex(rng.normal(), cplx ? rng.normal() : 0.0);
    best = std::max(best, ascent_from(t, domain, range, z));
  }
  res.value = best;
  res.exact = false;
  return res;
}

OperatorNormResult operator_norm(const OperatorMatrix& t) {
  return operator_norm(t.mat, t.space, t.space);
}

ErasureReport erasure_error(const FrameSystem& frame, int m, bool keep_table) {
  const int big_n = frame.length();
  const int n = frame.space().dim();
  if (m < 1 || m >= big_n)
    throw std::invalid_argument("erasure_error: need 1 <= m < frame length");

  double combos = 1.0;
  for (int i = 0; i < m; ++i) combos = combos * (big_n - i) / (i + 1);
  if (combos > 1e6)
    throw std::invalid_argument("erasure_error: subset count exceeds 10^6");

  ErasureReport report;
  report.m = m;

  if (m == 1) {  // exact closed form: the largest rank-one norm
    for (int j = 0; j < big_n; ++j) {
      const auto& p = frame.pairs()[j];
      const double v =
          frame.space().norm(p.x) * frame.space().dual_norm(p.f);
      if (keep_table) report.per_subset.push_back({{j + 1}, v});
      if (v > report.value) {
        report.value = v;
        report.argmax_subset = {j + 1};
      }
    }
    report.heuristic = false;
    return report;
  }

  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    CMat s = CMat::Zero(n, n);
    for (int j : idx) {
      const auto& p = frame.pairs()[j];
      s += p.x * p.f.transpose();
    }
    const OperatorNormResult nrm =
        operator_norm(s, frame.space(), frame.space());
    std::vector<int> subset(m);
    for (int i = 0; i < m; ++i) subset[i] = idx[i] + 1;
    if (keep_table) report.per_subset.push_back({subset, nrm.value});
    if (!nrm.exact) report.heuristic = true;
    if (nrm.value > report.value) {
      report.value = nrm.value;
      report.argmax_subset = subset;
    }
    // next combination in lexicographic order
    int i = m - 1;
    while (i >= 0 && idx[i] == big_n - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int k = i + 1; k < m; ++k) idx[k] = idx[k - 1] + 1;
  }
  return report;
}

ErasureOptimality is_erasure_optimal(const FrameSystem& frame, double tol) {
  const int big_n = frame.length();
  const int n = frame.space().dim();
  const Classification cls = classify(frame);
  if (cls.schauder_residual > 1e-8)
    throw std::invalid_argument(
        "is_erasure_optimal: frame operator is not the identity");

  ErasureOptimality out;
  out.ratio = static_cast<double>(n) / big_n;
  std::vector<FramePair> rescaled;
  for (int j = 0; j < big_n; ++j) {
    const auto& p = frame.pairs()[j];
    const double nx = frame.space().norm(p.x);
    const double nf = frame.space().dual_norm(p.f);
    const Complex act = pairing(p.f, p.x);
    const bool ok = std::abs(nx * nf - out.ratio) <= tol &&
                    std::abs(act - Complex(out.ratio, 0.0)) <= tol;
    if (!ok) out.violations.push_back(j + 1);
    if (nx > 1e-300 && nf > 1e-300)
      rescaled.push_back({p.x / nx, p.f / nf});
  }
  out.optimal = out.violations.empty();
  if (rescaled.size() == static_cast<size_t>(big_n)) {
    out.rescaled = classify(FrameSystem(frame.space(), std::move(rescaled)));
    if (out.optimal && out.rescaled.kind != FrameClass::Funtf)
      out.optimal = false;  // characterization demands the rescaled FUNTF
  } else if (out.optimal) {
    out.optimal = false;
  }
  return out;
}

}  // namespace funtf
