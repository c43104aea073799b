#include "funtf/construct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "funtf/detail/rng.hpp"

namespace funtf {
namespace {

using detail::Rng;

constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool one_unconditional(const SpaceSpec& s) {
  return s.kind() == NormKind::Lp || s.kind() == NormKind::WeightedLp;
}

// Normalized canonical basis pair (e_j/s, s e_j*) with s = ||e_j||; its
// rank-one operator is exactly e_j* (x) e_j.
FramePair basis_pair(const SpaceSpec& space, int j) {
  CVec x = CVec::Zero(space.dim());
  x[j] = 1.0;
  const double s = space.norm(x);
  FramePair p;
  p.x = x / s;
  p.f = CVec::Zero(space.dim());
  p.f[j] = s;
  return p;
}

}  // namespace

LozFactorization lozanovskii(const SpaceSpec& space, const RVec& t) {
  require(one_unconditional(space),
          "lozanovskii: space must have a 1-unconditional canonical basis");
  require(t.size() == space.dim(), "lozanovskii: weight length mismatch");
  for (int i = 0; i < t.size(); ++i)
    require(t[i] >= 0.0, "lozanovskii: negative weight entry");
  require(std::abs(t.sum() - 1.0) <= 1e-8,
          "lozanovskii: weights must lie on the simplex");

  const int n = space.dim();
  const RVec w = space.kind() == NormKind::WeightedLp ? space.weights()
                                                      : RVec::Ones(n);
  const double p = space.p();
  LozFactorization loz;
  loz.alphas.resize(n);
  loz.betas.resize(n);
  for (int j = 0; j < n; ++j) {
    if (p == kInfP) {
      loz.alphas[j] = 1.0 / w[j];
      loz.betas[j] = t[j] * w[j];
    } else if (p == 1.0) {
      loz.alphas[j] = t[j] / w[j];
      loz.betas[j] = w[j];
    } else {
      loz.alphas[j] = std::pow(t[j] / w[j], 1.0 / p);
      loz.betas[j] =
          loz.alphas[j] > 0.0 ? t[j] / loz.alphas[j] : 0.0;
    }
  }
  return loz;
}

FrameSystem dft_funtf(const DiagonalTarget& target) {
  const SpaceSpec& space = target.space;
  const int n = space.dim();
  require(one_unconditional(space),
          "dft_funtf: space must have a 1-unconditional canonical basis");
  require(target.lambdas.size() == n, "dft_funtf: diagonal length mismatch");
  for (int j = 0; j < n; ++j)
    require(target.lambdas[j] >= -1e-12, "dft_funtf: negative diagonal");
  require(std::abs(target.lambdas.sum() - n) <= 1e-9,
          "dft_funtf: diagonal must sum to the dimension");
  if (space.is_real() && n > 2)
    throw std::invalid_argument(
        "dft_funtf: no real construction for dimension > 2");

  const RVec t = target.lambdas.cwiseMax(0.0) / static_cast<double>(n);
  const LozFactorization loz = lozanovskii(space, t);

  std::vector<FramePair> pairs;
  if (n == 1) {
    FramePair p;
    p.x = CVec::Constant(1, Complex(loz.alphas[0], 0.0));
    p.f = CVec::Constant(1, Complex(loz.betas[0], 0.0));
    pairs = {p};
  } else if (space.is_real()) {  // n == 2 sign variant
    FramePair p1, p2;
    p1.x = p2.x = CVec::Zero(2);
    p1.f = p2.f = CVec::Zero(2);
    p1.x << loz.alphas[0], loz.alphas[1];
    p1.f << loz.betas[0], loz.betas[1];
    p2.x << loz.alphas[0], -loz.alphas[1];
    p2.f << loz.betas[0], -loz.betas[1];
    pairs = {p1, p2};
  } else {
    for (int k = 0; k < n; ++k) {
      FramePair p;
      p.x.resize(n);
      p.f.resize(n);
      for (int j = 0; j < n; ++j) {
        const double ang = -2.0 * kPi * k * (j + 1) / n;  // w^(k(j+1))
        const Complex wkj(std::cos(ang), std::sin(ang));
        p.x[j] = wkj * loz.alphas[j];
        p.f[j] = std::conj(wkj) * loz.betas[j];
      }
      pairs.push_back(std::move(p));
    }
  }
  return FrameSystem(space, std::move(pairs));
}

FrameSystem funtf_of_length(const SpaceSpec& space, int length) {
  const int n = space.dim();
  require(one_unconditional(space),
          "funtf_of_length: space must have a 1-unconditional basis");
  if (space.is_real() && n > 2)
    throw std::invalid_argument(
        "funtf_of_length: real field supported only in dimension 2");
  if (length < n)
    throw std::invalid_argument("funtf_of_length: length must be >= dim");

  RVec lambda = RVec::Constant(n, static_cast<double>(length) / n);
  std::vector<int> peeled;
  for (int step = 0; step < length - n; ++step) {
    int jstar = 0;
    for (int j = 1; j < n; ++j)
      if (lambda[j] > lambda[jstar]) jstar = j;  // ties keep the lowest index
    lambda[jstar] -= 1.0;
    peeled.push_back(jstar);
  }
  DiagonalTarget target{space, lambda};
  std::vector<FramePair> pairs = dft_funtf(target).pairs();
  for (int j : peeled) pairs.push_back(basis_pair(space, j));
  return FrameSystem(space, std::move(pairs));
}

FrameSystem ell1_funtf_n_plus_1(int n) {
  require(n >= 3, "ell1_funtf_n_plus_1: needs dimension >= 3");
  const SpaceSpec space = SpaceSpec::lp(n, 1.0);
  const double a =
      (static_cast<double>(n) * n - 2.0 * n - 1.0) / (2.0 * n * (n - 2.0));
  const double off = (1.0 - a) / (n - 1.0);
  std::vector<FramePair> pairs;
  for (int j = 0; j < n; ++j) {
    FramePair p;
    p.x = CVec::Constant(n, Complex(-off, 0.0));
    p.x[j] = a;
    p.f = CVec::Constant(n, Complex(-1.0, 0.0));
    p.f[j] = 1.0;
    pairs.push_back(std::move(p));
  }
  FramePair last;
  last.x = CVec::Constant(n, Complex(1.0 / n, 0.0));
  last.f = CVec::Constant(n, Complex(1.0, 0.0));
  pairs.push_back(std::move(last));
  return FrameSystem(space, std::move(pairs));
}

namespace {

// Klein four-group sign rows: pairwise products sum to zero.
const int kSigns[4][3] = {{+1, +1, +1}, {+1, -1, -1}, {-1, +1, -1},
                          {-1, -1, +1}};

FramePair scaled_sign_pair(const SpaceSpec& space, const RVec& mags,
                           const int* signs, int count) {
  FramePair p;
  p.x = CVec::Zero(space.dim());
  p.f = CVec::Zero(space.dim());
  for (int i = 0; i < count; ++i) {
    p.x[i] = mags[i] * signs[i];
    p.f[i] = signs[i];
  }
  return p;
}

}  // namespace

FrameSystem ell1_special(int dim, int length) {
  if (dim == 3 && length == 5) {
    const SpaceSpec space = SpaceSpec::lp(3, 1.0);
    const double a = 1.0 / 6.0, b = 5.0 / 12.0;
    std::vector<FramePair> pairs{basis_pair(space, 0)};
    RVec mags(3);
    mags << a, b, b;
    for (const auto& s : kSigns)
      pairs.push_back(scaled_sign_pair(space, mags, s, 3));
    return FrameSystem(space, std::move(pairs));
  }
  if (dim == 4 && (length == 6 || length == 7)) {
    const SpaceSpec space = SpaceSpec::lp(4, 1.0);
    const double a = length == 6 ? 1.0 / 4.0 : 1.0 / 8.0;
    const double b = length == 6 ? 3.0 / 8.0 : 7.0 / 16.0;
    const double c = length == 6 ? 1.0 / 4.0 : 5.0 / 8.0;
    const double d = length == 6 ? 3.0 / 4.0 : 3.0 / 8.0;
    std::vector<FramePair> pairs;
    RVec mags(3);
    mags << a, b, b;
    for (const auto& s : kSigns)
      pairs.push_back(scaled_sign_pair(space, mags, s, 3));
    for (int sign : {+1, -1}) {
      FramePair p;
      p.x = CVec::Zero(4);
      p.f = CVec::Zero(4);
      p.x[0] = c;
      p.x[3] = sign * d;
      p.f[0] = 1.0;
      p.f[3] = sign;
      pairs.push_back(std::move(p));
    }
    if (length == 7) pairs.push_back(basis_pair(space, 3));
    return FrameSystem(space, std::move(pairs));
  }
  throw std::invalid_argument("ell1_special: supported (dim, length) are "
                              "(3,5), (4,6), (4,7)");
}

FrameSystem ell1_funtf(int n, int length) {
  require(n >= 2, "ell1_funtf: needs dimension >= 2");
  if (length < n)
    throw std::invalid_argument("ell1_funtf: length must be >= dim");
  const SpaceSpec space = SpaceSpec::lp(n, 1.0);
  if (n == 2) return funtf_of_length(space, length);

  std::vector<int> units{n, n + 1};
  if (n == 3) units.push_back(5);
  if (n == 4) {
    units.push_back(6);
    units.push_back(7);
  }
  // Reachability table preferring basis blocks, then increasing block size.
  std::vector<int> via(length + 1, -1);
  via[0] = 0;
  for (int k = 1; k <= length; ++k)
    for (int u : units)
      if (k >= u && via[k - u] >= 0) {
        via[k] = u;
        break;
      }
  if (via[length] < 0)
    throw std::domain_error(
        "ell1_funtf: no known decomposition of this length (open case)");

  std::vector<FramePair> pairs;
  auto append = [&pairs](const FrameSystem& block) {
    for (const auto& p : block.pairs()) pairs.push_back(p);
  };
  int rem = length;
  while (rem > 0) {
    const int u = via[rem];
    if (u == n) {
      for (int j = 0; j < n; ++j) pairs.push_back(basis_pair(space, j));
    } else if (u == n + 1)
      append(ell1_funtf_n_plus_1(n));
    else
      append(ell1_special(n, u));
    rem -= u;
  }
  return FrameSystem(space, std::move(pairs));
}

// ---------------------------------------------------------------------------
// Residual-minimization search.

namespace {

// Projects raw functional coordinates onto the norming face of x: the result
// satisfies ||f||_* <= 1 and f(x) = 1 for unit x.  Norms with a unique
// norming functional ignore the raw values; l1-type norms keep the raw choice
// on the free (zero-coordinate) directions, sup-type norms keep the raw mass
// distribution over the max-attaining coordinates.
CVec face_functional(const SpaceSpec& space, const CVec& x, const CVec& raw) {
  if (space.kind() == NormKind::Polytope || space.is_smooth_lp())
    return space.normalizing_functional(x);
  const bool weighted = space.kind() == NormKind::WeightedLp;
  auto wt = [&](int k) { return weighted ? space.weights()[k] : 1.0; };
  const int n = space.dim();
  CVec f = CVec::Zero(n);
  if (space.p() == 1.0) {
    for (int k = 0; k < n; ++k) {
      const double m = std::abs(x[k]);
      if (m > 0.0) {
        f[k] = wt(k) * std::conj(x[k] / m);
      } else {
        const double r = std::abs(raw[k]);
        f[k] = r <= wt(k) ? raw[k] : raw[k] * (wt(k) / r);
      }
    }
    return f;
  }
  // Sup norm: a convex combination of the single-axis norming vertices.
  const double nx = space.norm(x);
  double total = 0.0;
  std::vector<double> mass(n, 0.0);
  for (int k = 0; k < n; ++k)
    if (wt(k) * std::abs(x[k]) >= nx * (1.0 - 1e-12)) {
      mass[k] = std::abs(raw[k]) / wt(k);
      total += mass[k];
    }
  if (total <= 1e-12) return space.normalizing_functional(x);
  for (int k = 0; k < n; ++k)
    if (mass[k] > 0.0)
      f[k] = wt(k) * (mass[k] / total) * std::conj(x[k] / std::abs(x[k]));
  return f;
}

CMat residual_matrix(const std::vector<FramePair>& pairs, int n,
                     double lambda) {
  CMat m = -lambda * CMat::Identity(n, n);
  for (const auto& p : pairs) m += p.x * p.f.transpose();
  return m;
}

double frame_residual(const std::vector<FramePair>& pairs, int n,
                      double lambda) {
  return residual_matrix(pairs, n, lambda).squaredNorm();
}

struct SearchEngine {
  SpaceSpec space;
  int n = 0;
  int big_n = 0;
  double lambda = 0.0;
  bool smooth = false;  // re-pair via normalizing_functional
  bool cplx = false;
  double min_coord = 0.0;
  int reals_per_coord = 1;
  int x_vars = 0;  // leading x block of the variable vector
  mutable double mu = 1.0;

  CVec unpack(const RVec& v, int offset) const {
    CVec out(n);
    for (int i = 0; i < n; ++i) {
      const double re = v[offset + reals_per_coord * i];
      const double im = cplx ? v[offset + reals_per_coord * i + 1] : 0.0;
      out[i] = Complex(re, im);
    }
    return out;
  }

  // Unit-sphere projection with the optional coordinate-avoidance clamp.
  CVec project_x(const CVec& raw) const {
    CVec x = raw;
    if (x.norm() < 1e-12) x[0] = 1.0;
    for (int pass = 0; pass < 6; ++pass) {
      if (min_coord > 0.0)
        for (int i = 0; i < n; ++i) {
          const double m = std::abs(x[i]);
          if (m < min_coord)
            x[i] = m < 1e-300 ? Complex(min_coord, 0.0)
                              : x[i] * (min_coord / m);
        }
      const double nm = space.norm(x);
      if (nm > 1e-300) x /= nm;
      if (min_coord <= 0.0) break;
    }
    return x;
  }

  struct Eval {
    double objective = 0.0;
    double residual = 0.0;  // ||M - lambda I||_F^2
    std::vector<FramePair> pairs;
  };

  Eval evaluate(const RVec& v) const {
    Eval e;
    e.pairs.resize(big_n);
    double pen = 0.0;
    for (int j = 0; j < big_n; ++j) {
      const CVec x = project_x(unpack(v, j * n * reals_per_coord));
      CVec f;
      if (smooth) {
        f = space.normalizing_functional(x);
      } else {
        f = unpack(v, x_vars + j * n * reals_per_coord);
        const double excess = space.dual_norm(f) - 1.0;
        if (excess > 0.0) pen += excess * excess;
        const Complex act = pairing(f, x) - Complex(1.0, 0.0);
        pen += std::norm(act);
      }
      e.pairs[j].x = x;
      e.pairs[j].f = f;
    }
    e.residual = frame_residual(e.pairs, n, lambda);
    e.objective = e.residual + mu * pen;
    return e;
  }

  // Exactly feasible frame read off the same variables: x on the unit
  // sphere, f on the norming face of x.  Its residual is the honest figure
  // of merit; the relaxed objective above only steers the descent.
  Eval feasible(const RVec& v) const {
    Eval e;
    e.pairs.resize(big_n);
    for (int j = 0; j < big_n; ++j) {
      const CVec x = project_x(unpack(v, j * n * reals_per_coord));
      e.pairs[j].x = x;
      e.pairs[j].f =
          smooth ? space.normalizing_functional(x)
                 : face_functional(space, x,
                                   unpack(v, x_vars + j * n * reals_per_coord));
    }
    e.residual = frame_residual(e.pairs, n, lambda);
    e.objective = e.residual;
    return e;
  }
};

// Zeroes every x coordinate below thr relative to its vector's largest one;
// candidate supports for the feasible refinement.
void snap_x_block(RVec* v, const SearchEngine& eng, double thr) {
  const int rpc = eng.reals_per_coord;
  for (int j = 0; j < eng.big_n; ++j) {
    const int off = j * eng.n * rpc;
    double scale = 0.0;
    for (int i = 0; i < eng.n; ++i) {
      const double im = eng.cplx ? (*v)[off + rpc * i + 1] : 0.0;
      scale = std::max(scale, std::hypot((*v)[off + rpc * i], im));
    }
    if (scale <= 0.0) continue;
    for (int i = 0; i < eng.n; ++i) {
      const double im = eng.cplx ? (*v)[off + rpc * i + 1] : 0.0;
      if (std::hypot((*v)[off + rpc * i], im) < thr * scale) {
        (*v)[off + rpc * i] = 0.0;
        if (eng.cplx) (*v)[off + rpc * i + 1] = 0.0;
      }
    }
  }
}

// Damped Gauss-Newton on the entries of M - lambda I read from the exactly
// feasible frame.  The relaxed descent only reaches a basin; this closes the
// remaining digits, which plain coordinate moves do too slowly.
void newton_refine(const SearchEngine& eng, RVec* v) {
  const int n = eng.n;
  const int rows = 2 * n * n;
  const int vars = static_cast<int>(v->size());
  const auto resvec = [&](const RVec& w, RVec* out) {
    const auto e = eng.feasible(w);
    const CMat m = residual_matrix(e.pairs, n, eng.lambda);
    out->resize(rows);
    int k = 0;
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) {
        (*out)[k++] = m(r, c).real();
        (*out)[k++] = m(r, c).imag();
      }
    return e.residual;
  };
  RVec r0(rows);
  double cur = resvec(*v, &r0);
  double damp = 1e-8;
  const double h = 1e-7;
  for (int it = 0; it < 60 && cur > 1e-28; ++it) {
    RMat jac(rows, vars);
    RVec vp, vm, rp(rows), rm(rows);
    for (int i = 0; i < vars; ++i) {
      vp = *v;
      vm = *v;
      vp[i] += h;
      vm[i] -= h;
      resvec(vp, &rp);
      resvec(vm, &rm);
      jac.col(i) = (rp - rm) / (2.0 * h);
    }
    const RMat jtj = jac.transpose() * jac;
    const RVec g = jac.transpose() * r0;
    bool accepted = false;
    for (int bt = 0; bt < 10 && !accepted; ++bt) {
      RMat a = jtj;
      a.diagonal().array() += damp;
      const RVec trial = *v + a.ldlt().solve(RVec(-g));
      RVec rt(rows);
      const double res = resvec(trial, &rt);
      if (res < cur) {
        *v = trial;
        r0 = rt;
        cur = res;
        damp = std::max(damp * 0.25, 1e-12);
        accepted = true;
      } else {
        damp *= 10.0;
      }
    }
    if (!accepted) break;
  }
}

// Exact sphere renormalization plus rounding of near-lattice entries; only
// adopted when it genuinely reduces the residual.
bool cleanup_pairs(const SpaceSpec& space, std::vector<FramePair>* pairs,
                   double lambda, double* residual) {
  const int n = space.dim();
  std::vector<FramePair> snap = *pairs;
  const double tol = 2e-4;
  for (auto& p : snap) {
    for (int i = 0; i < n; ++i) {
      if (std::abs(p.x[i]) < tol) p.x[i] = 0.0;
      if (std::abs(p.f[i]) < tol) p.f[i] = 0.0;
      for (double target : {1.0, -1.0}) {
        if (std::abs(p.x[i] - target) < tol) p.x[i] = target;
        if (std::abs(p.f[i] - target) < tol) p.f[i] = target;
      }
    }
    const double nx = space.norm(p.x);
    if (nx < 1e-12) return false;
    p.x /= nx;
    const Complex act = pairing(p.f, p.x);
    if (std::abs(act) < 1e-9) return false;
    p.f /= act;  // forces f(x) = 1; valid only if ||f|| stays 1
    if (std::abs(space.dual_norm(p.f) - 1.0) > 1e-9) return false;
  }
  const double res = frame_residual(snap, n, lambda);
  if (res < *residual) {
    *pairs = std::move(snap);
    *residual = res;
    return true;
  }
  return false;
}

}  // namespace

SearchResult search_funtf(const SpaceSpec& space, int length,
                          const SearchOptions& opts) {
  const int n = space.dim();
  if (length < n)
    throw std::invalid_argument("search_funtf: length must be >= dim");

  SearchEngine eng;
  eng.space = space;
  eng.n = n;
  eng.big_n = length;
  eng.lambda = static_cast<double>(length) / n;
  eng.smooth = space.is_smooth_lp();
  eng.cplx = !space.is_real();
  eng.min_coord = opts.min_coord;
  eng.reals_per_coord = eng.cplx ? 2 : 1;
  eng.x_vars = length * n * eng.reals_per_coord;

  const int total_vars = eng.smooth ? eng.x_vars : 2 * eng.x_vars;
  const auto run_once = [&](std::uint64_t seed) -> SearchResult {
    Rng rng(seed);
    RVec v(total_vars);
    for (int i = 0; i < eng.x_vars; ++i) v[i] = rng.normal();
    if (!eng.smooth) {
      // Pair each start with its normalizing functional.
      for (int j = 0; j < length; ++j) {
        const CVec x =
            eng.project_x(eng.unpack(v, j * n * eng.reals_per_coord));
        const CVec f = space.normalizing_functional(x);
        for (int i = 0; i < n; ++i) {
          v[eng.x_vars + j * n * eng.reals_per_coord +
            eng.reals_per_coord * i] = f[i].real();
          if (eng.cplx)
            v[eng.x_vars + j * n * eng.reals_per_coord +
              eng.reals_per_coord * i + 1] = f[i].imag();
        }
      }
    }

    eng.mu = 1.0;
    auto eval = eng.evaluate(v);
    int iters = 0;
    double step = 0.1;
    const double fd = 1e-6;
    for (; iters < opts.max_iters; ++iters) {
      if (iters > 0 && iters % 200 == 0) {
        eng.mu *= 10.0;
        eval = eng.evaluate(v);
      }
      RVec grad(total_vars);
      for (int i = 0; i < total_vars; ++i) {
        RVec vp = v, vm = v;
        vp[i] += fd;
        vm[i] -= fd;
        grad[i] = (eng.evaluate(vp).objective - eng.evaluate(vm).objective) /
                  (2.0 * fd);
      }
      const double gn = grad.norm();
      if (gn < 1e-13) break;
      bool accepted = false;
      double s = step;
      for (int bt = 0; bt < 24; ++bt) {
        const RVec trial = v - (s / gn) * grad;
        const auto te = eng.evaluate(trial);
        if (te.objective < eval.objective - 1e-18) {
          v = trial;
          eval = te;
          step = std::min(0.5, s * 1.6);
          accepted = true;
          break;
        }
        s *= 0.5;
      }
      if (!accepted) {
        if (step < 1e-12) break;
        step *= 0.25;
      }
      if (eval.objective < 1e-22) break;
    }

    // Derivative-free polish: cyclic golden-section over single variables,
    // adopting a coordinate move only when the objective strictly drops.
    const auto polish = [&](RVec* vv,
                            const std::function<double(const RVec&)>& obj,
                            int sweeps, double width0) {
      const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
      double best = obj(*vv);
      double width = width0;
      for (int sweep = 0; sweep < sweeps && width > 1e-13; ++sweep) {
        for (int i = 0; i < total_vars; ++i) {
          double a = (*vv)[i] - width, b = (*vv)[i] + width;
          double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
          auto at = [&](double val) {
            RVec w = *vv;
            w[i] = val;
            return obj(w);
          };
          double f1 = at(x1), f2 = at(x2);
          for (int it = 0; it < 24; ++it) {
            if (f1 <= f2) {
              b = x2;
              x2 = x1;
              f2 = f1;
              x1 = b - invphi * (b - a);
              f1 = at(x1);
            } else {
              a = x1;
              x1 = x2;
              f1 = f2;
              x2 = a + invphi * (b - a);
              f2 = at(x2);
            }
          }
          const double point = f1 <= f2 ? x1 : x2;
          const double fval = std::min(f1, f2);
          if (fval < best) {
            (*vv)[i] = point;
            best = fval;
          }
        }
        width *= 0.45;
      }
      return best;
    };
    polish(&v, [&](const RVec& w) { return eng.evaluate(w).objective; }, 36,
           0.02);

    // Honest reporting: the returned residual always belongs to an exactly
    // feasible frame.  Refine the feasible objective directly -- short
    // golden sweeps to settle the face pattern, Gauss-Newton for the last
    // digits -- over a few sparsity patterns; keep whatever genuinely wins.
    const auto feas_obj = [&](const RVec& w) {
      return eng.feasible(w).objective;
    };
    RVec vbest = v;
    double best_res = eng.feasible(v).residual;
    for (const double thr : {0.0, 1e-3, 3e-3, 1e-2, 3e-2}) {
      if (best_res <= 1e-24) break;
      if (thr > 0.0 && opts.min_coord > 0.0) break;  // clamp voids sparsity
      RVec w = v;
      if (thr > 0.0) snap_x_block(&w, eng, thr);
      polish(&w, feas_obj, 8, 0.01);
      newton_refine(eng, &w);
      const double r = eng.feasible(w).residual;
      if (r < best_res) {
        best_res = r;
        vbest = w;
      }
    }

    auto fe = eng.feasible(vbest);
    std::vector<FramePair> pairs = std::move(fe.pairs);
    double residual = fe.residual;
    if (opts.min_coord <= 0.0)
      cleanup_pairs(space, &pairs, eng.lambda, &residual);

    return SearchResult{residual <= 1e-10, residual, iters,
                        FrameSystem(space, std::move(pairs))};
  };

  // A few deterministic restarts; the first success ends the sweep and
  // otherwise the attempt with the smallest feasible residual is reported.
  SearchResult best = run_once(opts.seed);
  for (int attempt = 1; attempt < 4 && !best.success; ++attempt) {
    SearchResult cand = run_once(opts.seed + 0x9e3779b97f4a7c15ull * attempt);
    if (cand.residual < best.residual) best = std::move(cand);
  }
  return best;
}

}  // namespace funtf
