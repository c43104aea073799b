#include "funtf/pi2.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "funtf/detail/rng.hpp"
#include "funtf/detail/simplex.hpp"

namespace funtf {
namespace {

using detail::Rng;

// ---------------------------------------------------------------------------
// Small numeric helpers.

// Bilinear action g(u) = sum_i g_i u_i (no conjugation).
Complex bilinear(const CVec& g, const CVec& u) {
  return (g.array() * u.array()).sum();
}

// Minimizes a convex function on [lo, hi] by golden-section search; returns
// the best (argument, value) pair seen, endpoints included.
std::pair<double, double> golden_min(const std::function<double(double)>& f,
                                     double lo, double hi, int iters = 60) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double bestx = x1, bestf = f1;
  if (f2 < bestf) bestx = x2, bestf = f2;
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
    if (f1 < bestf) bestx = x1, bestf = f1;
    if (f2 < bestf) bestx = x2, bestf = f2;
  }
  const double fl = f(lo), fh = f(hi);
  if (fl < bestf) bestx = lo, bestf = fl;
  if (fh < bestf) bestx = hi, bestf = fh;
  return {bestx, bestf};
}

// diag(sqrt(w)) when the space carries an inner product (p == 2), identity
// weights for plain l2; false otherwise.
bool hilbert_root(const SpaceSpec& s, RVec* root) {
  if (s.p() != 2.0 || s.kind() == NormKind::Polytope) return false;
  if (s.kind() == NormKind::Lp)
    *root = RVec::Ones(s.dim());
  else
    *root = s.weights().cwiseSqrt();
  return true;
}

bool same_direction(const CVec& a, const CVec& b) {
  // Equal up to a unimodular phase (covers +-1 in the real case).
  const Complex ip = (a.conjugate().array() * b.array()).sum();
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return na == nb;
  return std::abs(std::abs(ip) - na * nb) <= 1e-12 * na * nb;
}

void push_unique_direction(std::vector<CVec>* list, const CVec& v) {
  for (const auto& u : *list)
    if (same_direction(u, v)) return;
  list->push_back(v);
}

// Range cuts are not normalized: parallel cuts of different lengths can
// coexist (singular operators), and only the longest one binds.
void push_cut(std::vector<CVec>* list, const CVec& v) {
  for (auto& u : *list)
    if (same_direction(u, v)) {
      if (v.norm() > u.norm()) u = v;
      return;
    }
  list->push_back(v);
}

CVec to_cvec(const RVec& v) {
  CVec c(v.size());
  c.real() = v;
  c.imag().setZero();
  return c;
}

// ---------------------------------------------------------------------------
// Problem context shared by the upper and lower solvers.

enum class RangeMode { Polyhedral, Hilbert, Sampled };

struct Ctx {
  CMat T;
  SpaceSpec dom;
  SpaceSpec ran;
  int n = 0;

  std::vector<CVec> atoms;  // unit dual functionals of the domain
  bool dom_exhaustive = false;
  bool dom_hilbert = false;
  RVec dom_root;  // diag weights sqrt(w) when dom_hilbert

  RangeMode rmode = RangeMode::Sampled;
  std::vector<CVec> range_cuts;  // b = conj(T^T h), one per range vertex
  RVec ran_root;                 // sqrt weights when rmode == Hilbert
  CMat Teff;                     // rows scaled by ran_root in Hilbert mode
};

CVec cut_from_functional(const CMat& t, const CVec& h) {
  return (t.transpose() * h).conjugate();
}

Ctx make_ctx(const CMat& t, const SpaceSpec& dom, const SpaceSpec& ran,
             int budget) {
  if (t.rows() != ran.dim() || t.cols() != dom.dim())
    throw std::invalid_argument("pi2: operator shape does not match spaces");
  Ctx ctx;
  ctx.T = t;
  ctx.dom = dom;
  ctx.ran = ran;
  ctx.n = dom.dim();

  auto dp = dual_extreme_points(dom, budget);
  ctx.atoms = std::move(dp.points);
  ctx.dom_exhaustive = dp.exhaustive;
  ctx.dom_hilbert = hilbert_root(dom, &ctx.dom_root);

  RVec rroot;
  if (hilbert_root(ran, &rroot)) {
    ctx.rmode = RangeMode::Hilbert;
    ctx.ran_root = rroot;
    ctx.Teff = rroot.cast<Complex>().asDiagonal() * t;
  } else {
    ctx.Teff = t;
    auto rp = dual_extreme_points(ran, budget);
    ctx.rmode = (ran.is_polyhedral() && rp.exhaustive) ? RangeMode::Polyhedral
                                                       : RangeMode::Sampled;
    for (const auto& h : rp.points)
      push_cut(&ctx.range_cuts, cut_from_functional(t, h));
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Upper bound: minimize phi(w) = sup_x ||Tx||^2 / <x, G_w x> over the
// simplex, G_w = sum_i w_i conj(g_i) g_i^T + eps I with eps = 1e-12 tr(G_w).

CMat build_gram(const std::vector<CVec>& atoms, const RVec& w,
                double* eps_out = nullptr) {
  const int n = static_cast<int>(atoms.front().size());
  CMat g = CMat::Zero(n, n);
  for (int i = 0; i < w.size(); ++i)
    if (w[i] != 0.0) g += w[i] * (atoms[i].conjugate() * atoms[i].transpose());
  const double eps = 1e-12 * std::max(g.real().trace(), 1e-300);
  g += eps * CMat::Identity(n, n);
  if (eps_out) *eps_out = eps;
  return g;
}

// The regularizer inflates the denominator <x, G x> by at most
// eps ||x||^2 <= (eps / lambda_min) <x, G x>, so dividing by
// (1 - eps / lambda_min) restores a genuine bound for the unregularized
// gram. Near-singular grams get an infinite (still valid) value.
double deregularize(double phi, const CMat& gram, double eps) {
  Eigen::SelfAdjointEigenSolver<CMat> es(gram, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()[0];
  const double slack = 1.0 - eps / std::max(lmin, eps);
  if (slack <= 1e-6) return std::numeric_limits<double>::infinity();
  return phi / slack;
}

struct PhiEval {
  double phi = 0.0;
  CVec b_star;  // maximizing cut
  CVec u_star;  // G^{-1} b_star
};

PhiEval eval_phi(const Ctx& ctx, const RVec& w,
                 std::vector<CVec>* cut_pool = nullptr) {
  double eps = 0.0;
  const CMat g = build_gram(ctx.atoms, w, &eps);
  Eigen::LLT<CMat> llt(g);
  PhiEval ev;
  if (ctx.rmode == RangeMode::Hilbert) {
    const CMat x = llt.solve(ctx.Teff.adjoint());
    CMat c = ctx.Teff * x;
    c = Complex(0.5, 0.0) * (c + c.adjoint().eval());  // symmetrize fp noise
    Eigen::SelfAdjointEigenSolver<CMat> es(c);
    const int top = ctx.Teff.rows() > 0 ? static_cast<int>(c.rows()) - 1 : 0;
    ev.phi = std::max(0.0, es.eigenvalues()[top]);
    const CVec u = es.eigenvectors().col(top);
    ev.b_star = ctx.Teff.adjoint() * u;
    ev.u_star = llt.solve(ev.b_star);
  } else {
    double best = -1.0;
    for (const auto& b : ctx.range_cuts) {
      const CVec u = llt.solve(b);
      const double q = std::real(b.dot(u));
      if (q > best) {
        best = q;
        ev.b_star = b;
        ev.u_star = u;
      }
    }
    ev.phi = std::max(0.0, best);
  }
  ev.phi = deregularize(ev.phi, g, eps);
  if (cut_pool && ev.b_star.size() > 0 && ev.b_star.norm() > 1e-300)
    push_unique_direction(cut_pool, ev.b_star);
  return ev;
}

struct UpperState {
  RVec w;          // current iterate on the simplex
  double phi_best = std::numeric_limits<double>::infinity();
  RVec w_best;
  std::vector<CVec> cut_pool;  // cuts encountered, for the witness polish
};

// Frank-Wolfe cutting-plane descent; every iterate is a valid bound and the
// smallest one is kept. Deterministic.
void upper_solve(Ctx* ctx, UpperState* st, int max_iters, double tol) {
  const int n = ctx->n;
  if (st->w.size() != static_cast<int>(ctx->atoms.size())) {
    st->w = RVec::Constant(static_cast<int>(ctx->atoms.size()),
                           1.0 / static_cast<double>(ctx->atoms.size()));
  }
  int stall = 0;
  for (int iter = 0; iter < max_iters && stall < 30; ++iter) {
    const PhiEval ev = eval_phi(*ctx, st->w, &st->cut_pool);
    if (ev.phi < st->phi_best - 1e-14 * (1.0 + st->phi_best)) {
      st->phi_best = ev.phi;
      st->w_best = st->w;
      stall = 0;
    } else {
      ++stall;
    }
    if (ev.phi <= 0.0) break;

    // Steepest admissible atom: the gradient of the active piece in w_i is
    // -(|g_i^T u|)^2, so descend toward the atom maximizing |g_i^T u|^2.
    double best_score = -1.0;
    int enter = 0;
    for (int i = 0; i < static_cast<int>(ctx->atoms.size()); ++i) {
      const double s = std::norm(bilinear(ctx->atoms[i], ev.u_star));
      if (s > best_score) {
        best_score = s;
        enter = i;
      }
    }
    // Non-exhaustive domains: grow the support with the exact norming
    // functional of u when it beats every existing atom.
    if (!ctx->dom_exhaustive && ev.u_star.norm() > 1e-300) {
      const CVec gnew = ctx->dom.normalizing_functional(ev.u_star);
      const double s = std::norm(bilinear(gnew, ev.u_star));
      if (s > best_score * (1.0 + 1e-12)) {
        ctx->atoms.push_back(gnew);
        RVec w2 = RVec::Zero(st->w.size() + 1);
        w2.head(st->w.size()) = st->w;
        st->w = w2;
        if (st->w_best.size() > 0) {
          RVec wb = RVec::Zero(st->w.size());
          wb.head(st->w_best.size()) = st->w_best;
          st->w_best = wb;
        }
        enter = static_cast<int>(ctx->atoms.size()) - 1;
        best_score = s;
      }
    }

    // phi is convex along the segment toward a vertex of the simplex, so a
    // golden-section search is an exact line search here.
    const RVec w0 = st->w;
    auto along = [&](double gamma) {
      RVec w = (1.0 - gamma) * w0;
      w[enter] += gamma;
      return eval_phi(*ctx, w).phi;
    };
    auto [gamma, fval] = golden_min(along, 0.0, 1.0 - 1e-9);
    if (fval < st->phi_best - 1e-14 * (1.0 + st->phi_best)) {
      st->w = (1.0 - gamma) * w0;
      st->w[enter] += gamma;
      st->phi_best = fval;
      st->w_best = st->w;
      stall = 0;
    } else if (gamma > 0.0 && fval <= ev.phi) {
      st->w = (1.0 - gamma) * w0;
      st->w[enter] += gamma;
    }
    // Subgradient stationarity estimate of the active piece; only a
    // heuristic stop (kinks can overstate it), the bound stays valid.
    double lin = 0.0;
    for (int i = 0; i < st->w.size(); ++i)
      lin += st->w[i] * std::norm(bilinear(ctx->atoms[i], ev.u_star));
    if (best_score - lin <= tol * std::max(1.0, ev.phi) && stall > 5) break;
  }
  if (st->w_best.size() == 0) {
    st->w_best = st->w;
    st->phi_best = eval_phi(*ctx, st->w, &st->cut_pool).phi;
  }
  (void)n;
}

PietschCertificate make_certificate(const Ctx& ctx, const RVec& w) {
  PietschCertificate cert;
  cert.vertices = ctx.atoms;
  cert.weights = w;
  cert.gram = build_gram(ctx.atoms, w);
  return cert;
}

// ---------------------------------------------------------------------------
// Admissibility: sup over the dual ball of sum_j |f(x_j)|^2, evaluated
// exactly for real polyhedral domains (vertex max) and Hilbert domains
// (top eigenvalue); sampled with a phase-ascent boost otherwise.

CMat admissibility_kernel(const std::vector<CVec>& xs, int n) {
  CMat k = CMat::Zero(n, n);
  for (const auto& x : xs) k += x.conjugate() * x.transpose();
  return k;
}

double admissibility_sup(const Ctx& ctx, const std::vector<CVec>& xs) {
  if (xs.empty()) return 0.0;
  const CMat k = admissibility_kernel(xs, ctx.n);
  if (ctx.dom_hilbert) {
    const CMat d = ctx.dom_root.cast<Complex>().asDiagonal();
    CMat m = d * k * d;
    m = Complex(0.5, 0.0) * (m + m.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<CMat> es(m);
    return std::max(0.0, es.eigenvalues().maxCoeff());
  }
  double sup = 0.0;
  for (const auto& g : ctx.atoms)
    sup = std::max(sup, std::real((g.transpose() * k * g.conjugate())(0, 0)));
  if (!ctx.dom.is_real() && ctx.dom.kind() != NormKind::Polytope &&
      ctx.dom.p() == 1.0) {
    // Complex l1 domain: the dual ball is the phase torus scaled by 1/w;
    // monotone coordinate phase ascent sharpens the sampled estimate.
    RVec scale = ctx.dom.kind() == NormKind::WeightedLp
                     ? ctx.dom.weights().cwiseInverse().eval()
                     : RVec::Ones(ctx.n);
    for (int start = 0; start < 4; ++start) {
      CVec f(ctx.n);
      for (int i = 0; i < ctx.n; ++i) {
        const double th =
            2.0 * 3.14159265358979323846 * ((start * 7 + i * 3) % 16) / 16.0;
        f[i] = scale[i] * Complex(std::cos(th), std::sin(th));
      }
      for (int sweep = 0; sweep < 12; ++sweep) {
        for (int i = 0; i < ctx.n; ++i) {
          Complex r = 0.0;
          for (int l = 0; l < ctx.n; ++l)
            if (l != i) r += k(i, l) * f[l];
          const double m = std::abs(r);
          if (m > 1e-300) f[i] = scale[i] * std::conj(r) / m;
        }
      }
      sup = std::max(sup,
                     std::real((f.transpose() * k * f.conjugate())(0, 0)));
    }
  }
  return sup;
}

double sequence_value(const Ctx& ctx, const std::vector<CVec>& xs) {
  double v = 0.0;
  for (const auto& x : xs) {
    const double nm = ctx.ran.norm(ctx.T * x);
    v += nm * nm;
  }
  return v;
}

// Rescales the whole sequence onto the admissibility boundary; returns the
// feasible objective value.
double restore_feasible(const Ctx& ctx, std::vector<CVec>* xs) {
  const double viol = admissibility_sup(ctx, *xs);
  if (viol <= 0.0) return 0.0;
  const double s = 1.0 / std::sqrt(viol);
  for (auto& x : *xs) x *= s;
  return sequence_value(ctx, *xs);
}

// ---------------------------------------------------------------------------
// Lower bound: projected block-coordinate ascent.

int default_seq_len(const CMat& t, bool real_case) {
  Eigen::JacobiSVD<CMat> svd(t);
  const auto& sv = svd.singularValues();
  int k = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-12 * sv[0]) ++k;
  const int m = real_case ? k * (k + 1) / 2 : k * k;
  return std::max(1, std::min(m, 64));
}

std::vector<CVec> svd_init(const Ctx& ctx, const CMat& gram, int m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(gram);
  const RVec ev = es.eigenvalues().cwiseMax(1e-300);
  const CMat ghalf_inv = es.eigenvectors() *
                         ev.cwiseSqrt().cwiseInverse().asDiagonal() *
                         es.eigenvectors().adjoint();
  Eigen::JacobiSVD<CMat> svd(ctx.Teff * ghalf_inv, Eigen::ComputeFullV);
  std::vector<CVec> xs;
  const int cols = static_cast<int>(svd.matrixV().cols());
  for (int j = 0; j < m; ++j)
    xs.push_back(ghalf_inv * svd.matrixV().col(j % cols));
  return xs;
}

std::pair<double, std::vector<CVec>> ascent(const Ctx& ctx,
                                            std::vector<CVec> xs, Rng* rng,
                                            int max_sweeps = 250) {
  const bool cplx = !ctx.dom.is_real() || !ctx.ran.is_real();
  double val = restore_feasible(ctx, &xs);
  double eta = 0.25;
  int flat = 0;
  for (int sweep = 0; sweep < max_sweeps && flat < 6; ++sweep) {
    const double val_before = val;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      CVec d;
      const CVec y = ctx.T * xs[j];
      if (ctx.ran.norm(y) > 1e-13) {
        const CVec h = ctx.ran.normalizing_functional(y);
        d = (ctx.T.transpose() * h).conjugate();
      } else {
        d = CVec(ctx.n);
        for (int i = 0; i < ctx.n; ++i)
          d[i] = Complex(rng->normal(), cplx ? rng->normal() : 0.0);
      }
      const double dn = d.norm();
      if (dn < 1e-300) continue;
      d /= dn;
      double step = eta;
      for (int bt = 0; bt < 22; ++bt) {
        std::vector<CVec> trial = xs;
        trial[j] += step * d;
        const double tv = restore_feasible(ctx, &trial);
        if (tv > val * (1.0 + 1e-15) + 1e-300) {
          xs = std::move(trial);
          val = tv;
          break;
        }
        step *= 0.4;
      }
    }
    if (val <= val_before * (1.0 + 1e-13))
      ++flat;
    else
      flat = 0;
    eta = std::min(0.5, eta * 1.2);
  }
  val = restore_feasible(ctx, &xs);
  return {val, xs};
}

std::pair<double, std::vector<CVec>> ascent_restarts(const Ctx& ctx,
                                                     const CMat& gram,
                                                     int seq_len, int restarts,
                                                     std::uint64_t seed) {
  const bool cplx = !ctx.dom.is_real() || !ctx.ran.is_real();
  const int m = seq_len;
  double best = 0.0;
  std::vector<CVec> best_xs;
  const std::vector<CVec> base = svd_init(ctx, gram, m);
  for (int r = 0; r < std::max(1, restarts); ++r) {
    Rng rng(seed * 1315423911ull + static_cast<std::uint64_t>(r) + 1);
    std::vector<CVec> xs;
    if (r == 0) {
      xs = base;
    } else if (r < std::max(1, restarts) / 2) {
      xs = base;
      for (auto& x : xs) {
        const double sc = 0.25 * std::max(1e-3, x.norm());
        for (int i = 0; i < ctx.n; ++i)
          x[i] += sc * Complex(rng.normal(), cplx ? rng.normal() : 0.0);
      }
    } else {
      for (int j = 0; j < m; ++j) {
        CVec x(ctx.n);
        for (int i = 0; i < ctx.n; ++i)
          x[i] = Complex(rng.normal(), cplx ? rng.normal() : 0.0);
        xs.push_back(x);
      }
    }
    auto [val, out] = ascent(ctx, std::move(xs), &rng);
    if (val > best) {
      best = val;
      best_xs = std::move(out);
    }
  }
  if (best_xs.empty()) {
    CVec e = CVec::Zero(ctx.n);
    e[0] = 1.0;
    const double nm = ctx.dom.norm(e);
    best_xs.push_back(e / (nm > 0 ? nm : 1.0));
    best = sequence_value(ctx, best_xs);
  }
  return {best, best_xs};
}

// ---------------------------------------------------------------------------
// LP polish (real polyhedral domains): restrict the admissible-sequence
// program to candidate directions and solve the resulting LP exactly. The
// row prices estimate the optimal Pietsch weights, which feeds the next
// round of the upper bound (column generation).

struct LpRows {
  std::vector<RVec> verts;   // one representative per +-pair
  std::vector<int> atom_of;  // index into ctx.atoms
};

LpRows canonical_rows(const Ctx& ctx) {
  LpRows rows;
  for (int i = 0; i < static_cast<int>(ctx.atoms.size()); ++i) {
    const RVec g = ctx.atoms[i].real();
    bool dup = false;
    for (const auto& u : rows.verts)
      if ((u - g).lpNorm<Eigen::Infinity>() <= 1e-12 ||
          (u + g).lpNorm<Eigen::Infinity>() <= 1e-12) {
        dup = true;
        break;
      }
    if (!dup) {
      rows.verts.push_back(g);
      rows.atom_of.push_back(i);
    }
  }
  return rows;
}

struct PolishOutcome {
  double value = 0.0;
  std::vector<CVec> witness;
  RVec prices;  // per canonical row
  bool ok = false;
};

PolishOutcome lp_polish(const Ctx& ctx, const CMat& gram, const LpRows& rows,
                        const std::vector<CVec>& cut_pool,
                        const std::vector<CVec>& extra) {
  PolishOutcome out;
  Eigen::LLT<CMat> llt(gram);
  std::vector<CVec> cand;
  auto add_preimage = [&](const CVec& b) {
    const CVec z = llt.solve(b);
    if (z.norm() > 1e-300) push_unique_direction(&cand, z);
  };
  for (const auto& b : cut_pool) add_preimage(b);
  // Ties in the cut selection can starve the pool, so every enumerated
  // range cut contributes a candidate direction as well.
  if (ctx.range_cuts.size() <= 4096)
    for (const auto& b : ctx.range_cuts) add_preimage(b);
  for (const auto& v : ball_vertices(ctx.dom))
    push_unique_direction(&cand, to_cvec(v));
  for (const auto& z : extra)
    if (z.norm() > 1e-300) push_unique_direction(&cand, z);
  std::vector<RVec> zs;
  for (const auto& z : cand) {
    const double nm = ctx.dom.norm(z);
    if (nm > 1e-300) zs.push_back(z.real() / nm);
  }
  if (zs.empty() || rows.verts.empty()) return out;

  const int nr = static_cast<int>(rows.verts.size());
  const int nc = static_cast<int>(zs.size());
  RMat m(nr, nc);
  RVec c(nc);
  for (int jc = 0; jc < nc; ++jc) {
    const double nm = ctx.ran.norm(ctx.T * to_cvec(zs[jc]));
    c[jc] = nm * nm;
    for (int ir = 0; ir < nr; ++ir) {
      const double ip = rows.verts[ir].dot(zs[jc]);
      m(ir, jc) = ip * ip;
    }
  }
  const auto lp = detail::solve_lp(m, RVec::Ones(nr), c);
  if (!lp.optimal) return out;
  std::vector<CVec> xs;
  for (int jc = 0; jc < nc; ++jc)
    if (lp.t[jc] > 1e-15) xs.push_back(std::sqrt(lp.t[jc]) * to_cvec(zs[jc]));
  if (xs.empty()) return out;
  out.value = restore_feasible(ctx, &xs);  // exact re-verification
  out.witness = std::move(xs);
  out.prices = lp.prices;
  out.ok = true;
  return out;
}

// ---------------------------------------------------------------------------
// Fast path: both spaces carry inner products, pi2 = Frobenius norm of the
// operator written in orthonormal coordinates.

bool hilbert_fast_path(const CMat& t, const SpaceSpec& dom,
                       const SpaceSpec& ran, Pi2Result* res) {
  RVec rd, rr;
  if (!hilbert_root(dom, &rd) || !hilbert_root(ran, &rr)) return false;
  const CMat a = rr.cast<Complex>().asDiagonal() * t *
                 rd.cwiseInverse().cast<Complex>().asDiagonal();
  const double frob = a.norm();
  res->lower = res->upper = frob;
  res->certified = true;
  res->witness.space = dom;
  for (int j = 0; j < dom.dim(); ++j) {
    CVec x = CVec::Zero(dom.dim());
    x[j] = 1.0 / rd[j];
    res->witness.vectors.push_back(x);
  }
  if (frob > 0.0) {
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    PietschCertificate cert;
    std::vector<double> w;
    for (int i = 0; i < sv.size(); ++i) {
      if (sv[i] <= 0.0) continue;
      const CVec g =
          (rd.cast<Complex>().asDiagonal() * svd.matrixV().col(i)).conjugate();
      cert.vertices.push_back(g);
      w.push_back(sv[i] * sv[i] / (frob * frob));
    }
    cert.weights = Eigen::Map<RVec>(w.data(), static_cast<int>(w.size()));
    cert.gram = CMat::Zero(dom.dim(), dom.dim());
    for (std::size_t i = 0; i < cert.vertices.size(); ++i)
      cert.gram += cert.weights[static_cast<int>(i)] *
                   (cert.vertices[i].conjugate() * cert.vertices[i].transpose());
    res->certificate = std::move(cert);
    res->has_certificate = true;
  }
  return true;
}

std::vector<CVec> singleton_candidates(const Ctx& ctx) {
  std::vector<CVec> out;
  for (int j = 0; j < ctx.n; ++j) {
    CVec e = CVec::Zero(ctx.n);
    e[j] = 1.0;
    const double nm = ctx.dom.norm(e);
    if (nm > 0) out.push_back(e / nm);
  }
  if (ctx.dom.is_polyhedral() && ctx.n <= 12)
    for (const auto& v : ball_vertices(ctx.dom)) out.push_back(to_cvec(v));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::pair<double, PietschCertificate> pi2_upper(const CMat& t,
                                                const SpaceSpec& domain,
                                                const SpaceSpec& range,
                                                int max_iters, double tol) {
  Ctx ctx = make_ctx(t, domain, range, 64);
  UpperState st;
  upper_solve(&ctx, &st, max_iters, tol);
  return {std::sqrt(std::max(0.0, st.phi_best)),
          make_certificate(ctx, st.w_best)};
}

std::pair<double, AdmissibleSequence> pi2_lower(const CMat& t,
                                                const SpaceSpec& domain,
                                                const SpaceSpec& range,
                                                int seq_len, int restarts) {
  Ctx ctx = make_ctx(t, domain, range, 64);
  UpperState st;
  upper_solve(&ctx, &st, 200, 1e-9);
  const CMat gram = build_gram(ctx.atoms, st.w_best);
  const bool real_case = ctx.dom.is_real() && ctx.ran.is_real();
  const int m = seq_len > 0 ? seq_len : default_seq_len(t, real_case);
  auto [val, xs] = ascent_restarts(ctx, gram, m, restarts, 7);

  if (ctx.dom.is_polyhedral() && !ctx.dom_hilbert) {
    const LpRows rows = canonical_rows(ctx);
    auto polish = lp_polish(ctx, gram, rows, st.cut_pool, xs);
    if (polish.ok && polish.value > val) {
      val = polish.value;
      xs = std::move(polish.witness);
    }
  }
  for (const auto& x : singleton_candidates(ctx)) {
    std::vector<CVec> one{x};
    const double v = restore_feasible(ctx, &one);
    if (v > val) {
      val = v;
      xs = std::move(one);
    }
  }
  AdmissibleSequence seq;
  seq.space = domain;
  seq.vectors = std::move(xs);
  return {std::sqrt(std::max(0.0, val)), std::move(seq)};
}

Pi2Result pi2(const CMat& t, const SpaceSpec& domain, const SpaceSpec& range,
              const Pi2Options& opts) {
  if (opts.tol <= 0.0) throw std::invalid_argument("pi2: tol must be > 0");
  Pi2Result res;
  if (hilbert_fast_path(t, domain, range, &res)) return res;

  Ctx ctx = make_ctx(t, domain, range, opts.budget);
  UpperState st;
  upper_solve(&ctx, &st, opts.max_iters, 1e-9);

  const bool real_case = ctx.dom.is_real() && ctx.ran.is_real();
  const int m =
      opts.seq_len > 0 ? opts.seq_len : default_seq_len(t, real_case);
  CMat gram = build_gram(ctx.atoms, st.w_best);
  auto [low_sq, xs] = ascent_restarts(ctx, gram, m, opts.restarts, opts.seed);

  const double tol_sq = opts.tol * opts.tol;  // squared-scale slack target
  if (ctx.dom.is_polyhedral() && !ctx.dom_hilbert) {
    // Column-generation rounds: the LP value is a verified lower bound and
    // its row prices propose improved Pietsch weights.
    const LpRows rows = canonical_rows(ctx);
    for (int round = 0; round < 40; ++round) {
      auto polish = lp_polish(ctx, gram, rows, st.cut_pool, xs);
      if (!polish.ok) break;
      if (polish.value > low_sq) {
        low_sq = polish.value;
        xs = polish.witness;
      }
      if (st.phi_best - low_sq <= 0.25 * tol_sq) break;
      const double total = polish.prices.sum();
      bool improved = false;
      if (total > 1e-300) {
        RVec w = RVec::Zero(static_cast<int>(ctx.atoms.size()));
        for (std::size_t r = 0; r < rows.atom_of.size(); ++r)
          w[rows.atom_of[r]] = polish.prices[static_cast<int>(r)] / total;
        const double phi_w = eval_phi(ctx, w, &st.cut_pool).phi;
        if (phi_w < st.phi_best - 1e-15 * (1.0 + st.phi_best)) {
          st.phi_best = phi_w;
          st.w_best = w;
          improved = true;
        }
        // Exact segment search between the incumbent and the price point.
        const RVec w0 = st.w_best;
        auto along = [&](double g) {
          return eval_phi(ctx, (1.0 - g) * w0 + g * w).phi;
        };
        auto [gm, fv] = golden_min(along, 0.0, 1.0);
        if (fv < st.phi_best - 1e-15 * (1.0 + st.phi_best)) {
          st.w_best = (1.0 - gm) * w0 + gm * w;
          st.phi_best = fv;
          improved = true;
        }
      }
      if (improved) {
        st.w = st.w_best;
        upper_solve(&ctx, &st, 40, 1e-10);
        gram = build_gram(ctx.atoms, st.w_best);
      } else if (round > 2) {
        break;
      }
    }
  }

  // Always-valid fold-ins: the trace bound (endomorphisms only) and the best
  // single-unit-vector witness.
  for (const auto& x : singleton_candidates(ctx)) {
    std::vector<CVec> one{x};
    const double v = restore_feasible(ctx, &one);
    if (v > low_sq) {
      low_sq = v;
      xs = std::move(one);
    }
  }
  double lower = std::sqrt(std::max(0.0, low_sq));
  if (domain == range) {
    const double tr = std::abs(t.trace()) / std::sqrt(double(ctx.n));
    lower = std::max(lower, tr);
  }
  double upper = std::sqrt(std::max(0.0, st.phi_best));
  if (ctx.rmode == RangeMode::Sampled)
    upper = std::max(upper, lower);  // sampled inner max: heuristic value
  // The regularization leaves ~1e-12 relative slack; break exact ties.
  lower = std::min(lower, upper);

  res.lower = lower;
  res.upper = upper;
  res.certified = ctx.dom_exhaustive && ctx.rmode != RangeMode::Sampled &&
                  (upper - lower) <= opts.tol;
  res.witness.space = domain;
  res.witness.vectors = std::move(xs);
  res.certificate = make_certificate(ctx, st.w_best);
  res.has_certificate = true;
  return res;
}

Pi2Result pi2(const CMat& t, const SpaceSpec& domain, const SpaceSpec& range,
              double tol) {
  Pi2Options opts;
  opts.tol = tol;
  return pi2(t, domain, range, opts);
}

Pi2Result pi2(const OperatorMatrix& t, double tol) {
  return pi2(t.mat, t.space, t.space, tol);
}

Pi2Result frame_potential(const FrameSystem& frame, double tol) {
  const OperatorMatrix s = frame_operator(frame);
  Pi2Result r = pi2(s.mat, s.space, s.space, tol);
  r.lower *= r.lower;
  r.upper *= r.upper;
  return r;
}

SmoothnessReport smoothness_probe(const SpaceSpec& space, int trials,
                                  std::uint64_t seed) {
  RVec unused;
  const bool ok = hilbert_root(space, &unused) ||
                  (space.is_real() && space.is_polyhedral());
  if (!ok)
    throw std::invalid_argument(
        "smoothness_probe: needs a certified pi2 path (real polyhedral or "
        "inner-product space)");
  if (trials <= 0) throw std::invalid_argument("smoothness_probe: trials");
  const int n = space.dim();
  const double root_n = std::sqrt(static_cast<double>(n));
  const bool cplx = !space.is_real();
  Rng rng(seed);
  SmoothnessReport rep;
  rep.trials = trials;
  rep.min_gap = std::numeric_limits<double>::infinity();
  rep.all_positive = true;
  while (static_cast<int>(rep.gaps.size()) < trials) {
    CMat s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        s(i, j) = Complex(rng.normal(), cplx ? rng.normal() : 0.0);
    const Pi2Result r = pi2(s, space, space, 1e-6);
    if (r.upper <= 1e-12) continue;
    const CMat shat = s / r.upper;
    const double dist =
        (shat - CMat::Identity(n, n) / root_n).norm();
    if (dist < 0.1) continue;  // excluded equality neighborhood
    const double gap = root_n - std::real(shat.trace());
    rep.gaps.push_back(gap);
    rep.min_gap = std::min(rep.min_gap, gap);
    if (gap <= 0.0) rep.all_positive = false;
  }
  return rep;
}

}  // namespace funtf
