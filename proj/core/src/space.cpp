#include "funtf/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "funtf/detail/rng.hpp"

namespace funtf {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double conj_q(double p) {
  if (p == 1.0) return kInfP;
  if (p == kInfP) return 1.0;
  return p / (p - 1.0);
}

Complex unit_phase(Complex z) {
  const double a = std::abs(z);
  if (a == 0.0) return Complex(1.0, 0.0);
  return z / a;
}

bool lex_less(const RVec& a, const RVec& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

// Append every vector (s_1 c_1, ..., s_n c_n) over sign patterns s.
void append_sign_patterns(const RVec& c, std::vector<RVec>* out) {
  const int n = static_cast<int>(c.size());
  require(n <= 20, "sign-pattern enumeration too large");
  const std::int64_t total = std::int64_t{1} << n;
  for (std::int64_t mask = 0; mask < total; ++mask) {
    RVec v(n);
    for (int k = 0; k < n; ++k)
      v[k] = (mask >> k & 1) ? -c[k] : c[k];
    out->push_back(std::move(v));
  }
}

std::vector<RVec> polytope_ball_vertices(int n,
                                         const std::vector<RVec>& duals) {
  // Vertices of {x : |<v_i, x>| <= 1} via enumeration of n-subsets of the
  // constraint rows with all sign choices.
  const int m = static_cast<int>(duals.size());
  std::vector<RVec> verts;
  std::vector<int> idx(n);
  std::vector<int> comb(n);
  for (int i = 0; i < n; ++i) comb[i] = i;
  auto next_comb = [&]() {
    int i = n - 1;
    while (i >= 0 && comb[i] == m - n + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
    return true;
  };
  if (m < n) return verts;
  do {
    RMat a(n, n);
    for (int r = 0; r < n; ++r) a.row(r) = duals[comb[r]].transpose();
    Eigen::FullPivLU<RMat> lu(a);
    if (!lu.isInvertible()) continue;
    const std::int64_t total = std::int64_t{1} << n;
    for (std::int64_t mask = 0; mask < total; ++mask) {
      RVec rhs(n);
      for (int r = 0; r < n; ++r) rhs[r] = (mask >> r & 1) ? -1.0 : 1.0;
      RVec x = lu.solve(rhs);
      double worst = 0.0;
      for (const auto& v : duals) worst = std::max(worst, std::abs(v.dot(x)));
      if (worst > 1.0 + 1e-9) continue;
      bool dup = false;
      for (const auto& w : verts)
        if ((w - x).lpNorm<Eigen::Infinity>() <= 1e-9) {
          dup = true;
          break;
        }
      if (!dup) verts.push_back(std::move(x));
    }
  } while (next_comb());
  return verts;
}

}  // namespace

SpaceSpec SpaceSpec::lp(int dim, double p, Field field) {
  require(dim >= 1, "dim must be positive");
  require(p >= 1.0, "p must be >= 1");
  SpaceSpec s;
  s.dim_ = dim;
  s.field_ = field;
  s.kind_ = NormKind::Lp;
  s.p_ = p;
  return s;
}

SpaceSpec SpaceSpec::weighted_lp(int dim, double p, RVec weights, Field field) {
  require(dim >= 1, "dim must be positive");
  require(p >= 1.0, "p must be >= 1");
  require(weights.size() == dim, "weights length must equal dim");
  require((weights.array() > 0.0).all(), "weights must be strictly positive");
  SpaceSpec s;
  s.dim_ = dim;
  s.field_ = field;
  s.kind_ = NormKind::WeightedLp;
  s.p_ = p;
  s.weights_ = std::move(weights);
  return s;
}

SpaceSpec SpaceSpec::polytope(int dim, std::vector<RVec> dual_vertices) {
  require(dim >= 1, "dim must be positive");
  require(!dual_vertices.empty(), "polytope needs dual vertices");
  RMat all(dim, static_cast<int>(dual_vertices.size()));
  for (std::size_t i = 0; i < dual_vertices.size(); ++i) {
    require(dual_vertices[i].size() == dim, "dual vertex dimension mismatch");
    all.col(static_cast<int>(i)) = dual_vertices[i];
    bool has_neg = false;
    for (const auto& w : dual_vertices)
      if ((w + dual_vertices[i]).lpNorm<Eigen::Infinity>() <= 1e-12) {
        has_neg = true;
        break;
      }
    require(has_neg, "polytope dual vertices must be symmetric");
  }
  Eigen::FullPivLU<RMat> lu(all);
  require(lu.rank() == dim, "polytope dual vertices must span R^n");
  SpaceSpec s;
  s.dim_ = dim;
  s.field_ = Field::Real;
  s.kind_ = NormKind::Polytope;
  s.p_ = 0.0;
  s.dual_vertices_ = std::move(dual_vertices);
  return s;
}

void SpaceSpec::check_vector(const CVec& v) const {
  require(v.size() == dim_, "vector dimension mismatch");
  if (is_real()) {
    const double scale = 1.0 + v.cwiseAbs().maxCoeff();
    require(v.imag().cwiseAbs().maxCoeff() <= 1e-9 * scale,
            "complex vector in a real space");
  }
}

SpaceSpec SpaceSpec::dual() const {
  switch (kind_) {
    case NormKind::Lp:
      return lp(dim_, conj_q(p_), field_);
    case NormKind::WeightedLp: {
      const double q = conj_q(p_);
      RVec w(dim_);
      if (p_ == 1.0 || p_ == kInfP)
        w = weights_.cwiseInverse();
      else
        for (int k = 0; k < dim_; ++k)
          w[k] = std::pow(weights_[k], -q / p_);
      return weighted_lp(dim_, q, std::move(w), field_);
    }
    case NormKind::Polytope:
      return polytope(dim_, ball_vertices(*this));
  }
  throw std::logic_error("unreachable");
}

double SpaceSpec::norm(const CVec& x) const {
  check_vector(x);
  const RVec a = x.cwiseAbs();
  switch (kind_) {
    case NormKind::Lp:
    case NormKind::WeightedLp: {
      const bool weighted = kind_ == NormKind::WeightedLp;
      if (p_ == kInfP) {
        double m = 0.0;
        for (int k = 0; k < dim_; ++k)
          m = std::max(m, weighted ? weights_[k] * a[k] : a[k]);
        return m;
      }
      if (p_ == 1.0) return weighted ? weights_.dot(a) : a.sum();
      const double mx = a.maxCoeff();
      if (mx == 0.0) return 0.0;
      double s = 0.0;
      for (int k = 0; k < dim_; ++k) {
        const double t = std::pow(a[k] / mx, p_);
        s += weighted ? weights_[k] * t : t;
      }
      return mx * std::pow(s, 1.0 / p_);
    }
    case NormKind::Polytope: {
      double m = 0.0;
      for (const auto& v : dual_vertices_)
        m = std::max(m, std::abs(v.dot(x.real())));
      return m;
    }
  }
  throw std::logic_error("unreachable");
}

double SpaceSpec::dual_norm(const CVec& f) const {
  check_vector(f);
  if (kind_ == NormKind::Polytope) {
    // sup of f over the unit ball, a polytope: max over its vertices.
    double m = 0.0;
    for (const auto& v : ball_vertices(*this))
      m = std::max(m, std::abs(f.real().dot(v)));
    return m;
  }
  return dual().norm(f);
}

CVec SpaceSpec::normalizing_functional(const CVec& x) const {
  check_vector(x);
  const double nx = norm(x);
  require(nx > 0.0, "normalizing_functional of the zero vector");
  CVec f = CVec::Zero(dim_);
  const bool weighted = kind_ == NormKind::WeightedLp;
  auto wt = [&](int k) { return weighted ? weights_[k] : 1.0; };

  if (kind_ == NormKind::Polytope) {
    // Optimal vertices satisfy <v, x> = ||x||; pick the lex-smallest.
    const RVec xr = x.real();
    const RVec* best = nullptr;
    for (const auto& v : dual_vertices_) {
      if (v.dot(xr) != nx) continue;
      if (best == nullptr || lex_less(v, *best)) best = &v;
    }
    require(best != nullptr, "polytope norm attained by no stored vertex");
    f.real() = *best;
    return f;
  }
  if (p_ == 1.0) {
    // Dual-ball vertex with f_k = w_k * conj-phase on the support; free
    // coordinates take the lex-smallest choice -w_k.
    for (int k = 0; k < dim_; ++k)
      f[k] = x[k] == Complex(0.0, 0.0) ? Complex(-wt(k), 0.0)
                                       : wt(k) * std::conj(unit_phase(x[k]));
    return f;
  }
  if (p_ == kInfP) {
    // Candidates are single-axis vertices at max-attaining coordinates.
    if (is_real()) {
      RVec best;
      for (int k = 0; k < dim_; ++k) {
        if (wt(k) * std::abs(x[k]) != nx) continue;
        RVec cand = RVec::Zero(dim_);
        cand[k] = wt(k) * (x[k].real() < 0.0 ? -1.0 : 1.0);
        if (best.size() == 0 || lex_less(cand, best)) best = std::move(cand);
      }
      f.real() = best;
      return f;
    }
    for (int k = 0; k < dim_; ++k)
      if (wt(k) * std::abs(x[k]) == nx) {
        f[k] = wt(k) * std::conj(unit_phase(x[k]));
        return f;
      }
    throw std::logic_error("max norm attained nowhere");
  }
  // Smooth lp: f_k = w_k * conj-phase(x_k) |x_k / ||x|| |^{p-1}.
  for (int k = 0; k < dim_; ++k) {
    const double a = std::abs(x[k]);
    if (a == 0.0) continue;
    f[k] = wt(k) * std::conj(unit_phase(x[k])) * std::pow(a / nx, p_ - 1.0);
  }
  return f;
}

bool SpaceSpec::operator==(const SpaceSpec& other) const {
  if (dim_ != other.dim_ || field_ != other.field_ || kind_ != other.kind_)
    return false;
  switch (kind_) {
    case NormKind::Lp:
      return p_ == other.p_;
    case NormKind::WeightedLp:
      return p_ == other.p_ && weights_ == other.weights_;
    case NormKind::Polytope: {
      if (dual_vertices_.size() != other.dual_vertices_.size()) return false;
      for (std::size_t i = 0; i < dual_vertices_.size(); ++i)
        if (dual_vertices_[i] != other.dual_vertices_[i]) return false;
      return true;
    }
  }
  return false;
}

std::vector<RVec> ball_vertices(const SpaceSpec& space) {
  require(space.is_polyhedral(), "ball vertices need a real polyhedral space");
  const int n = space.dim();
  std::vector<RVec> out;
  switch (space.kind()) {
    case NormKind::Lp:
    case NormKind::WeightedLp: {
      const bool weighted = space.kind() == NormKind::WeightedLp;
      if (space.p() == 1.0) {
        for (int k = 0; k < n; ++k) {
          RVec v = RVec::Zero(n);
          v[k] = weighted ? 1.0 / space.weights()[k] : 1.0;
          out.push_back(v);
          out.push_back(-v);
        }
      } else {  // p == inf
        RVec c = RVec::Ones(n);
        if (weighted) c = space.weights().cwiseInverse();
        append_sign_patterns(c, &out);
      }
      return out;
    }
    case NormKind::Polytope:
      return polytope_ball_vertices(n, space.dual_vertices());
  }
  throw std::logic_error("unreachable");
}

DualExtremePoints dual_extreme_points(const SpaceSpec& space, int budget) {
  require(budget >= 1, "budget must be positive");
  const int n = space.dim();
  DualExtremePoints result;
  auto push_real = [&](const RVec& v) {
    CVec c(n);
    c.real() = v;
    c.imag().setZero();
    result.points.push_back(std::move(c));
  };

  if (space.is_real() && space.is_polyhedral()) {
    result.exhaustive = true;
    switch (space.kind()) {
      case NormKind::Polytope:
        for (const auto& v : space.dual_vertices()) push_real(v);
        return result;
      case NormKind::Lp:
      case NormKind::WeightedLp: {
        const bool weighted = space.kind() == NormKind::WeightedLp;
        std::vector<RVec> verts;
        if (space.p() == 1.0) {
          RVec c = RVec::Ones(n);
          if (weighted) c = space.weights();
          append_sign_patterns(c, &verts);
        } else {
          for (int k = 0; k < n; ++k) {
            RVec v = RVec::Zero(n);
            v[k] = weighted ? space.weights()[k] : 1.0;
            verts.push_back(v);
            verts.push_back(-v);
          }
        }
        for (const auto& v : verts) push_real(v);
        return result;
      }
    }
  }

  result.exhaustive = false;
  auto push_unit = [&](CVec f) {
    const double dn = space.dual_norm(f);
    if (dn <= 1e-14) return;
    f /= dn;
    for (const auto& q : result.points)
      if ((q - f).cwiseAbs().maxCoeff() <= 1e-12) return;
    result.points.push_back(std::move(f));
  };

  if (space.is_real()) {
    // Quasi-uniform sphere samples rescaled to the dual sphere.
    if (n == 2) {
      for (int k = 0; k < budget; ++k) {
        const double t = 2.0 * kPi * k / budget;
        CVec f(2);
        f << Complex(std::cos(t), 0.0), Complex(std::sin(t), 0.0);
        push_unit(std::move(f));
      }
    } else {
      detail::Rng rng(0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(budget));
      for (int k = 0; k < budget; ++k) {
        CVec f(n);
        for (int j = 0; j < n; ++j) f[j] = Complex(rng.normal(), 0.0);
        push_unit(std::move(f));
      }
    }
    for (int k = 0; k < n; ++k) {
      CVec f = CVec::Zero(n);
      f[k] = 1.0;
      push_unit(f);
      push_unit(CVec(-f));
    }
    return result;
  }

  // Complex: 16-phase discretization, budget-capped deterministic sample.
  constexpr int kPhases = 16;
  detail::Rng rng(0xC0FFEE0123456789ULL ^ static_cast<std::uint64_t>(budget));
  auto phase = [&](int t) {
    const double a = 2.0 * kPi * t / kPhases;
    return Complex(std::cos(a), std::sin(a));
  };
  for (int k = 0; k < n; ++k)
    for (int t = 0; t < kPhases; ++t) {
      CVec f = CVec::Zero(n);
      f[k] = phase(t);
      push_unit(std::move(f));
    }
  for (int attempts = 0;
       static_cast<int>(result.points.size()) < budget && attempts < 64 * budget;
       ++attempts) {
    CVec f(n);
    if (space.kind() != NormKind::Polytope && space.p() == 1.0) {
      for (int j = 0; j < n; ++j) f[j] = phase(rng.uniform_int(kPhases));
    } else {
      for (int j = 0; j < n; ++j)
        f[j] = Complex(rng.normal(), rng.normal());
    }
    push_unit(std::move(f));
  }
  return result;
}

CVec norming_point(const SpaceSpec& space, const CVec& f) {
  return space.dual().normalizing_functional(f);
}

double norm(const SpaceSpec& space, const CVec& x) { return space.norm(x); }
double dual_norm(const SpaceSpec& space, const CVec& f) {
  return space.dual_norm(f);
}
CVec normalizing_functional(const SpaceSpec& space, const CVec& x) {
  return space.normalizing_functional(x);
}

RVec real_part_checked(const CVec& v) {
  const double scale = 1.0 + v.cwiseAbs().maxCoeff();
  if (v.imag().cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("expected a real vector");
  return v.real();
}

}  // namespace funtf
