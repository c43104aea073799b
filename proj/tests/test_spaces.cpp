#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "funtf/space.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using funtf::Complex;
using funtf::CVec;
using funtf::dual_extreme_points;
using funtf::RVec;
using funtf::SpaceSpec;
using testfx::rv;

namespace {

RVec rw(std::initializer_list<double> vals) {
  RVec out(static_cast<int>(vals.size()));
  int i = 0;
  for (double v : vals) out[i++] = v;
  return out;
}

// l-infinity square rotated by 45 degrees, given by its dual vertices.
SpaceSpec rotated_square() {
  const double s = std::sqrt(0.5);
  return SpaceSpec::polytope(
      2, {rw({s, s}), rw({s, -s}), rw({-s, s}), rw({-s, -s})});
}

std::vector<SpaceSpec> sample_spaces() {
  return {SpaceSpec::lp(3, 1.0),
          SpaceSpec::lp(3, 1.5),
          SpaceSpec::lp(3, 2.0),
          SpaceSpec::lp(3, 3.0),
          SpaceSpec::lp(3, funtf::kInfP),
          SpaceSpec::weighted_lp(3, 2.0, rw({0.5, 1.0, 2.0})),
          SpaceSpec::weighted_lp(2, 1.0, rw({2.0, 0.25})),
          rotated_square()};
}

CVec random_vector(oracles::Rng* rng, int n, bool cplx) {
  CVec x(n);
  for (int i = 0; i < n; ++i)
    x[i] = Complex(rng->normal(), cplx ? rng->normal() : 0.0);
  return x;
}

}  // namespace

TEST_CASE("norm evaluates the unit examples") {
  CHECK(SpaceSpec::lp(2, 1.0).norm(rv({0.25, -0.75})) == doctest::Approx(1.0));
  CHECK(SpaceSpec::lp(2, 2.0).norm(rv({3, 4})) == doctest::Approx(5.0));
  CHECK(SpaceSpec::lp(4, 3.0).norm(CVec::Zero(4)) == 0.0);
  CHECK(rotated_square().norm(rv({1, 0})) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("norm agrees with the direct powering formula") {
  oracles::Rng rng(11);
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
    const SpaceSpec sp = SpaceSpec::lp(4, p);
    for (int trial = 0; trial < 50; ++trial) {
      const CVec x = random_vector(&rng, 4, false);
      CHECK(sp.norm(x) == doctest::Approx(oracles::lp_norm(x, p)).epsilon(1e-12));
    }
  }
  const RVec w = rw({0.5, 1.0, 2.0});
  const SpaceSpec wsp = SpaceSpec::weighted_lp(3, 1.0, w);
  for (int trial = 0; trial < 50; ++trial) {
    const CVec x = random_vector(&rng, 3, false);
    CHECK(wsp.norm(x) ==
          doctest::Approx(oracles::weighted_lp_norm(x, 1.0, w)).epsilon(1e-12));
  }
}

TEST_CASE("dual_norm evaluates the dual examples") {
  CHECK(SpaceSpec::lp(2, 1.0).dual_norm(rv({1, -1})) == doctest::Approx(1.0));
  CHECK(SpaceSpec::lp(2, 2.0).dual_norm(rv({3, 4})) == doctest::Approx(5.0));
  CHECK(SpaceSpec::lp(2, 1.0).dual_norm(CVec::Zero(2)) == 0.0);
}

TEST_CASE("dual_norm matches an angular-sweep supremum in 2d") {
  oracles::Rng rng(17);
  std::vector<SpaceSpec> spaces = {SpaceSpec::lp(2, 1.0),
                                   SpaceSpec::lp(2, 1.5),
                                   SpaceSpec::lp(2, 2.0),
                                   SpaceSpec::lp(2, 4.0),
                                   SpaceSpec::lp(2, funtf::kInfP),
                                   rotated_square()};
  for (const auto& sp : spaces) {
    for (int trial = 0; trial < 8; ++trial) {
      CVec f = random_vector(&rng, 2, false);
      const double direct = sp.dual_norm(f);
      const double swept = oracles::dual_norm_sweep_2d(
          f.real(), [&](const RVec& x) {
            CVec z = x.cast<Complex>();
            return sp.norm(z);
          });
      CHECK(direct == doctest::Approx(swept).epsilon(1e-6));
    }
  }
}

TEST_CASE("dual of dual returns the original exponent and weights") {
  for (double p : {1.0, 1.5, 2.0, 3.0, funtf::kInfP}) {
    const SpaceSpec sp = SpaceSpec::lp(3, p);
    const double back_p = sp.dual().dual().p();
    if (p == funtf::kInfP)
      CHECK(back_p == funtf::kInfP);
    else
      CHECK(back_p == doctest::Approx(p));
  }
  const SpaceSpec wsp = SpaceSpec::weighted_lp(3, 1.5, rw({0.5, 1.0, 2.0}));
  const SpaceSpec back = wsp.dual().dual();
  CHECK(back.p() == doctest::Approx(1.5));
  for (int i = 0; i < 3; ++i)
    CHECK(back.weights()[i] == doctest::Approx(wsp.weights()[i]));
}

TEST_CASE("dual extreme points enumerate polyhedral duals exactly") {
  const auto l1 = dual_extreme_points(SpaceSpec::lp(2, 1.0), 4);
  REQUIRE(l1.points.size() == 4);
  CHECK(l1.exhaustive);
  for (const auto& g : l1.points) {
    CHECK(std::abs(std::abs(g[0].real()) - 1.0) <= 1e-15);
    CHECK(std::abs(std::abs(g[1].real()) - 1.0) <= 1e-15);
  }
  const auto linf = dual_extreme_points(SpaceSpec::lp(3, funtf::kInfP), 4);
  REQUIRE(linf.points.size() == 6);
  CHECK(linf.exhaustive);
  const auto poly = dual_extreme_points(rotated_square(), 4);
  CHECK(poly.points.size() == 4);
  CHECK(poly.exhaustive);
}

TEST_CASE("dual extreme points of smooth norms are unit samples") {
  const auto out = dual_extreme_points(SpaceSpec::lp(2, 2.0), 8);
  CHECK(!out.exhaustive);
  CHECK(out.points.size() >= 8);
  const SpaceSpec sp = SpaceSpec::lp(2, 2.0);
  for (const auto& g : out.points)
    CHECK(sp.dual_norm(g) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("every dual extreme point has dual norm one") {
  for (const auto& sp : sample_spaces()) {
    const auto out = dual_extreme_points(sp, 16);
    REQUIRE(!out.points.empty());
    for (const auto& g : out.points)
      CHECK(sp.dual_norm(g) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("normalizing_functional satisfies both defining equalities") {
  oracles::Rng rng(23);
  for (const auto& sp : sample_spaces()) {
    const bool cplx = !sp.is_real();
    for (int trial = 0; trial < 40; ++trial) {
      CVec x = random_vector(&rng, sp.dim(), cplx);
      if (sp.norm(x) < 1e-9) continue;
      const CVec f = sp.normalizing_functional(x);
      CHECK(sp.dual_norm(f) == doctest::Approx(1.0).epsilon(1e-12));
      Complex act(0, 0);
      for (int i = 0; i < sp.dim(); ++i) act += f[i] * x[i];
      CHECK(std::abs(act - Complex(sp.norm(x), 0)) <= 1e-12 * sp.norm(x));
    }
  }
}

TEST_CASE("normalizing_functional picks the documented vertices") {
  const SpaceSpec l12 = SpaceSpec::lp(2, 1.0);
  const CVec f = l12.normalizing_functional(rv({0.25, -0.75}));
  CHECK(f[0].real() == doctest::Approx(1.0));
  CHECK(f[1].real() == doctest::Approx(-1.0));
  const SpaceSpec l22 = SpaceSpec::lp(2, 2.0);
  const CVec g = l22.normalizing_functional(rv({1, 0}));
  CHECK(g[0].real() == doctest::Approx(1.0));
  CHECK(std::abs(g[1]) <= 1e-15);
  // Smooth case: f_k = sign(x_k) |x_k|^{p-1} for unit x.
  const SpaceSpec l32 = SpaceSpec::lp(2, 3.0);
  CVec x = rv({0.6, -0.8});
  x /= l32.norm(x);
  const CVec h = l32.normalizing_functional(x);
  for (int i = 0; i < 2; ++i) {
    const double xi = x[i].real();
    const double want = (xi < 0 ? -1.0 : 1.0) * std::pow(std::abs(xi), 2.0);
    CHECK(h[i].real() == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("duality inequality holds on random pairs") {
  oracles::Rng rng(31);
  for (const auto& sp : sample_spaces()) {
    const bool cplx = !sp.is_real();
    for (int trial = 0; trial < 1000; ++trial) {
      const CVec x = random_vector(&rng, sp.dim(), cplx);
      const CVec f = random_vector(&rng, sp.dim(), cplx);
      Complex act(0, 0);
      for (int i = 0; i < sp.dim(); ++i) act += f[i] * x[i];
      CHECK(std::abs(act) <= sp.dual_norm(f) * sp.norm(x) + 1e-10);
    }
  }
}

TEST_CASE("norming_point attains the dual norm") {
  oracles::Rng rng(37);
  for (const auto& sp : sample_spaces()) {
    for (int trial = 0; trial < 10; ++trial) {
      const CVec f = random_vector(&rng, sp.dim(), !sp.is_real());
      if (sp.dual_norm(f) < 1e-9) continue;
      const CVec x = funtf::norming_point(sp, f);
      CHECK(sp.norm(x) == doctest::Approx(1.0).epsilon(1e-9));
      Complex act(0, 0);
      for (int i = 0; i < sp.dim(); ++i) act += f[i] * x[i];
      CHECK(std::abs(act) == doctest::Approx(sp.dual_norm(f)).epsilon(1e-9));
    }
  }
}

TEST_CASE("invalid inputs are rejected") {
  const SpaceSpec sp = SpaceSpec::lp(2, 1.0);
  CHECK_THROWS_AS((void)sp.norm(CVec::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS((void)sp.normalizing_functional(CVec::Zero(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)dual_extreme_points(sp, 0), std::invalid_argument);
}
