// JSON input/output: space and frame round trips, result schemas, the
// 17-significant-digit number formatting, and malformed-input rejection.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "funtf/construct.hpp"
#include "funtf/erasure.hpp"
#include "funtf/json_io.hpp"
#include "funtf/pi2.hpp"
#include "funtf/space.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using funtf::CMat;
using funtf::Complex;
using funtf::CVec;
using funtf::dft_funtf;
using funtf::dump_json_17;
using funtf::erasure_error;
using funtf::Field;
using funtf::frame_from_json;
using funtf::frame_to_json;
using funtf::FramePair;
using funtf::FrameSystem;
using funtf::Json;
using funtf::kInfP;
using funtf::matrix_from_json;
using funtf::matrix_to_json;
using funtf::pi2;
using funtf::pi2_result_to_json;
using funtf::RVec;
using funtf::space_from_json;
using funtf::space_to_json;
using funtf::SpaceSpec;
using funtf::vec_from_json;
using funtf::vec_to_json;

namespace {

FrameSystem random_irrational_frame(const SpaceSpec& sp, int big_n,
                                    oracles::Rng* rng) {
  std::vector<FramePair> pairs;
  for (int j = 0; j < big_n; ++j) {
    CVec x(sp.dim()), f(sp.dim());
    for (int i = 0; i < sp.dim(); ++i) {
      x[i] = Complex(rng->normal(), sp.is_real() ? 0.0 : rng->normal());
      f[i] = Complex(rng->normal(), sp.is_real() ? 0.0 : rng->normal());
    }
    x /= sp.norm(x);
    f /= sp.dual_norm(f);
    pairs.push_back({x, f});
  }
  return FrameSystem(sp, std::move(pairs));
}

}  // namespace

TEST_CASE("space specifications survive a JSON round trip") {
  const RVec w = (RVec(3) << 2.0, 1.0, 1.0 / 3.0).finished();
  const std::vector<SpaceSpec> samples = {
      SpaceSpec::lp(2, 1.0),
      SpaceSpec::lp(3, 1.5),
      SpaceSpec::lp(4, kInfP),
      SpaceSpec::lp(3, 2.0, Field::Complex),
      SpaceSpec::lp(2, kInfP, Field::Complex),
      SpaceSpec::weighted_lp(3, 3.0, w),
      SpaceSpec::weighted_lp(2, kInfP, (RVec(2) << 0.7, 1.9).finished()),
      SpaceSpec::polytope(2, {(RVec(2) << std::sqrt(0.5), std::sqrt(0.5))
                                  .finished(),
                              (RVec(2) << std::sqrt(0.5), -std::sqrt(0.5))
                                  .finished(),
                              (RVec(2) << -std::sqrt(0.5), -std::sqrt(0.5))
                                  .finished(),
                              (RVec(2) << -std::sqrt(0.5), std::sqrt(0.5))
                                  .finished()})};
  for (const auto& sp : samples) {
    const Json j = space_to_json(sp);
    CHECK(space_from_json(j) == sp);
    // Through the serialized string as well.
    CHECK(space_from_json(Json::parse(dump_json_17(j))) == sp);
  }
  // Infinite p is spelled out, not stored as a non-JSON float.
  CHECK(space_to_json(SpaceSpec::lp(2, kInfP))["norm"]["p"] == "inf");
  CHECK(space_to_json(SpaceSpec::lp(2, 2.5))["norm"]["p"] == 2.5);
}

TEST_CASE("frames round trip bit-identically") {
  oracles::Rng rng(314);
  const std::vector<FrameSystem> frames = {
      random_irrational_frame(SpaceSpec::lp(3, 1.5), 4, &rng),
      random_irrational_frame(SpaceSpec::lp(2, 2.0, Field::Complex), 5, &rng),
      dft_funtf({SpaceSpec::lp(3, 3.0, Field::Complex), RVec::Ones(3)}),
      testfx::x_frame()};
  for (const auto& fr : frames) {
    const std::string text = dump_json_17(frame_to_json(fr), 2);
    const FrameSystem back = frame_from_json(Json::parse(text));
    CHECK(back.space() == fr.space());
    REQUIRE(back.length() == fr.length());
    for (int j = 0; j < fr.length(); ++j)
      for (int i = 0; i < fr.space().dim(); ++i) {
        // Bit-identical, not approximately equal.
        CHECK(back.pairs()[j].x[i].real() == fr.pairs()[j].x[i].real());
        CHECK(back.pairs()[j].x[i].imag() == fr.pairs()[j].x[i].imag());
        CHECK(back.pairs()[j].f[i].real() == fr.pairs()[j].f[i].real());
        CHECK(back.pairs()[j].f[i].imag() == fr.pairs()[j].f[i].imag());
      }
  }
}

TEST_CASE("matrices round trip by rows") {
  oracles::Rng rng(21);
  CMat m(2, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  const CMat back =
      matrix_from_json(Json::parse(dump_json_17(matrix_to_json(m, false))),
                       false);
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) CHECK(back(i, j) == m(i, j));
}

TEST_CASE("summability result serialization carries the certificate") {
  const SpaceSpec sp = SpaceSpec::lp(2, 1.0);
  const auto res = pi2(CMat::Identity(2, 2), sp, sp, 1e-4);
  REQUIRE(res.certified);
  const Json j = pi2_result_to_json(res);
  CHECK(j.at("lower").get<double>() == res.lower);
  CHECK(j.at("upper").get<double>() == res.upper);
  CHECK(j.at("certified").get<bool>());
  CHECK(j.at("witness").is_array());
  CHECK(!j.at("witness").empty());
  REQUIRE(j.contains("pietsch_weights"));
  double total = 0.0;
  for (const auto& entry : j.at("pietsch_weights")) {
    CHECK(entry.at("w").get<double>() > 0.0);  // zero weights are dropped
    CHECK(entry.at("vertex").is_array());
    total += entry.at("w").get<double>();
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("erasure report serialization exposes the schema fields") {
  const FrameSystem fr = testfx::x_frame();
  const auto rep = erasure_error(fr, 1);
  const Json j = funtf::erasure_report_to_json(rep);
  CHECK(j.at("m").get<int>() == 1);
  CHECK(j.at("value").get<double>() == rep.value);
  CHECK(j.at("argmax_subset").size() == 1);
  CHECK(j.at("heuristic").is_boolean());
}

TEST_CASE("numbers print with 17 significant digits") {
  CHECK(dump_json_17(Json(0.1 + 0.2)) == "0.30000000000000004");
  CHECK(dump_json_17(Json(1.0 / 3.0)) == "0.33333333333333331");
  CHECK(dump_json_17(Json(5)) == "5");        // integers stay integers
  CHECK(dump_json_17(Json(true)) == "true");
  CHECK(dump_json_17(Json::array({1.5, 2.0})) == "[1.5,2]");

  oracles::Rng rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const double v = rng.normal() * std::pow(10.0, (rng.uniform() - 0.5) * 40);
    const Json parsed = Json::parse(dump_json_17(Json(v)));
    CHECK(parsed.get<double>() == v);
  }
}

TEST_CASE("malformed JSON inputs are rejected") {
  CHECK_THROWS_AS(space_from_json(Json{{"dim", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(space_from_json(Json{{"dim", 2},
                                       {"field", "quaternion"},
                                       {"norm", {{"kind", "lp"}, {"p", 2}}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      space_from_json(Json{{"dim", 2},
                           {"field", "real"},
                           {"norm", {{"kind", "lp"}, {"p", "infinite"}}}}),
      std::invalid_argument);
  CHECK_THROWS_AS(space_from_json(Json{{"dim", 2},
                                       {"field", "real"},
                                       {"norm", {{"kind", "simplex"}}}}),
                  std::invalid_argument);

  // Scalars must match the declared field.
  CHECK_THROWS_AS(vec_from_json(Json::array({1.0, 2.0}), false),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      vec_from_json(Json::array({Json::array({1.0, 0.0}), 2.0}), false),
      std::invalid_argument);
  CHECK_THROWS_AS(vec_from_json(Json("hi"), true), std::invalid_argument);

  CHECK_THROWS_AS(matrix_from_json(Json::array(), true),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      matrix_from_json(Json::parse("[[1.0,2.0],[3.0]]"), true),
      std::invalid_argument);

  CHECK_THROWS_AS(frame_from_json(Json{{"pairs", Json::array()}}),
                  std::invalid_argument);
}
