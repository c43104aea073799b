#include "funtf/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace funtf {
namespace {

Json scalar_to_json(const Complex& z, bool real_field) {
  if (real_field) return z.real();
  return Json::array({z.real(), z.imag()});
}

Complex scalar_from_json(const Json& j, bool real_field) {
  if (real_field) {
    if (!j.is_number()) throw std::invalid_argument("expected a real number");
    return Complex(j.get<double>(), 0.0);
  }
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("expected a complex [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json real_vec_to_json(const RVec& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

RVec real_vec_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array");
  RVec v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) {
    if (!j[i].is_number()) throw std::invalid_argument("expected a number");
    v[i] = j[i].get<double>();
  }
  return v;
}

}  // namespace

Json vec_to_json(const CVec& v, bool real_field) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i)
    arr.push_back(scalar_to_json(v[i], real_field));
  return arr;
}

CVec vec_from_json(const Json& j, bool real_field) {
  if (!j.is_array()) throw std::invalid_argument("expected a vector array");
  CVec v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = scalar_from_json(j[i], real_field);
  return v;
}

Json space_to_json(const SpaceSpec& space) {
  Json norm;
  switch (space.kind()) {
    case NormKind::Lp:
      norm["kind"] = "lp";
      if (space.p() == kInfP)
        norm["p"] = "inf";
      else
        norm["p"] = space.p();
      break;
    case NormKind::WeightedLp:
      norm["kind"] = "weighted_lp";
      if (space.p() == kInfP)
        norm["p"] = "inf";
      else
        norm["p"] = space.p();
      norm["weights"] = real_vec_to_json(space.weights());
      break;
    case NormKind::Polytope: {
      norm["kind"] = "polytope";
      Json verts = Json::array();
      for (const auto& v : space.dual_vertices())
        verts.push_back(real_vec_to_json(v));
      norm["dual_vertices"] = verts;
      break;
    }
  }
  return Json{{"dim", space.dim()},
              {"field", space.is_real() ? "real" : "complex"},
              {"norm", norm}};
}

SpaceSpec space_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("field") ||
      !j.contains("norm"))
    throw std::invalid_argument("space: need dim, field, norm");
  const int dim = j.at("dim").get<int>();
  const std::string field = j.at("field").get<std::string>();
  if (field != "real" && field != "complex")
    throw std::invalid_argument("space: field must be real or complex");
  const Field f = field == "real" ? Field::Real : Field::Complex;
  const Json& norm = j.at("norm");
  const std::string kind = norm.at("kind").get<std::string>();
  auto read_p = [&norm]() -> double {
    const Json& p = norm.at("p");
    if (p.is_string()) {
      if (p.get<std::string>() == "inf") return kInfP;
      throw std::invalid_argument("space: p must be a number or \"inf\"");
    }
    return p.get<double>();
  };
  if (kind == "lp") return SpaceSpec::lp(dim, read_p(), f);
  if (kind == "weighted_lp")
    return SpaceSpec::weighted_lp(dim, read_p(),
                                  real_vec_from_json(norm.at("weights")), f);
  if (kind == "polytope") {
    std::vector<RVec> verts;
    for (const auto& v : norm.at("dual_vertices"))
      verts.push_back(real_vec_from_json(v));
    return SpaceSpec::polytope(dim, verts);
  }
  throw std::invalid_argument("space: unknown norm kind");
}

Json frame_to_json(const FrameSystem& frame) {
  const bool real = frame.space().is_real();
  Json pairs = Json::array();
  for (const auto& p : frame.pairs())
    pairs.push_back(
        Json{{"x", vec_to_json(p.x, real)}, {"f", vec_to_json(p.f, real)}});
  return Json{{"space", space_to_json(frame.space())}, {"pairs", pairs}};
}

FrameSystem frame_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("space") || !j.contains("pairs"))
    throw std::invalid_argument("frame: need space and pairs");
  SpaceSpec space = space_from_json(j.at("space"));
  const bool real = space.is_real();
  std::vector<FramePair> pairs;
  for (const auto& pj : j.at("pairs")) {
    FramePair p;
    p.x = vec_from_json(pj.at("x"), real);
    p.f = vec_from_json(pj.at("f"), real);
    pairs.push_back(std::move(p));
  }
  return FrameSystem(std::move(space), std::move(pairs));
}

Json matrix_to_json(const CMat& m, bool real_field) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    rows.push_back(vec_to_json(m.row(i).transpose(), real_field));
  return rows;
}

CMat matrix_from_json(const Json& j, bool real_field) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix: expected a nonempty list of rows");
  const int rows = static_cast<int>(j.size());
  CVec first = vec_from_json(j[0], real_field);
  CMat m(rows, first.size());
  m.row(0) = first.transpose();
  for (int i = 1; i < rows; ++i) {
    CVec r = vec_from_json(j[i], real_field);
    if (r.size() != m.cols())
      throw std::invalid_argument("matrix: ragged rows");
    m.row(i) = r.transpose();
  }
  return m;
}

Json pi2_result_to_json(const Pi2Result& result) {
  const bool real = result.witness.space.is_real();
  Json witness = Json::array();
  for (const auto& v : result.witness.vectors)
    witness.push_back(vec_to_json(v, real));
  Json weights = Json::array();
  if (result.has_certificate) {
    for (int i = 0; i < result.certificate.weights.size(); ++i) {
      if (result.certificate.weights[i] <= 0.0) continue;
      weights.push_back(
          Json{{"vertex", vec_to_json(result.certificate.vertices[i], real)},
               {"w", result.certificate.weights[i]}});
    }
  }
  return Json{{"lower", result.lower},
              {"upper", result.upper},
              {"certified", result.certified},
              {"witness", witness},
              {"pietsch_weights", weights}};
}

Json erasure_report_to_json(const ErasureReport& report) {
  return Json{{"m", report.m},
              {"value", report.value},
              {"argmax_subset", report.argmax_subset},
              {"heuristic", report.heuristic}};
}

Json classification_to_json(const Classification& cls) {
  return Json{{"kind", to_string(cls.kind)},
              {"lambda", cls.lambda},
              {"tight_residual", cls.tight_residual},
              {"schauder_residual", cls.schauder_residual},
              {"sigma_min", cls.sigma_min},
              {"normalized", cls.normalized}};
}

Json search_result_to_json(const SearchResult& result) {
  return Json{{"success", result.success},
              {"residual", result.residual},
              {"iters", result.iters},
              {"frame", frame_to_json(result.frame)}};
}

Json smoothness_report_to_json(const SmoothnessReport& report) {
  return Json{{"trials", report.trials},
              {"min_gap", report.min_gap},
              {"all_positive", report.all_positive},
              {"gaps", report.gaps}};
}

namespace {

void append_number(std::string* out, double v) {
  char buf[64];
  if (std::isfinite(v)) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
  } else {
    std::snprintf(buf, sizeof(buf), "null");  // not produced by this library
  }
  *out += buf;
}

void dump_rec(const Json& j, std::string* out, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent >= 0) {
      *out += '\n';
      out->append(static_cast<size_t>(indent) * d, ' ');
    }
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        *out += "{}";
        return;
      }
      *out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) *out += ',';
        first = false;
        pad(depth + 1);
        *out += Json(it.key()).dump();
        *out += indent >= 0 ? ": " : ":";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      pad(depth);
      *out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        *out += "[]";
        return;
      }
      *out += '[';
      bool first = true;
      for (const auto& el : j) {
        if (!first) *out += ',';
        first = false;
        pad(depth + 1);
        dump_rec(el, out, indent, depth + 1);
      }
      pad(depth);
      *out += ']';
      return;
    }
    case Json::value_t::number_float:
      append_number(out, j.get<double>());
      return;
    default:
      *out += j.dump();  // ints, strings, bools, null
      return;
  }
}

}  // namespace

std::string dump_json_17(const Json& j, int indent) {
  std::string out;
  dump_rec(j, &out, indent, 0);
  return out;
}

}  // namespace funtf
