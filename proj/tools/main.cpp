#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "funtf/construct.hpp"
#include "funtf/erasure.hpp"
#include "funtf/frame.hpp"
#include "funtf/json_io.hpp"
#include "funtf/pi2.hpp"
#include "funtf/space.hpp"
#include "verify_paper.hpp"

namespace {

using funtf::Json;

// Inline JSON or @path to a JSON file.
Json load_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::invalid_argument("cannot open file: " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return Json::parse(ss.str());
  }
  return Json::parse(arg);
}

std::vector<double> parse_csv(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_table(const std::vector<std::pair<std::string, std::string>>& rows) {
  size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& r : rows)
    std::cout << r.first << std::string(w - r.first.size() + 2, ' ')
              << r.second << "\n";
}

struct Options {
  std::string space_json;
  std::string range_json;
  std::string frame_json;
  std::string op = "identity";
  std::string diag;
  std::string matrix_json;
  std::string family;
  std::string lambdas;
  std::string check;
  double tol = 1e-6;
  double classify_tol = 1e-8;
  double opt_tol = 1e-9;
  double min_coord = 0.0;
  int dim = 0;
  int len = 0;
  int m = 1;
  int seq_len = 0;
  int restarts = 8;
  int max_iters = 0;
  std::uint64_t seed = 1;
  int threads = 1;  // parallelism knob; current solvers are sequential
  bool json = false;
  bool table = false;
  bool optimal = false;
};

funtf::SpaceSpec opt_space(const Options& o) {
  if (o.space_json.empty())
    throw std::invalid_argument("--space is required");
  return funtf::space_from_json(load_json_arg(o.space_json));
}

funtf::FrameSystem opt_frame(const Options& o) {
  if (o.frame_json.empty())
    throw std::invalid_argument("--frame is required");
  return funtf::frame_from_json(load_json_arg(o.frame_json));
}

funtf::CMat build_operator(const Options& o, const funtf::SpaceSpec& dom,
                           const funtf::SpaceSpec& ran) {
  if (o.op == "identity") {
    if (dom.dim() != ran.dim())
      throw std::invalid_argument("identity needs equal dimensions");
    return funtf::CMat::Identity(ran.dim(), dom.dim());
  }
  if (o.op == "diag") {
    if (o.diag.empty()) throw std::invalid_argument("--diag is required");
    const std::vector<double> d = parse_csv(o.diag);
    if (static_cast<int>(d.size()) != dom.dim() || dom.dim() != ran.dim())
      throw std::invalid_argument("--diag length must match the dimension");
    funtf::CMat t = funtf::CMat::Zero(ran.dim(), dom.dim());
    for (int i = 0; i < dom.dim(); ++i) t(i, i) = d[i];
    return t;
  }
  if (o.op == "matrix") {
    if (o.matrix_json.empty())
      throw std::invalid_argument("--matrix is required");
    const bool real = dom.is_real() && ran.is_real();
    funtf::CMat t =
        funtf::matrix_from_json(load_json_arg(o.matrix_json), real);
    if (t.cols() != dom.dim() || t.rows() != ran.dim())
      throw std::invalid_argument("--matrix shape must match the spaces");
    return t;
  }
  throw std::invalid_argument("--op must be identity, diag, or matrix");
}

void emit_json(const Json& j) { std::cout << funtf::dump_json_17(j, 2) << "\n"; }

int cmd_pi2(const Options& o) {
  const funtf::SpaceSpec dom = opt_space(o);
  const funtf::SpaceSpec ran =
      o.range_json.empty() ? dom
                           : funtf::space_from_json(load_json_arg(o.range_json));
  const funtf::CMat t = build_operator(o, dom, ran);
  funtf::Pi2Options popts;
  popts.tol = o.tol;
  popts.seq_len = o.seq_len;
  popts.restarts = o.restarts;
  popts.seed = o.seed;
  if (o.max_iters > 0) popts.max_iters = o.max_iters;
  const funtf::Pi2Result r = funtf::pi2(t, dom, ran, popts);
  if (o.json) {
    emit_json(funtf::pi2_result_to_json(r));
  } else {
    print_table({{"lower", fmt(r.lower)},
                 {"upper", fmt(r.upper)},
                 {"gap", fmt(r.upper - r.lower)},
                 {"certified", r.certified ? "yes" : "no"}});
  }
  return 0;
}

int cmd_potential(const Options& o) {
  const funtf::FrameSystem frame = opt_frame(o);
  const funtf::Pi2Result r = funtf::frame_potential(frame, o.tol);
  if (o.json) {
    emit_json(funtf::pi2_result_to_json(r));
  } else {
    const int n = frame.space().dim();
    const double bound = static_cast<double>(frame.length()) *
                         frame.length() / n;
    print_table({{"lower", fmt(r.lower)},
                 {"upper", fmt(r.upper)},
                 {"certified", r.certified ? "yes" : "no"},
                 {"N^2/n", fmt(bound)}});
  }
  return 0;
}

int cmd_classify(const Options& o) {
  const funtf::FrameSystem frame = opt_frame(o);
  const funtf::Classification c = funtf::classify(frame, o.classify_tol);
  if (o.json) {
    emit_json(funtf::classification_to_json(c));
  } else {
    print_table({{"kind", funtf::to_string(c.kind)},
                 {"lambda", fmt(c.lambda)},
                 {"tight_residual", fmt(c.tight_residual)},
                 {"schauder_residual", fmt(c.schauder_residual)},
                 {"sigma_min", fmt(c.sigma_min)},
                 {"normalized", c.normalized ? "yes" : "no"}});
  }
  return 0;
}

int cmd_construct(const Options& o) {
  funtf::FrameSystem frame = [&]() -> funtf::FrameSystem {
    if (o.family == "dft") {
      const funtf::SpaceSpec space = opt_space(o);
      funtf::RVec lam;
      if (o.lambdas.empty()) {
        lam = funtf::RVec::Ones(space.dim());
      } else {
        const std::vector<double> vals = parse_csv(o.lambdas);
        lam = Eigen::Map<const funtf::RVec>(vals.data(),
                                            static_cast<int>(vals.size()));
      }
      return funtf::dft_funtf({space, lam});
    }
    if (o.family == "of-length")
      return funtf::funtf_of_length(opt_space(o), o.len);
    if (o.family == "ell1-n-plus-1")
      return funtf::ell1_funtf_n_plus_1(o.dim);
    if (o.family == "ell1-special") return funtf::ell1_special(o.dim, o.len);
    if (o.family == "ell1-union") return funtf::ell1_funtf(o.dim, o.len);
    if (o.family == "auerbach") return funtf::auerbach_basis(opt_space(o));
    throw std::invalid_argument(
        "--family must be one of dft, of-length, ell1-n-plus-1, "
        "ell1-special, ell1-union, auerbach");
  }();
  emit_json(funtf::frame_to_json(frame));
  return 0;
}

int cmd_erasure(const Options& o) {
  const funtf::FrameSystem frame = opt_frame(o);
  if (o.optimal) {
    const funtf::ErasureOptimality r =
        funtf::is_erasure_optimal(frame, o.opt_tol);
    if (o.json) {
      Json viol = Json::array();
      for (int j : r.violations) viol.push_back(j);
      emit_json(Json{{"optimal", r.optimal},
                     {"ratio", r.ratio},
                     {"violations", viol},
                     {"rescaled", funtf::classification_to_json(r.rescaled)}});
    } else {
      std::string viol;
      for (int j : r.violations) viol += (viol.empty() ? "" : ",") + std::to_string(j);
      print_table({{"optimal", r.optimal ? "yes" : "no"},
                   {"n/N", fmt(r.ratio)},
                   {"violations", viol.empty() ? "-" : viol},
                   {"rescaled_kind", funtf::to_string(r.rescaled.kind)}});
    }
    return 0;
  }
  const funtf::ErasureReport r = funtf::erasure_error(frame, o.m, o.table);
  if (o.json) {
    emit_json(funtf::erasure_report_to_json(r));
  } else {
    std::string subset;
    for (int j : r.argmax_subset)
      subset += (subset.empty() ? "" : ",") + std::to_string(j);
    print_table({{"m", std::to_string(r.m)},
                 {"value", fmt(r.value)},
                 {"argmax_subset", subset},
                 {"heuristic", r.heuristic ? "yes" : "no"}});
    if (o.table)
      for (const auto& row : r.per_subset) {
        std::string ss;
        for (int j : row.first)
          ss += (ss.empty() ? "" : ",") + std::to_string(j);
        std::cout << "  {" << ss << "}  " << fmt(row.second) << "\n";
      }
  }
  return 0;
}

int cmd_search(const Options& o) {
  const funtf::SpaceSpec space = opt_space(o);
  funtf::SearchOptions sopts;
  sopts.seed = o.seed;
  sopts.min_coord = o.min_coord;
  if (o.max_iters > 0) sopts.max_iters = o.max_iters;
  const funtf::SearchResult r = funtf::search_funtf(space, o.len, sopts);
  if (o.json) {
    emit_json(funtf::search_result_to_json(r));
  } else {
    print_table({{"success", r.success ? "yes" : "no"},
                 {"residual", fmt(r.residual)},
                 {"iters", std::to_string(r.iters)}});
  }
  return 0;
}

int cmd_verify_paper(const Options& o) {
  const funtf::tools::VerifyReport report =
      funtf::tools::run_verify_paper(o.check);
  if (report.checks.empty())
    throw std::invalid_argument("no check matches id '" + o.check + "'");
  if (o.json) {
    Json arr = Json::array();
    for (const auto& c : report.checks)
      arr.push_back(Json{{"id", c.id},
                         {"pass", c.pass},
                         {"observed", c.observed},
                         {"expected", c.expected},
                         {"detail", c.detail}});
    emit_json(Json{{"all_pass", report.all_pass}, {"checks", arr}});
  } else {
    size_t w = 0;
    for (const auto& c : report.checks) w = std::max(w, c.id.size());
    for (const auto& c : report.checks)
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.id
                << std::string(w - c.id.size() + 2, ' ')
                << "observed=" << fmt(c.observed)
                << "  expected=" << fmt(c.expected) << "\n";
    std::cout << (report.all_pass ? "all checks passed" : "CHECKS FAILED")
              << " (" << report.checks.size() << " run)\n";
  }
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FUNTF toolkit: frame potentials, two-summing norms, FUNTF "
               "constructions, and erasure analysis on finite-dimensional "
               "Banach spaces"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "emit JSON instead of a table");
    sub->add_option("--threads", o.threads,
                    "worker count for restart/subset loops (currently "
                    "sequential; results are identical for any value)")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* pi2 = app.add_subcommand("pi2", "two-summing norm of an operator");
  pi2->add_option("--space", o.space_json, "domain SpaceSpec JSON or @file")
      ->required();
  pi2->add_option("--range", o.range_json, "range SpaceSpec JSON or @file");
  pi2->add_option("--op", o.op, "identity | diag | matrix");
  pi2->add_option("--diag", o.diag, "comma-separated diagonal entries");
  pi2->add_option("--matrix", o.matrix_json, "matrix rows as JSON or @file");
  pi2->add_option("--tol", o.tol, "target interval width");
  pi2->add_option("--seq-len", o.seq_len, "admissible sequence length");
  pi2->add_option("--restarts", o.restarts, "ascent restarts");
  pi2->add_option("--max-iters", o.max_iters, "outer iteration cap");
  pi2->add_option("--seed", o.seed, "random seed");
  add_common(pi2);

  CLI::App* pot = app.add_subcommand("potential", "frame potential pi2(S)^2");
  pot->add_option("--frame", o.frame_json, "FrameSystem JSON or @file")
      ->required();
  pot->add_option("--tol", o.tol, "target pi2 interval width");
  add_common(pot);

  CLI::App* cls = app.add_subcommand("classify", "frame classification");
  cls->add_option("--frame", o.frame_json, "FrameSystem JSON or @file")
      ->required();
  cls->add_option("--tol", o.classify_tol, "residual tolerance");
  add_common(cls);

  CLI::App* con = app.add_subcommand("construct", "build a FUNTF");
  con->add_option("--family", o.family,
                  "dft | of-length | ell1-n-plus-1 | ell1-special | "
                  "ell1-union | auerbach")
      ->required();
  con->add_option("--space", o.space_json, "SpaceSpec JSON or @file");
  con->add_option("--lambdas", o.lambdas, "target diagonal (dft family)");
  con->add_option("--dim", o.dim, "dimension (ell1 families)");
  con->add_option("--len", o.len, "frame length");
  add_common(con);

  CLI::App* era = app.add_subcommand("erasure", "erasure error analysis");
  era->add_option("--frame", o.frame_json, "FrameSystem JSON or @file")
      ->required();
  era->add_option("--m", o.m, "number of erased coefficients");
  era->add_flag("--per-subset", o.table, "list every subset value");
  era->add_flag("--optimal", o.optimal,
                "test the one-erasure optimality characterization instead");
  era->add_option("--tol", o.opt_tol, "tolerance for --optimal");
  add_common(era);

  CLI::App* sea = app.add_subcommand("search", "numerical FUNTF search");
  sea->add_option("--space", o.space_json, "SpaceSpec JSON or @file")
      ->required();
  sea->add_option("--len", o.len, "frame length")->required();
  sea->add_option("--seed", o.seed, "random seed");
  sea->add_option("--max-iters", o.max_iters, "iteration cap");
  sea->add_option("--min-coord", o.min_coord,
                  "keep every |x_j[i]| at or above this value");
  add_common(sea);

  CLI::App* ver =
      app.add_subcommand("verify-paper", "run the bundled reproduction suite");
  ver->add_option("--check", o.check, "run a single check id");
  add_common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(pi2)) return cmd_pi2(o);
    if (app.got_subcommand(pot)) return cmd_potential(o);
    if (app.got_subcommand(cls)) return cmd_classify(o);
    if (app.got_subcommand(con)) return cmd_construct(o);
    if (app.got_subcommand(era)) return cmd_erasure(o);
    if (app.got_subcommand(sea)) return cmd_search(o);
    if (app.got_subcommand(ver)) return cmd_verify_paper(o);
  } catch (const std::exception& e) {
    const char* type = "error";
    if (dynamic_cast<const Json::exception*>(&e)) {
      type = "json_error";
    } else if (dynamic_cast<const std::domain_error*>(&e)) {
      type = "domain_error";
    } else if (dynamic_cast<const std::invalid_argument*>(&e)) {
      type = "invalid_argument";
    } else if (dynamic_cast<const std::runtime_error*>(&e)) {
      type = "runtime_error";
    }
    Json err{{"error", Json{{"type", type}, {"message", std::string(e.what())}}}};
    std::cout << funtf::dump_json_17(err, 2) << "\n";
    return 1;
  }
  return 2;
}
