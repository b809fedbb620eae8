#include "frames/commands.hpp"

#include <cmath>
#include <ostream>

#include "frames/golden.hpp"
#include "frames/report.hpp"
#include "frames/sum.hpp"

namespace frames {

std::string CommandRequest::get(const std::string& key) const {
  auto it = options.find(key);
  if (it == options.end()) throw SchemaError("command '" + command + "' needs --" + key);
  return it->second;
}

std::string CommandRequest::get_or(const std::string& key, const std::string& fallback) const {
  auto it = options.find(key);
  return it == options.end() ? fallback : it->second;
}

double CommandRequest::get_double(const std::string& key) const {
  const std::string raw = get(key);
  try {
    size_t used = 0;
    const double value = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw SchemaError("--" + key + " must be a number, got '" + raw + "'");
  }
}

int CommandRequest::get_int(const std::string& key) const {
  const std::string raw = get(key);
  try {
    size_t used = 0;
    const int value = std::stoi(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw SchemaError("--" + key + " must be an integer, got '" + raw + "'");
  }
}

namespace {

OperatorSide side_from(const CommandRequest& request) {
  const std::string convention = request.get_or("convention", "right");
  if (convention == "right") return OperatorSide::Right;
  if (convention == "left") return OperatorSide::Left;
  throw SchemaError("--convention must be 'left' or 'right'");
}

std::vector<double> make_grid(const ProblemFile& problem, int points) {
  if (points < 1) throw SchemaError("--grid must be >= 1");
  if (const auto* interval = std::get_if<IntervalMeasure>(&problem.measure)) {
    // Interior Gauss nodes, so tabulated maps stay evaluable when the grid
    // coincides with the rule.
    const QuadratureRule grid_rule =
        build_rule(IntervalMeasure{interval->a, interval->b, {1.0}}, 2 * points - 1);
    return grid_rule.nodes();
  }
  return std::get<DiscreteMeasure>(problem.measure).points;
}

int emit(std::ostream& out, const Json& report, bool pass) {
  out << report.dump(2) << "\n";
  return pass ? 0 : 1;
}

int cmd_bounds(const CommandRequest& request, const ProblemFile& problem, std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const auto [lower, upper] = optimal_frame_bounds(f, problem.rule);
  Json report = Json::object();
  report["command"] = "bounds";
  report["frame"] = request.get("frame");
  report["optimal_lower"] = lower;
  report["optimal_upper"] = upper;
  const bool is_frame = lower > request.tol;
  report["verdict"] = is_frame ? "frame" : "bessel_only";
  return emit(out, report, is_frame);
}

int cmd_verify_bounds(const CommandRequest& request, const ProblemFile& problem,
                      std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const FrameCertificate cert = verify_claimed_bounds(
      f, request.get_double("lower"), request.get_double("upper"), problem.rule);
  Json report = Json::object();
  report["command"] = "verify-bounds";
  report["frame"] = request.get("frame");
  report["certificate"] = to_json(cert);
  return emit(out, report, cert.verdict == FrameVerdict::Frame);
}

int cmd_canonical_dual(const CommandRequest& request, const ProblemFile& problem,
                       std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const FrameMap dual = canonical_dual(f, problem.rule);
  const DualCertificate cert = is_dual_pair(f, dual, problem.rule, request.tol);
  Json report = Json::object();
  report["command"] = "canonical-dual";
  report["frame"] = request.get("frame");
  report["dual"] = frame_map_to_json(dual);
  report["certificate"] = to_json(cert);
  return emit(out, report, cert.is_dual);
}

int cmd_dual_check(const CommandRequest& request, const ProblemFile& problem,
                   std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const FrameMap& g = problem.map(request.get("dual"));
  const DualCertificate cert = is_dual_pair(f, g, problem.rule, request.tol);
  Json report = Json::object();
  report["command"] = "dual-check";
  report["frame"] = request.get("frame");
  report["dual"] = request.get("dual");
  report["certificate"] = to_json(cert);
  return emit(out, report, cert.is_dual);
}

int cmd_dual_seq(const CommandRequest& request, const ProblemFile& problem,
                 std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const FrameMap& g = problem.map(request.get("dual"));
  const int index = request.get_int("index");
  if (index < 1) throw SchemaError("--index must be >= 1");
  const OperatorSide side = side_from(request);
  const std::string mode = request.get_or("mode", "step");
  if (mode != "step" && mode != "closed")
    throw SchemaError("--mode must be 'step' or 'closed'");
  const bool closed = mode == "closed";

  FrameMap result = g;
  if (closed) {
    result = dual_sequence_closed(f, g, index, problem.rule, side, request.tol);
  } else {
    for (int i = 0; i < index; ++i)
      result = dual_sequence_step(f, result, problem.rule, side, request.tol);
  }
  const DualCertificate cert = is_dual_pair(f, result, problem.rule, request.tol);
  Json report = Json::object();
  report["command"] = "dual-seq";
  report["mode"] = closed ? "closed" : "step";
  report["index"] = index;
  report["convention"] = request.get_or("convention", "right");
  report["map"] = frame_map_to_json(result);
  report["certificate"] = to_json(cert);
  return emit(out, report, cert.is_dual);
}

int cmd_dual_decompose(const CommandRequest& request, const ProblemFile& problem,
                       std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const FrameMap& g = problem.map(request.get("dual"));
  const DualDecomposition decomposition = dual_decompose(f, g, problem.rule, request.tol);
  Json report = Json::object();
  report["command"] = "dual-decompose";
  report["decomposition"] = to_json(decomposition);
  return emit(out, report, decomposition.is_dual);
}

int cmd_null_family(const CommandRequest& request, const ProblemFile& problem,
                    std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const int degree = request.get_int("degree");
  if (degree < 0) throw SchemaError("--degree must be >= 0");

  // Moment integrands reach degree deg(F) + degree; rebuild a finer rule when
  // the problem rule cannot integrate them exactly.
  QuadratureRule rule = problem.rule;
  if (!rule.is_discrete() && f.is_polynomial()) {
    const int needed = f.poly_degree() + degree;
    if (rule.exactness_degree() < needed) rule = build_rule(problem.measure, needed);
  }
  const std::vector<FrameMap> basis = null_bessel_family(f, degree, rule);
  const FrameMap canonical = canonical_dual(f, rule);

  double worst_residual = 0.0;
  Json dumps = Json::array();
  for (const FrameMap& l : basis) {
    worst_residual = std::max(
        worst_residual, is_dual_pair(f, canonical.plus(l), rule, request.tol).residual_norm);
    dumps.push_back(frame_map_to_json(l));
  }
  Json report = Json::object();
  report["command"] = "null-family";
  report["degree"] = degree;
  report["dimension"] = static_cast<int>(basis.size());
  report["max_dual_residual"] = worst_residual;
  report["basis"] = std::move(dumps);
  return emit(out, report, worst_residual <= request.tol);
}

int cmd_k_op(const CommandRequest& request, const ProblemFile& problem, std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const FrameMap& g = problem.map(request.get("dual"));
  int samples = 100;
  if (request.has("samples")) samples = request.get_int("samples");
  const auto [k_op, checks] = k_operator_from_dual(f, g, problem.rule, request.tol, samples);
  Json report = Json::object();
  report["command"] = "k-op";
  report["difference"] = frame_map_to_json(k_op.difference());
  report["checks"] = to_json(checks);
  return emit(out, report, checks.nullity_ok && checks.bound_ok);
}

int cmd_kernel_symmetry(const CommandRequest& request, const ProblemFile& problem,
                        std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const FrameMap& g = problem.map(request.get("dual"));
  std::vector<double> grid;
  if (request.has("grid")) {
    grid = make_grid(problem, request.get_int("grid"));
  } else {
    grid = problem.rule.nodes();
  }
  const KernelSymmetryReport result = kernel_symmetry_check(f, g, grid);
  Json report = Json::object();
  report["command"] = "kernel-symmetry";
  report["grid_size"] = static_cast<int>(grid.size());
  report["report"] = to_json(result);
  report["verdict"] = result.max_deviation <= request.tol ? "symmetric" : "asymmetric";
  return emit(out, report, result.max_deviation <= request.tol);
}

int cmd_minimality(const CommandRequest& request, const ProblemFile& problem,
                   std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const FrameMap& d = problem.map(request.get("dual"));
  const MinimalityReport result = minimality_check(f, d, problem.rule, request.tol);
  Json report = Json::object();
  report["command"] = "minimality";
  report["report"] = to_json(result);
  return emit(out, report, result.holds);
}

int cmd_sum_frame(const CommandRequest& request, const ProblemFile& problem,
                  std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const FrameMap& g = problem.map(request.get("dual"));
  const ModuleOperator& x1 = problem.op(request.get("op1"));
  const ModuleOperator& x2 = problem.op(request.get("op2"));
  const auto [h, cert] = operator_sum_frame(f, g, x1, x2, problem.rule, request.tol);
  Json report = Json::object();
  report["command"] = "sum-frame";
  report["map"] = frame_map_to_json(h);
  report["certificate"] = to_json(cert);
  return emit(out, report, cert.lower_ok && cert.upper_ok);
}

int cmd_sum_dual(const CommandRequest& request, const ProblemFile& problem,
                 std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const FrameMap& g = problem.map(request.get("dual"));
  const FrameMap& k = problem.map(request.get("dual2"));
  Json report = Json::object();
  report["command"] = "sum-dual";

  if (request.has("op1") || request.has("op2")) {
    const OperatorSumDualResult result =
        operator_sum_dual(f, g, k, problem.op(request.get("op1")),
                          problem.op(request.get("op2")), problem.rule, request.tol);
    report["mode"] = "operator";
    report["iff_residual"] = result.iff_residual;
    report["map"] = frame_map_to_json(result.map);
    report["certificate"] = to_json(result.certificate);
    return emit(out, report, result.certificate.is_dual);
  }
  if (request.has("a1") || request.has("a2")) {
    const FrameMap result =
        central_sum_dual(f, g, k, problem.element(request.get("a1")),
                         problem.element(request.get("a2")), problem.rule, request.tol);
    const DualCertificate cert = is_dual_pair(f, result, problem.rule, request.tol);
    report["mode"] = "central";
    report["map"] = frame_map_to_json(result);
    report["certificate"] = to_json(cert);
    return emit(out, report, cert.is_dual);
  }
  Complex alpha(1.0, 0.0), beta(0.0, 0.0);
  if (request.has("alpha")) {
    alpha = problem.scalars.count(request.get("alpha"))
                ? problem.scalar(request.get("alpha"))
                : Complex(request.get_double("alpha"), 0.0);
  }
  if (request.has("beta")) {
    beta = problem.scalars.count(request.get("beta"))
               ? problem.scalar(request.get("beta"))
               : Complex(request.get_double("beta"), 0.0);
  }
  const FrameMap result = affine_sum_dual(f, g, k, alpha, beta, problem.rule, request.tol);
  const DualCertificate cert = is_dual_pair(f, result, problem.rule, request.tol);
  report["mode"] = "affine";
  report["map"] = frame_map_to_json(result);
  report["certificate"] = to_json(cert);
  return emit(out, report, cert.is_dual);
}

int cmd_scaled(const CommandRequest& request, const ProblemFile& problem, std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const AlgebraElement& a = problem.element(request.get("scale"));
  const ScaledMapReport result = scaled_map(a, f, problem.rule);
  Json report = Json::object();
  report["command"] = "scaled";
  report["map"] = frame_map_to_json(result.map);
  report["report"] = to_json(result);
  return emit(out, report, result.bessel_ok);
}

int cmd_identity_check(const CommandRequest& request, const ProblemFile& problem,
                       std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const FrameMap& g = problem.map(request.get("dual"));
  const ModuleOperator& x = problem.op(request.get("op1"));
  const IdentityCheckReport result = identity_check(f, g, x, problem.rule, request.tol);
  Json report = Json::object();
  report["command"] = "identity-check";
  report["report"] = to_json(result);
  return emit(out, report, result.is_dual);
}

int cmd_riesz(const CommandRequest& request, const ProblemFile& problem, std::ostream& out) {
  const FrameMap& f = problem.map(request.get("frame"));
  const RieszDiagnostic diag = riesz_type_diagnostic(f, problem.rule);
  Json report = Json::object();
  report["command"] = "riesz-diagnostic";
  report["diagnostic"] = to_json(diag);
  return emit(out, report, diag.verdict != RieszVerdict::Inconclusive);
}

int cmd_example25(const CommandRequest& request, const ProblemFile& problem,
                  std::ostream& out) {
  const double tol = request.tol_explicit ? request.tol : 1e-12;
  const GoldenReport report = run_example25_golden(problem, tol);
  Json doc = Json::object();
  doc["command"] = "example25";
  doc["report"] = to_json(report);
  return emit(out, doc, report.all_pass);
}

}  // namespace

int execute(const CommandRequest& request, const ProblemFile& problem, std::ostream& out) {
  using Handler = int (*)(const CommandRequest&, const ProblemFile&, std::ostream&);
  static const std::map<std::string, Handler> handlers = {
      {"bounds", cmd_bounds},
      {"verify-bounds", cmd_verify_bounds},
      {"canonical-dual", cmd_canonical_dual},
      {"dual-check", cmd_dual_check},
      {"dual-seq", cmd_dual_seq},
      {"dual-decompose", cmd_dual_decompose},
      {"null-family", cmd_null_family},
      {"k-op", cmd_k_op},
      {"kernel-symmetry", cmd_kernel_symmetry},
      {"minimality", cmd_minimality},
      {"sum-frame", cmd_sum_frame},
      {"sum-dual", cmd_sum_dual},
      {"scaled", cmd_scaled},
      {"identity-check", cmd_identity_check},
      {"riesz-diagnostic", cmd_riesz},
      {"example25", cmd_example25},
  };
  auto it = handlers.find(request.command);
  if (it == handlers.end()) throw UnknownCommand("unknown command '" + request.command + "'");
  return it->second(request, problem, out);
}

namespace {

// Mathematical failures are certified outcomes: they produce a report and
// exit code 1 rather than an input error.
int report_failure(const CommandRequest& request, const char* kind, const char* what,
                   std::ostream& out) {
  Json report = Json::object();
  report["command"] = request.command;
  report["error"] = kind;
  report["message"] = what;
  out << report.dump(2) << "\n";
  return 1;
}

}  // namespace

int run_request(const CommandRequest& request, const std::string& file, std::ostream& out,
                std::ostream& err) {
  try {
    const ProblemFile problem = parse_problem_file(file);
    try {
      return execute(request, problem, out);
    } catch (const NotAFrame& e) {
      return report_failure(request, "NotAFrame", e.what(), out);
    } catch (const NotADual& e) {
      return report_failure(request, "NotADual", e.what(), out);
    } catch (const HypothesisViolated& e) {
      return report_failure(request, "HypothesisViolated", e.what(), out);
    } catch (const NotCentral& e) {
      return report_failure(request, "NotCentral", e.what(), out);
    } catch (const AffinityViolated& e) {
      return report_failure(request, "AffinityViolated", e.what(), out);
    } catch (const NullityViolated& e) {
      return report_failure(request, "NullityViolated", e.what(), out);
    } catch (const SingularElement& e) {
      return report_failure(request, "SingularElement", e.what(), out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace frames
