#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "frames/commands.hpp"
#include "frames/golden.hpp"
#include "frames/report.hpp"

using namespace frames;

namespace {

const std::string kExampleFile = std::string(FRAMES_DATA_DIR) + "/example25.json";

CommandRequest make_request(const std::string& command,
                            std::map<std::string, std::string> options, double tol = 1e-9) {
  CommandRequest request;
  request.command = command;
  request.options = std::move(options);
  request.tol = tol;
  return request;
}

struct ProcessResult {
  int exit_code = -1;
  std::string stdout_text;
};

// Run the installed binary; stderr is routed away so reports stay clean.
ProcessResult run_binary(const std::string& args) {
  const char* bin = std::getenv("FRAMES_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "FRAMES_BIN must point at the frames binary");
  const std::string command = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  ProcessResult result;
  char buffer[4096];
  while (size_t got = fread(buffer, 1, sizeof buffer, pipe)) result.stdout_text.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp_json(const std::string& name, const std::string& body) {
  const std::string path = std::string("/tmp/frames_test_") + name + ".json";
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("problem file parses and reproduces the frame operator") {
  const ProblemFile problem = parse_problem_file(kExampleFile);
  CHECK(problem.rank == 1);
  CHECK(problem.rule.size() == 3);  // degree 2*1+2 = 4 over [0,1]
  const ModuleOperator q = frame_operator(problem.map("F"), problem.rule);
  CHECK((q.flat() - fixtures::alg2(problem.algebra, 5.0 / 3, 5.0 / 3, 5.0 / 3, 10.0 / 3).dense())
            .cwiseAbs()
            .maxCoeff() <= 1e-13);
  CHECK_THROWS_AS(problem.map("H"), NamedObjectMissing);
  CHECK_THROWS_AS(problem.op("unknown"), NamedObjectMissing);
}

TEST_CASE("parser rejects malformed inputs") {
  CHECK_THROWS_AS(parse_problem_file("/nonexistent/file.json"), ParseError);

  const std::string truncated = write_temp_json("truncated", "{ \"algebra\": ");
  CHECK_THROWS_AS(parse_problem_file(truncated), ParseError);

  const std::string no_measure =
      write_temp_json("no_measure", R"({"algebra": {"blocks": [2]}, "rank": 1})");
  CHECK_THROWS_AS(parse_problem_file(no_measure), SchemaError);

  // Dense matrix carrying mass outside the block pattern.
  const std::string off_block = write_temp_json("off_block", R"({
    "algebra": {"blocks": [1, 1]},
    "rank": 1,
    "measure": {"type": "discrete", "points": [1.0], "masses": [1.0]},
    "elements": {"bad": {"dense": [[1, 0.5], [0, 1]]}}
  })");
  CHECK_THROWS_AS(parse_problem_file(off_block), BlockPatternViolation);

  // Empty maps section is valid; lookups fail downstream.
  const std::string empty_maps = write_temp_json("empty_maps", R"({
    "algebra": {"blocks": [2]},
    "rank": 1,
    "measure": {"type": "interval", "a": 0, "b": 1, "weight": [1]},
    "maps": {}
  })");
  const ProblemFile problem = parse_problem_file(empty_maps);
  CHECK(problem.maps.empty());
  CHECK_THROWS_AS(problem.map("F"), NamedObjectMissing);

  const std::string tabulated_no_degree = write_temp_json("tab_no_degree", R"({
    "algebra": {"blocks": [1]},
    "rank": 1,
    "measure": {"type": "interval", "a": 0, "b": 1, "weight": [1]},
    "maps": {"T": {"type": "tabulated", "samples": []}}
  })");
  CHECK_THROWS_AS(parse_problem_file(tabulated_no_degree), SchemaError);
}

TEST_CASE("execute dispatches and honors the exit-code contract") {
  const ProblemFile problem = parse_problem_file(kExampleFile);

  std::ostringstream out;
  CHECK(execute(make_request("dual-check", {{"frame", "F"}, {"dual", "G"}}), problem, out) == 0);
  Json report = Json::parse(out.str());
  CHECK(report["certificate"]["residual_norm"].get<double>() <= 1e-12);
  CHECK(report["certificate"]["verdict"] == "dual");

  std::ostringstream bad;
  CHECK(execute(make_request("dual-check", {{"frame", "F"}, {"dual", "G_scaled2"}}), problem,
                bad) == 1);
  report = Json::parse(bad.str());
  CHECK(report["certificate"]["residual_norm"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));

  std::ostringstream bounds;
  CHECK(execute(make_request("verify-bounds",
                             {{"frame", "F"}, {"lower", "0.5"}, {"upper", "4.5"}}),
                problem, bounds) == 0);
  report = Json::parse(bounds.str());
  CHECK(report["certificate"]["lower_margin"].get<double>() ==
        doctest::Approx(0.1366100187501753).epsilon(1e-9));

  std::ostringstream sink;
  CHECK_THROWS_AS(execute(make_request("no-such-command", {}), problem, sink), UnknownCommand);
  CHECK_THROWS_AS(execute(make_request("bounds", {{"frame", "missing"}}), problem, sink),
                  NamedObjectMissing);
  CHECK_THROWS_AS(execute(make_request("bounds", {}), problem, sink), SchemaError);
}

TEST_CASE("run_request maps error classes onto exit codes") {
  std::ostringstream out, err;
  CHECK(run_request(make_request("bounds", {{"frame", "F"}}), "/nonexistent.json", out, err) ==
        2);
  CHECK(err.str().find("error:") != std::string::npos);

  std::ostringstream out2, err2;
  CHECK(run_request(make_request("no-such-command", {}), kExampleFile, out2, err2) == 2);

  // A non-dual input to a constructor is a certified failure, exit 1.
  std::ostringstream out3, err3;
  CHECK(run_request(make_request("dual-seq", {{"frame", "F"},
                                              {"dual", "G_scaled2"},
                                              {"index", "1"}}),
                    kExampleFile, out3, err3) == 1);
  const Json report = Json::parse(out3.str());
  CHECK(report["error"] == "NotADual");
}

TEST_CASE("reports are byte-stable across runs") {
  const ProblemFile problem = parse_problem_file(kExampleFile);
  const CommandRequest request =
      make_request("canonical-dual", {{"frame", "F"}});
  std::ostringstream first, second;
  CHECK(execute(request, problem, first) == 0);
  CHECK(execute(request, problem, second) == 0);
  CHECK(first.str() == second.str());
  CHECK_FALSE(first.str().empty());
}

TEST_CASE("golden suite passes on the shipped problem file") {
  const ProblemFile problem = parse_problem_file(kExampleFile);
  const GoldenReport report = run_example25_golden(problem);
  CHECK(report.all_pass);
  CHECK(report.checks.size() >= 14);
}

TEST_CASE("binary honors the exit-code contract end to end") {
  const ProcessResult ok = run_binary("dual-check --file " + kExampleFile +
                                      " --frame F --dual G");
  CHECK(ok.exit_code == 0);
  const Json report = Json::parse(ok.stdout_text);
  CHECK(report["certificate"]["residual_norm"].get<double>() <= 1e-12);

  const ProcessResult fail = run_binary("dual-check --file " + kExampleFile +
                                        " --frame F --dual G_scaled2");
  CHECK(fail.exit_code == 1);

  const ProcessResult bounds = run_binary("verify-bounds --file " + kExampleFile +
                                          " --frame F --lower 0.5 --upper 4.5");
  CHECK(bounds.exit_code == 0);

  const ProcessResult golden = run_binary("example25 --file " + kExampleFile);
  CHECK(golden.exit_code == 0);
  CHECK(Json::parse(golden.stdout_text)["report"]["all_pass"] == true);

  const ProcessResult missing = run_binary("bounds --file /nonexistent.json --frame F");
  CHECK(missing.exit_code == 2);
  CHECK(missing.stdout_text.empty());

  const ProcessResult identical = run_binary("example25 --file " + kExampleFile);
  CHECK(identical.stdout_text == golden.stdout_text);
}

TEST_CASE("exit-code contract across every command") {
  const std::string d = "--file " + kExampleFile;
  // command line -> expected exit code on the shipped problem file
  const std::pair<std::string, int> transcript[] = {
      {"bounds " + d + " --frame F", 0},
      {"verify-bounds " + d + " --frame F --lower 0.5 --upper 4.5", 0},
      {"verify-bounds " + d + " --frame F --lower 0.7 --upper 4.5", 1},
      {"canonical-dual " + d + " --frame F", 0},
      {"dual-check " + d + " --frame F --dual G", 0},
      {"dual-check " + d + " --frame F --dual G_scaled2", 1},
      {"dual-seq " + d + " --frame F --dual G --index 3 --convention left", 0},
      {"dual-seq " + d + " --frame F --dual G --index 2 --mode closed", 0},
      {"dual-seq " + d + " --frame F --dual G --index 2 --mode oops", 2},
      {"dual-decompose " + d + " --frame F --dual G", 0},
      {"null-family " + d + " --frame F --degree 1", 0},
      {"k-op " + d + " --frame F --dual G --samples 25", 0},
      {"kernel-symmetry " + d + " --frame F --dual G", 1},
      {"minimality " + d + " --frame F --dual G", 0},
      {"sum-frame " + d + " --frame F --dual G --op1 X_double --op2 X_half", 0},
      {"sum-frame " + d + " --frame F --dual G --op1 X_skew --op2 X_skew", 1},
      {"sum-dual " + d + " --frame F --dual G --dual2 G --alpha 2 --beta -1", 0},
      {"sum-dual " + d + " --frame F --dual G --dual2 G --alpha 2 --beta 2", 1},
      {"sum-dual " + d + " --frame F --dual G --dual2 G --op1 X_double --op2 X_half", 1},
      {"scaled " + d + " --frame F --scale a_unit", 0},
      {"scaled " + d + " --frame F --scale a_missing", 2},
      {"identity-check " + d + " --frame F --dual G --op1 X_skew", 1},
      {"riesz-diagnostic " + d + " --frame F", 0},
      {"example25 " + d, 0},
  };
  for (const auto& [args, expected] : transcript) {
    const ProcessResult result = run_binary(args);
    CAPTURE(args);
    CHECK(result.exit_code == expected);
    if (expected != 2) CHECK_FALSE(result.stdout_text.empty());
  }
}

TEST_CASE("one tolerance knob: --tol flag and FRAMES_TOL fallback") {
  // Doubling G leaves residual 1.0; a generous tolerance turns that into a
  // certified pass.
  const std::string check = "dual-check --file " + kExampleFile + " --frame F --dual G_scaled2";
  CHECK(run_binary(check).exit_code == 1);
  CHECK(run_binary(check + " --tol 2.0").exit_code == 0);

  const char* bin = std::getenv("FRAMES_BIN");
  REQUIRE(bin != nullptr);
  setenv("FRAMES_TOL", "2.0", 1);
  CHECK(run_binary(check).exit_code == 0);
  // The explicit flag wins over the environment.
  CHECK(run_binary(check + " --tol 1e-9").exit_code == 1);
  unsetenv("FRAMES_TOL");
}

TEST_CASE("null-family command dumps a re-ingestable basis") {
  const ProblemFile problem = parse_problem_file(kExampleFile);
  std::ostringstream out;
  CHECK(execute(make_request("null-family", {{"frame", "F"}, {"degree", "1"}}), problem, out) ==
        0);
  const Json report = Json::parse(out.str());
  CHECK(report["dimension"] == 4);
  CHECK(report["max_dual_residual"].get<double>() <= 1e-10);

  // Re-ingest the first basis dump and confirm it still generates a dual.
  const Json& dump = report["basis"][0];
  std::vector<ModuleElement> coeffs;
  for (const Json& c : dump["coeffs"])
    coeffs.push_back(module_element_from_json(problem.algebra, problem.rank, c));
  const FrameMap member = FrameMap::polynomial(std::move(coeffs));
  const FrameMap canonical = canonical_dual(problem.map("F"), problem.rule);
  CHECK(is_dual_pair(problem.map("F"), canonical.plus(member), problem.rule).residual_norm <=
        1e-10);
}
