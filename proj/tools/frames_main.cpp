#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "frames/commands.hpp"

namespace {

struct CommonOptions {
  std::string file;
  double tol = frames::Tolerances{}.dual;
  bool tol_set = false;
};

void add_option_if(frames::CommandRequest& request, const std::string& key,
                   const std::string& value) {
  if (!value.empty()) request.options[key] = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical certification of continuous frames and their duals "
               "over block-diagonal matrix C*-algebras"};
  app.require_subcommand(1);

  CommonOptions common;
  frames::CommandRequest request;

  // Values gathered by subcommand flags; empty means not given.
  std::string frame, dual, dual2, op1, op2, a1, a2, scale, alpha, beta, convention, mode;
  std::string lower, upper;
  int index = 0, degree = -1, grid = 0, samples = 0;
  bool have_index = false, have_degree = false, have_grid = false, have_samples = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--file", common.file, "problem file (JSON)")->required();
    cmd->add_option("--tol", common.tol, "override every certification tolerance")
        ->each([&](const std::string&) { common.tol_set = true; });
  };

  auto* bounds = app.add_subcommand("bounds", "optimal frame bounds of a map");
  add_common(bounds);
  bounds->add_option("--frame", frame, "map name")->required();

  auto* verify = app.add_subcommand("verify-bounds", "certify claimed frame bounds");
  add_common(verify);
  verify->add_option("--frame", frame)->required();
  verify->add_option("--lower", lower, "claimed lower bound")->required();
  verify->add_option("--upper", upper, "claimed upper bound")->required();

  auto* canonical = app.add_subcommand("canonical-dual", "construct and certify S^-1 F");
  add_common(canonical);
  canonical->add_option("--frame", frame)->required();

  auto* dual_check = app.add_subcommand("dual-check", "certify a dual pair");
  add_common(dual_check);
  dual_check->add_option("--frame", frame)->required();
  dual_check->add_option("--dual", dual)->required();

  auto* dual_seq = app.add_subcommand("dual-seq", "dual sequence (step or closed form)");
  add_common(dual_seq);
  dual_seq->add_option("--frame", frame)->required();
  dual_seq->add_option("--dual", dual)->required();
  dual_seq->add_option("--index", index, "iteration count / closed-form index")
      ->required()
      ->each([&](const std::string&) { have_index = true; });
  dual_seq->add_option("--convention", convention, "left or right (default right)");
  dual_seq->add_option("--mode", mode, "step (default) or closed");

  auto* decompose = app.add_subcommand("dual-decompose", "split a dual into canonical + null map");
  add_common(decompose);
  decompose->add_option("--frame", frame)->required();
  decompose->add_option("--dual", dual)->required();

  auto* family = app.add_subcommand("null-family", "basis of null Bessel maps per degree");
  add_common(family);
  family->add_option("--frame", frame)->required();
  family->add_option("--degree", degree)
      ->required()
      ->each([&](const std::string&) { have_degree = true; });

  auto* k_op = app.add_subcommand("k-op", "K-operator of a dual with its checks");
  add_common(k_op);
  k_op->add_option("--frame", frame)->required();
  k_op->add_option("--dual", dual)->required();
  k_op->add_option("--samples", samples, "random probes (default 100)")
      ->each([&](const std::string&) { have_samples = true; });

  auto* kernel = app.add_subcommand("kernel-symmetry", "cross-kernel symmetry scan");
  add_common(kernel);
  kernel->add_option("--frame", frame)->required();
  kernel->add_option("--dual", dual)->required();
  kernel->add_option("--grid", grid, "grid points per axis (default: rule nodes)")
      ->each([&](const std::string&) { have_grid = true; });

  auto* minimality = app.add_subcommand("minimality", "canonical-dual minimality comparison");
  add_common(minimality);
  minimality->add_option("--frame", frame)->required();
  minimality->add_option("--dual", dual)->required();

  auto* sum_frame = app.add_subcommand("sum-frame", "certify F.X1 + G.X2 as a frame");
  add_common(sum_frame);
  sum_frame->add_option("--frame", frame)->required();
  sum_frame->add_option("--dual", dual)->required();
  sum_frame->add_option("--op1", op1)->required();
  sum_frame->add_option("--op2", op2)->required();

  auto* sum_dual = app.add_subcommand("sum-dual", "sum two duals (operator, central or affine)");
  add_common(sum_dual);
  sum_dual->add_option("--frame", frame)->required();
  sum_dual->add_option("--dual", dual)->required();
  sum_dual->add_option("--dual2", dual2)->required();
  sum_dual->add_option("--op1", op1, "operator coefficient for the first dual");
  sum_dual->add_option("--op2", op2, "operator coefficient for the second dual");
  sum_dual->add_option("--a1", a1, "central element name");
  sum_dual->add_option("--a2", a2, "central element name");
  sum_dual->add_option("--alpha", alpha, "scalar (number or named scalar)");
  sum_dual->add_option("--beta", beta, "scalar (number or named scalar)");

  auto* scaled = app.add_subcommand("scaled", "scale a map by an algebra element");
  add_common(scaled);
  scaled->add_option("--frame", frame)->required();
  scaled->add_option("--scale", scale, "algebra element name")->required();

  auto* identity = app.add_subcommand("identity-check", "G.X dual of F forces X = I");
  add_common(identity);
  identity->add_option("--frame", frame)->required();
  identity->add_option("--dual", dual)->required();
  identity->add_option("--op1", op1)->required();

  auto* riesz = app.add_subcommand("riesz-diagnostic", "Riesz-type diagnostic of a frame");
  add_common(riesz);
  riesz->add_option("--frame", frame)->required();

  auto* example = app.add_subcommand("example25", "golden reproduction of the worked example");
  add_common(example);

  CLI11_PARSE(app, argc, argv);

  request.command = app.get_subcommands().front()->get_name();
  add_option_if(request, "frame", frame);
  add_option_if(request, "dual", dual);
  add_option_if(request, "dual2", dual2);
  add_option_if(request, "op1", op1);
  add_option_if(request, "op2", op2);
  add_option_if(request, "a1", a1);
  add_option_if(request, "a2", a2);
  add_option_if(request, "scale", scale);
  add_option_if(request, "alpha", alpha);
  add_option_if(request, "beta", beta);
  add_option_if(request, "convention", convention);
  add_option_if(request, "mode", mode);
  add_option_if(request, "lower", lower);
  add_option_if(request, "upper", upper);
  if (have_index) request.options["index"] = std::to_string(index);
  if (have_degree) request.options["degree"] = std::to_string(degree);
  if (have_grid) request.options["grid"] = std::to_string(grid);
  if (have_samples) request.options["samples"] = std::to_string(samples);

  request.tol = common.tol;
  request.tol_explicit = common.tol_set;
  if (!common.tol_set) {
    if (const char* env = std::getenv("FRAMES_TOL")) {
      try {
        request.tol = std::stod(env);
        request.tol_explicit = true;
      } catch (const std::exception&) {
        std::cerr << "error: FRAMES_TOL is not a number: " << env << "\n";
        return 2;
      }
    }
  }

  return frames::run_request(request, common.file, std::cout, std::cerr);
}
