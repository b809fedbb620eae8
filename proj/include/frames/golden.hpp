#pragma once

#include "frames/problem.hpp"

namespace frames {

struct GoldenCheck {
  std::string name;
  std::string kind;   // "max_abs_deviation", "residual" or "margin"
  double value = 0.0;
  bool pass = false;
};

struct GoldenReport {
  std::vector<GoldenCheck> checks;
  double tol = 0.0;
  bool all_pass = false;
};

/// Reproduce every displayed matrix of the worked two-by-two example over
/// [0,1]: frame operator, its inverse, the canonical dual, the first
/// sequence dual and its correction factor, the claimed and optimal bounds,
/// and the four-parameter dual family. The problem file must contain the
/// matching maps F and G.
GoldenReport run_example25_golden(const ProblemFile& problem, double tol = 1e-12);

Json to_json(const GoldenReport& report);

}  // namespace frames
