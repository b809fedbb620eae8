#pragma once

// Independent oracles for expected values: closed forms only, no calls into
// the library under test.

#include <cmath>
#include <utility>
#include <vector>

namespace oracles {

// Eigenvalues of the real symmetric matrix [[a, b], [b, c]], ascending.
inline std::pair<double, double> sym2_eigenvalues(double a, double b, double c) {
  const double mean = 0.5 * (a + c);
  const double radius = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  return {mean - radius, mean + radius};
}

// Operator norm of [[a, b], [b, c]] (largest singular value = max |eig|).
inline double sym2_norm(double a, double b, double c) {
  const auto [lo, hi] = sym2_eigenvalues(a, b, c);
  return std::max(std::abs(lo), std::abs(hi));
}

// Monomial moment of the measure w(x) dx on [a, b]:
// integral of x^p sum_c w_c x^c = sum_c w_c (b^{p+c+1} - a^{p+c+1})/(p+c+1).
inline double interval_moment(double a, double b, const std::vector<double>& weight, int p) {
  double acc = 0.0;
  for (size_t c = 0; c < weight.size(); ++c) {
    const double e = static_cast<double>(p) + static_cast<double>(c) + 1.0;
    acc += weight[c] * (std::pow(b, e) - std::pow(a, e)) / e;
  }
  return acc;
}

inline double poly_eval(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (size_t c = coeffs.size(); c-- > 0;) acc = acc * x + coeffs[c];
  return acc;
}

}  // namespace oracles
