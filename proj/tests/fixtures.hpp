#pragma once

// Shared construction helpers for the worked example and randomized suites.

#include <random>

#include "frames/dual.hpp"
#include "frames/frame.hpp"

namespace fixtures {

using namespace frames;

inline AlgebraDescriptor full2() { return AlgebraDescriptor({2}); }
inline AlgebraDescriptor diag11() { return AlgebraDescriptor({1, 1}); }
inline AlgebraDescriptor blocks21() { return AlgebraDescriptor({2, 1}); }

inline AlgebraElement alg2(const AlgebraDescriptor& d, double a11, double a12, double a21,
                           double a22) {
  Matrix m(2, 2);
  m << Complex(a11, 0), Complex(a12, 0), Complex(a21, 0), Complex(a22, 0);
  return AlgebraElement(d, {m});
}

inline ModuleElement elem2(const AlgebraDescriptor& d, double a11, double a12, double a21,
                           double a22) {
  return ModuleElement(d, {alg2(d, a11, a12, a21, a22)});
}

// F(omega) = omega [[2,1],[1,3]] on [0,1].
inline FrameMap example_f(const AlgebraDescriptor& d) {
  return FrameMap::polynomial({elem2(d, 0, 0, 0, 0), elem2(d, 2, 1, 1, 3)});
}

// G(omega) = omega [[3.3,0.9],[0.9,2.7]] - [[1,1],[1,1]], a dual of F.
inline FrameMap example_g(const AlgebraDescriptor& d) {
  return FrameMap::polynomial({elem2(d, -1, -1, -1, -1), elem2(d, 3.3, 0.9, 0.9, 2.7)});
}

inline MeasureSpace unit_interval() { return IntervalMeasure{0.0, 1.0, {1.0}}; }

inline QuadratureRule example_rule() { return build_rule(unit_interval(), 4); }

// The four-parameter dual family of the example.
inline FrameMap family_member(const AlgebraDescriptor& d, double alpha, double beta,
                              double gamma, double delta) {
  const ModuleElement coeff0 = elem2(d, alpha, beta, gamma, delta) * Complex(-2.0 / 3.0, 0.0);
  const ModuleElement coeff1 = elem2(d, alpha + 1.8, beta - 0.6, gamma - 0.6, delta + 1.2);
  return FrameMap::polynomial({coeff0, coeff1});
}

// Blockwise unitary via QR of a random element.
inline AlgebraElement random_unitary(const AlgebraDescriptor& d, std::mt19937_64& rng) {
  const AlgebraElement seed = random_algebra_element(d, rng);
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(d.block_count()));
  for (int j = 0; j < d.block_count(); ++j) {
    Eigen::HouseholderQR<Matrix> qr(seed.block(j));
    blocks.push_back(Matrix(qr.householderQ()));
  }
  return AlgebraElement(d, std::move(blocks));
}

// Identity plus a scaled random perturbation; well conditioned for small eps.
inline ModuleOperator near_identity_operator(const AlgebraDescriptor& d, int rank, double eps,
                                             std::mt19937_64& rng) {
  return ModuleOperator::identity(d, rank) + random_module_operator(d, rank, rng) * Complex(eps, 0);
}

// Discrete two-atom frame over the commutative algebra diag11 with two
// distinct duals: F(1) = I, F(2) = diag(1,2); G differs from the canonical.
struct TwoAtomFixture {
  AlgebraDescriptor d = diag11();
  MeasureSpace measure = DiscreteMeasure{{1.0, 2.0}, {1.0, 1.0}};
  QuadratureRule rule = build_rule(measure, 0);

  AlgebraElement diag(double x, double y) const {
    Matrix b1(1, 1), b2(1, 1);
    b1 << Complex(x, 0);
    b2 << Complex(y, 0);
    return AlgebraElement(d, {b1, b2});
  }

  FrameMap frame() const {
    return FrameMap::tabulated(
        rule, {ModuleElement(d, {diag(1, 1)}), ModuleElement(d, {diag(1, 2)})});
  }
  // Any G with G(1)^* + G(2)^* diag(1,2) = I; this one takes diag(1,-1), diag(0,1).
  FrameMap other_dual() const {
    return FrameMap::tabulated(
        rule, {ModuleElement(d, {diag(1, -1)}), ModuleElement(d, {diag(0, 1)})});
  }
};

}  // namespace fixtures
