#pragma once

#include "frames/dual.hpp"

namespace frames {

struct SumFrameCertificate {
  double hypothesis_residual = 0.0;  // |X1 X2^* - I|
  double guaranteed_lower = 2.0;     // lower bound from the duality cross terms
  double guaranteed_upper = 0.0;     // B_F |X1|^2 + 2 + B_G |X2|^2
  double optimal_lower = 0.0;        // min eig of the sum's frame-operator matrix
  double optimal_upper = 0.0;
  double lower_margin = 0.0;         // min eig(Q_H - 2 I)
  bool lower_ok = false;
  bool upper_ok = false;
};

/// H = F.X1 + G.X2 for a dual pair (F,G) with X1 X2^* = I; certifies the
/// guaranteed bounds and reports the optimal ones. Throws HypothesisViolated.
std::pair<FrameMap, SumFrameCertificate> operator_sum_frame(
    const FrameMap& f, const FrameMap& g, const ModuleOperator& x1, const ModuleOperator& x2,
    const QuadratureRule& rule, double tol = Tolerances{}.dual);

struct OperatorDualReport {
  DualCertificate integral;          // residual of integral of (G X2)^* (F X1) - I
  double algebraic_residual = 0.0;   // |X2^* X1 - I|; agrees with the integral residual
};

/// Certify that (F.X1, G.X2) is a dual pair when (F,G) is.
OperatorDualReport dual_pair_under_operators(const FrameMap& f, const FrameMap& g,
                                             const ModuleOperator& x1,
                                             const ModuleOperator& x2,
                                             const QuadratureRule& rule,
                                             double tol = Tolerances{}.dual);

struct ScaledMapReport {
  FrameMap map;                       // a.F
  double claimed_bessel = 0.0;        // B |a|^2
  double actual_bessel = 0.0;         // top eigenvalue of the scaled frame operator
  bool bessel_ok = false;
  bool unitary = false;
  double unitary_residual = 0.0;      // |Q_aF - Q_F| when a is unitary
  bool central = false;
  double central_matrix_residual = 0.0;     // |Q_aF - Q_F diag(a^* a)| when a is central
  double central_synthesis_residual = 0.0;  // |T_aF phi - a T_F phi| on random phi
};

/// Pointwise scaling a.F with the Bessel-bound claim and the special-case
/// operator relations (unitary a, central a) checked in matrix form.
ScaledMapReport scaled_map(const AlgebraElement& a, const FrameMap& f,
                           const QuadratureRule& rule, double tol = 1e-10,
                           unsigned seed = 20240902u);

/// a1 G + a2 K for central a1, a2 with a1 + a2 = 1. Throws NotCentral,
/// AffinityViolated, NotADual.
FrameMap central_sum_dual(const FrameMap& f, const FrameMap& g, const FrameMap& k,
                          const AlgebraElement& a1, const AlgebraElement& a2,
                          const QuadratureRule& rule, double tol = Tolerances{}.dual);

struct OperatorSumDualResult {
  FrameMap map;               // G.X1 + K.X2
  double iff_residual = 0.0;  // |X1 + X2 - I|
  DualCertificate certificate;
};

/// G.X1 + K.X2 for duals G, K; a dual exactly when X1 + X2 = I, and the
/// certificate residual reproduces |X1 + X2 - I| up to quadrature error.
OperatorSumDualResult operator_sum_dual(const FrameMap& f, const FrameMap& g,
                                        const FrameMap& k, const ModuleOperator& x1,
                                        const ModuleOperator& x2, const QuadratureRule& rule,
                                        double tol = Tolerances{}.dual);

/// alpha G + beta K with alpha + beta = 1. Throws AffinityViolated.
FrameMap affine_sum_dual(const FrameMap& f, const FrameMap& g, const FrameMap& k,
                         Complex alpha, Complex beta, const QuadratureRule& rule,
                         double tol = Tolerances{}.dual);

struct IdentityCheckReport {
  double dual_residual = 0.0;      // residual of is_dual_pair(F, G.X)
  double operator_residual = 0.0;  // |X - I|
  bool is_dual = false;
};

/// G.X is a dual of F exactly when X = I; returns both residuals.
IdentityCheckReport identity_check(const FrameMap& f, const FrameMap& g,
                                   const ModuleOperator& x, const QuadratureRule& rule,
                                   double tol = Tolerances{}.dual);

}  // namespace frames
