#include "frames/sum.hpp"

#include <algorithm>
#include <cmath>

namespace frames {

namespace {

void require_dual(const FrameMap& f, const FrameMap& g, const QuadratureRule& rule,
                  double tol, const char* who) {
  const DualCertificate cert = is_dual_pair(f, g, rule, tol);
  if (!cert.is_dual)
    throw NotADual(std::string(who) + ": input failed dual certification, residual " +
                   std::to_string(cert.residual_norm));
}

}  // namespace

std::pair<FrameMap, SumFrameCertificate> operator_sum_frame(
    const FrameMap& f, const FrameMap& g, const ModuleOperator& x1, const ModuleOperator& x2,
    const QuadratureRule& rule, double tol) {
  require_dual(f, g, rule, tol, "operator_sum_frame");
  const ModuleOperator identity = ModuleOperator::identity(f.descriptor(), f.rank());

  SumFrameCertificate cert;
  cert.hypothesis_residual = operator_norm(x1 * x2.adjoint() - identity);
  if (cert.hypothesis_residual > tol)
    throw HypothesisViolated("X1 X2^* differs from the identity by " +
                             std::to_string(cert.hypothesis_residual));

  const FrameMap h = f.applied(x1, OperatorSide::Right).plus(g.applied(x2, OperatorSide::Right));
  const ModuleOperator q_h = frame_operator(h, rule);
  const std::vector<double> eigs = operator_hermitian_eigenvalues(q_h);
  cert.optimal_lower = eigs.front();
  cert.optimal_upper = eigs.back();

  const double b_f = bessel_bound(f, rule);
  const double b_g = bessel_bound(g, rule);
  const double m1 = operator_norm_bound_check(x1);
  const double m2 = operator_norm_bound_check(x2);
  cert.guaranteed_upper = b_f * m1 + 2.0 + b_g * m2;

  const OrderReport lower = operator_order_leq(
      ModuleOperator::scalar(f.descriptor(), f.rank(), Complex(cert.guaranteed_lower, 0.0)),
      q_h, Tolerances{}.positivity);
  cert.lower_margin = lower.margin;
  cert.lower_ok = lower.holds;
  cert.upper_ok = cert.optimal_upper <= cert.guaranteed_upper + tol;
  return {h, cert};
}

OperatorDualReport dual_pair_under_operators(const FrameMap& f, const FrameMap& g,
                                             const ModuleOperator& x1,
                                             const ModuleOperator& x2,
                                             const QuadratureRule& rule, double tol) {
  require_dual(f, g, rule, tol, "dual_pair_under_operators");
  const FrameMap f_new = f.applied(x1, OperatorSide::Right);
  const FrameMap g_new = g.applied(x2, OperatorSide::Right);
  OperatorDualReport report;
  report.integral = is_dual_pair(f_new, g_new, rule, tol);
  const ModuleOperator identity = ModuleOperator::identity(f.descriptor(), f.rank());
  report.algebraic_residual = operator_norm(x2.adjoint() * x1 - identity);
  return report;
}

ScaledMapReport scaled_map(const AlgebraElement& a, const FrameMap& f,
                           const QuadratureRule& rule, double tol, unsigned seed) {
  const double b = bessel_bound(f, rule);
  ScaledMapReport report{f.scaled_by(a)};
  const double a_norm = op_norm(a);
  report.claimed_bessel = b * a_norm * a_norm;
  report.actual_bessel = bessel_bound(report.map, rule);
  report.bessel_ok = report.actual_bessel <= report.claimed_bessel + tol;

  const ModuleOperator q_f = frame_operator(f, rule);
  const ModuleOperator q_af = frame_operator(report.map, rule);

  const AlgebraElement gram = a.adjoint() * a;
  report.unitary =
      op_norm(gram - AlgebraElement::identity(a.descriptor())) <= tol * (1.0 + a_norm * a_norm);
  if (report.unitary) report.unitary_residual = operator_norm(q_af - q_f);

  report.central = is_central(a);
  if (report.central) {
    // Central a: Q_aF = Q_F diag(a^* a) and synthesis commutes with scaling.
    ModuleOperator gram_diag = ModuleOperator::zero(a.descriptor(), f.rank());
    {
      std::vector<AlgebraElement> entries(
          static_cast<size_t>(f.rank()) * static_cast<size_t>(f.rank()),
          AlgebraElement::zero(a.descriptor()));
      for (int i = 0; i < f.rank(); ++i)
        entries[static_cast<size_t>(i * f.rank() + i)] = gram;
      gram_diag = ModuleOperator(a.descriptor(), f.rank(), std::move(entries));
    }
    report.central_matrix_residual = operator_norm(q_af - q_f * gram_diag);

    std::mt19937_64 rng(seed);
    for (int s = 0; s < 10; ++s) {
      std::vector<AlgebraElement> samples;
      samples.reserve(static_cast<size_t>(rule.size()));
      for (int q = 0; q < rule.size(); ++q)
        samples.push_back(random_algebra_element(a.descriptor(), rng));
      const L2Element phi(rule, std::move(samples));
      const ModuleElement lhs = synthesis(report.map, phi);
      const ModuleElement rhs = left_act(a, synthesis(f, phi));
      report.central_synthesis_residual =
          std::max(report.central_synthesis_residual, elem_norm(lhs - rhs));
    }
  }
  return report;
}

FrameMap central_sum_dual(const FrameMap& f, const FrameMap& g, const FrameMap& k,
                          const AlgebraElement& a1, const AlgebraElement& a2,
                          const QuadratureRule& rule, double tol) {
  if (!is_central(a1) || !is_central(a2))
    throw NotCentral("central sum needs blockwise-scalar coefficients");
  const double affinity =
      op_norm(a1 + a2 - AlgebraElement::identity(a1.descriptor()));
  if (affinity > tol)
    throw AffinityViolated("a1 + a2 differs from the identity by " + std::to_string(affinity));
  require_dual(f, g, rule, tol, "central_sum_dual");
  require_dual(f, k, rule, tol, "central_sum_dual");

  const FrameMap result = g.scaled_by(a1).plus(k.scaled_by(a2));
  const DualCertificate cert = is_dual_pair(f, result, rule, tol);
  if (!cert.is_dual)
    throw NotADual("central_sum_dual: constructed map failed certification, residual " +
                   std::to_string(cert.residual_norm));
  return result;
}

OperatorSumDualResult operator_sum_dual(const FrameMap& f, const FrameMap& g,
                                        const FrameMap& k, const ModuleOperator& x1,
                                        const ModuleOperator& x2, const QuadratureRule& rule,
                                        double tol) {
  require_dual(f, g, rule, tol, "operator_sum_dual");
  require_dual(f, k, rule, tol, "operator_sum_dual");
  const FrameMap map =
      g.applied(x1, OperatorSide::Right).plus(k.applied(x2, OperatorSide::Right));
  const ModuleOperator identity = ModuleOperator::identity(f.descriptor(), f.rank());
  OperatorSumDualResult result{map, operator_norm(x1 + x2 - identity),
                               is_dual_pair(f, map, rule, tol)};
  return result;
}

FrameMap affine_sum_dual(const FrameMap& f, const FrameMap& g, const FrameMap& k,
                         Complex alpha, Complex beta, const QuadratureRule& rule, double tol) {
  if (std::abs(alpha + beta - Complex(1.0, 0.0)) > tol)
    throw AffinityViolated("alpha + beta must equal 1");
  const ModuleOperator x1 = ModuleOperator::scalar(f.descriptor(), f.rank(), alpha);
  const ModuleOperator x2 = ModuleOperator::scalar(f.descriptor(), f.rank(), beta);
  const OperatorSumDualResult result = operator_sum_dual(f, g, k, x1, x2, rule, tol);
  if (!result.certificate.is_dual)
    throw NotADual("affine_sum_dual: constructed map failed certification, residual " +
                   std::to_string(result.certificate.residual_norm));
  return result.map;
}

IdentityCheckReport identity_check(const FrameMap& f, const FrameMap& g,
                                   const ModuleOperator& x, const QuadratureRule& rule,
                                   double tol) {
  require_dual(f, g, rule, tol, "identity_check");
  const FrameMap gx = g.applied(x, OperatorSide::Right);
  const DualCertificate cert = is_dual_pair(f, gx, rule, tol);
  IdentityCheckReport report;
  report.dual_residual = cert.residual_norm;
  report.is_dual = cert.is_dual;
  report.operator_residual =
      operator_norm(x - ModuleOperator::identity(f.descriptor(), f.rank()));
  return report;
}

}  // namespace frames
