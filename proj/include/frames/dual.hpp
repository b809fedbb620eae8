#pragma once

#include <random>
#include <span>

#include "frames/frame.hpp"

namespace frames {

/// One step of the dual sequence: S^{-1}F + S G_i - F pointwise, with the
/// frame-operator matrix applied on the chosen side. The input must certify
/// as a dual of F; the output is certified before it is returned.
FrameMap dual_sequence_step(const FrameMap& f, const FrameMap& g_i, const QuadratureRule& rule,
                            OperatorSide side = OperatorSide::Right,
                            double tol = Tolerances{}.dual);

/// Closed form of the sequence: S^{-1}F + S^{i+1}G - S^{i}F for i >= 1, equal
/// to the (i+1)-fold step iterate.
FrameMap dual_sequence_closed(const FrameMap& f, const FrameMap& g, int i,
                              const QuadratureRule& rule,
                              OperatorSide side = OperatorSide::Right,
                              double tol = Tolerances{}.dual);

struct DualDecomposition {
  FrameMap null_part;            // L = G - S^{-1}F
  double nullity_residual = 0.0; // |integral of F^* L|
  bool is_dual = false;          // residual within tolerance
};

/// Split a Bessel map G into canonical dual plus difference map, and measure
/// the moment condition that makes G a dual.
DualDecomposition dual_decompose(const FrameMap& f, const FrameMap& g,
                                 const QuadratureRule& rule, double tol = Tolerances{}.dual);

/// Basis of the complex-linear space of polynomial maps L of degree <= degree
/// with vanishing F-moment (integral of F^* L = 0). Adding any member to the
/// canonical dual yields another dual.
std::vector<FrameMap> null_bessel_family(const FrameMap& f, int degree,
                                         const QuadratureRule& rule, double tol = 1e-12);

/// The operator K: U -> L^2 associated with a dual G, stored through its
/// generating difference map L = G - S^{-1}F; (Kf)(omega) = <f, L(omega)>.
class KOperator {
 public:
  KOperator(FrameMap difference, QuadratureRule rule);

  const FrameMap& difference() const { return difference_; }
  const QuadratureRule& rule() const { return rule_; }
  L2Element apply(const ModuleElement& f) const;

 private:
  FrameMap difference_;
  QuadratureRule rule_;
};

struct KOperatorChecks {
  double synthesis_residual_max = 0.0;  // max |T_F K f| / |f| over the sample
  double sampled_norm = 0.0;            // max |K f| over random unit f
  double representation_norm = 0.0;     // |integral of L^* L|^(1/2), >= the sampled norm
  double norm_bound = 0.0;              // sqrt(D) + 1/sqrt(A*)
  bool nullity_ok = false;
  bool bound_ok = false;
};

/// Build K from a certified dual and run the associated checks with
/// `samples` random module elements.
std::pair<KOperator, KOperatorChecks> k_operator_from_dual(
    const FrameMap& f, const FrameMap& g, const QuadratureRule& rule,
    double tol = Tolerances{}.dual, int samples = 100, unsigned seed = 20240901u);

/// Reconstruct the dual generated by a difference map: G = S^{-1}F + L.
/// Throws NullityViolated when L fails the moment condition.
FrameMap dual_from_k_operator(const FrameMap& f, const FrameMap& l, const QuadratureRule& rule,
                              double tol = Tolerances{}.dual);

struct KernelSymmetryReport {
  double max_deviation = 0.0;
  double omega = 0.0;  // witness pair attaining the maximum
  double gamma = 0.0;
};

/// max over grid pairs of |<F(omega),G(gamma)> - <G(omega),F(gamma)>|.
/// Vanishes exactly when G is the canonical dual.
KernelSymmetryReport kernel_symmetry_check(const FrameMap& f, const FrameMap& g,
                                           std::span<const double> grid);

struct MinimalityReport {
  double margin = 0.0;          // min eig(Q_D - Q^{-1}); >= 0 for any dual D
  double canonicity_gap = 0.0;  // |Q_D - Q^{-1}|; 0 iff D is the canonical dual
  bool holds = false;           // margin >= -tol
  bool is_canonical = false;    // gap <= tol
};

/// Frame-operator comparison of a dual D against the canonical dual. For a
/// certified dual Q_D - Q^{-1} equals the Gram integral of L = D - S^{-1}F;
/// its spectrum is evaluated in that form (squared singular values of the
/// stacked samples of L), which avoids the cancellation of the difference.
MinimalityReport minimality_check(const FrameMap& f, const FrameMap& d,
                                  const QuadratureRule& rule, double tol = Tolerances{}.dual);

/// Random generators shared by property tests and certification sampling.
AlgebraElement random_algebra_element(const AlgebraDescriptor& d, std::mt19937_64& rng);
ModuleElement random_module_element(const AlgebraDescriptor& d, int rank, std::mt19937_64& rng);
ModuleOperator random_module_operator(const AlgebraDescriptor& d, int rank,
                                      std::mt19937_64& rng);

}  // namespace frames
