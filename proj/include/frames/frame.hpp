#pragma once

#include <optional>
#include <string>

#include "frames/measure.hpp"

namespace frames {

/// Verdict of a frame-bound certification.
enum class FrameVerdict { Frame, BesselOnly, NotBesselEvidence };

std::string to_string(FrameVerdict v);

struct FrameCertificate {
  std::optional<double> claimed_lower;
  std::optional<double> claimed_upper;
  double optimal_lower = 0.0;  // min eigenvalue of the frame-operator matrix
  double optimal_upper = 0.0;  // max eigenvalue
  double lower_margin = 0.0;   // min eig(Q - A I); positive certifies the lower bound
  double upper_margin = 0.0;   // min eig(B I - Q)
  FrameVerdict verdict = FrameVerdict::BesselOnly;
  std::optional<Vector> witness;  // vector violating the failed inequality
};

struct DualCertificate {
  Matrix residual;             // integral of G^* F minus the identity, flattened
  double residual_norm = 0.0;  // operator norm of the residual
  double tol = 0.0;
  bool is_dual = false;
};

/// Frame operator as right multiplication by Q = integral of F^*(omega) F(omega).
ModuleOperator frame_operator(const FrameMap& f, const QuadratureRule& rule);

/// Analysis operator sample: omega -> <f, F(omega)> tabulated on the rule.
L2Element analysis(const FrameMap& map, const ModuleElement& f, const QuadratureRule& rule);

/// Synthesis: integral of phi(omega).F(omega).
ModuleElement synthesis(const FrameMap& map, const L2Element& phi);

/// Reconstruction integral of <f,G(omega)> F(omega), i.e. synthesis(F, analysis(G, f)).
ModuleElement reconstruct(const FrameMap& f_map, const FrameMap& g_map,
                          const ModuleElement& f, const QuadratureRule& rule);

/// Extreme eigenvalues of Q: the tightest frame bounds.
std::pair<double, double> optimal_frame_bounds(const FrameMap& f, const QuadratureRule& rule);

/// Certify claimed bounds A, B against Q in the C*-order.
FrameCertificate verify_claimed_bounds(const FrameMap& f, double lower, double upper,
                                       const QuadratureRule& rule,
                                       double tol = Tolerances{}.positivity);

/// Residual of the duality identity: integral of G^* F minus the identity.
DualCertificate is_dual_pair(const FrameMap& f, const FrameMap& g, const QuadratureRule& rule,
                             double tol = Tolerances{}.dual);

/// S^{-1} F, applied on the right. Throws NotAFrame when the lower bound
/// vanishes within tolerance.
FrameMap canonical_dual(const FrameMap& f, const QuadratureRule& rule,
                        double tol = Tolerances{}.positivity);

/// Least Bessel constant: the top eigenvalue of Q.
double bessel_bound(const FrameMap& f, const QuadratureRule& rule);

enum class RieszVerdict { RieszType, NotRieszType, Inconclusive };

std::string to_string(RieszVerdict v);

struct RieszDiagnostic {
  RieszVerdict verdict = RieszVerdict::Inconclusive;
  int rank = 0;         // numerical rank of the discretized analysis operator
  int domain_dim = 0;   // complex dimension of U
  int codomain_dim = 0; // complex dimension of the node-sampled L^2 space
  bool structural = false;  // verdict decided by the measure type, not by rank
  std::string note;
};

/// Surjectivity diagnostic for the analysis operator. Exact for discrete
/// measures; interval measures report a structural NotRieszType since a
/// finite-dimensional module cannot surject onto L^2 of a nonatomic measure.
RieszDiagnostic riesz_type_diagnostic(const FrameMap& f, const QuadratureRule& rule,
                                      double tol = 1e-10);

}  // namespace frames
