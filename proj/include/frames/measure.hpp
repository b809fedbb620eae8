#pragma once

#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "frames/module.hpp"

namespace frames {

/// Interval [a,b] with density w(omega) d(omega), w a real-coefficient
/// polynomial (coefficients ascending) that must be nonnegative on [a,b].
struct IntervalMeasure {
  double a = 0.0;
  double b = 1.0;
  std::vector<double> weight{1.0};
};

/// Finite atomic measure: point masses at the given locations.
struct DiscreteMeasure {
  std::vector<double> points;
  std::vector<double> masses;
};

using MeasureSpace = std::variant<IntervalMeasure, DiscreteMeasure>;

double weight_poly_eval(const std::vector<double>& coeffs, double x);

/// Nodes and positive weights discretizing a measure. `exactness_degree` is
/// the polynomial degree up to which the rule reproduces measure integrals
/// exactly; discrete measures are exact at every degree.
class QuadratureRule {
 public:
  static constexpr int kInfiniteDegree = std::numeric_limits<int>::max();

  QuadratureRule(std::vector<double> nodes, std::vector<double> weights, int exactness_degree);

  int size() const { return static_cast<int>(nodes_.size()); }
  double node(int q) const { return nodes_[static_cast<size_t>(q)]; }
  double weight(int q) const { return weights_[static_cast<size_t>(q)]; }
  int exactness_degree() const { return degree_; }
  bool is_discrete() const { return degree_ == kInfiniteDegree; }
  const std::vector<double>& nodes() const { return nodes_; }

  bool same_rule(const QuadratureRule& o) const {
    return nodes_ == o.nodes_ && weights_ == o.weights_ && degree_ == o.degree_;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  int degree_;
};

/// Build a rule exact for measure integrals of polynomials up to
/// `target_degree`. Intervals get a Gauss-Legendre rule sized for
/// target_degree + deg(w) and folded with the weight; discrete measures are
/// their own rule. Throws NegativeWeight if w is negative at a node.
QuadratureRule build_rule(const MeasureSpace& space, int target_degree);

/// Node-tabulated element of L^2(Omega, A).
class L2Element {
 public:
  L2Element(QuadratureRule rule, std::vector<AlgebraElement> samples);

  const QuadratureRule& rule() const { return rule_; }
  const AlgebraElement& sample(int q) const { return samples_[static_cast<size_t>(q)]; }
  int size() const { return static_cast<int>(samples_.size()); }

  L2Element operator+(const L2Element& o) const;
  L2Element operator-(const L2Element& o) const;
  L2Element operator*(Complex scalar) const;

 private:
  QuadratureRule rule_;
  std::vector<AlgebraElement> samples_;
};

/// Weighted sum of one algebra value per node, in fixed node order.
AlgebraElement integrate_alg(const QuadratureRule& rule,
                             std::span<const AlgebraElement> values);

/// <phi,psi> = integral of phi(omega) psi(omega)^*.
AlgebraElement l2_inner(const L2Element& phi, const L2Element& psi);

/// |phi| = |<phi,phi>|^(1/2).
double l2_norm(const L2Element& phi);

/// A weakly measurable map Omega -> U, either a matrix-coefficient polynomial
/// in omega or samples tabulated on one quadrature rule.
class FrameMap {
 public:
  static FrameMap polynomial(std::vector<ModuleElement> coeffs);
  static FrameMap tabulated(QuadratureRule rule, std::vector<ModuleElement> samples);

  bool is_polynomial() const { return !rule_.has_value(); }
  int poly_degree() const;  // -1 for the zero polynomial with no coefficients
  /// The owning rule of a tabulated map; empty for polynomial maps.
  const std::optional<QuadratureRule>& tab_rule() const { return rule_; }

  const AlgebraDescriptor& descriptor() const;
  int rank() const;

  /// Coefficient of omega^d (zero element beyond the stored degree).
  ModuleElement coeff(int d) const;
  int coeff_count() const { return static_cast<int>(values_.size()); }

  /// Evaluate at a point. Tabulated maps only evaluate at their own nodes;
  /// anything else raises OffNodeEvaluation.
  ModuleElement eval(double omega) const;
  /// Evaluate at node q of `rule`; tabulated maps require the identical rule.
  ModuleElement eval_node(const QuadratureRule& rule, int q) const;
  /// True when the map can be sampled on `rule`.
  bool evaluable_on(const QuadratureRule& rule) const;

  FrameMap scaled_by(const AlgebraElement& a) const;
  FrameMap applied(const ModuleOperator& x, OperatorSide side) const;
  FrameMap plus(const FrameMap& o) const;
  FrameMap times(Complex scalar) const;

 private:
  FrameMap() = default;
  // Polynomial coefficients (degree 0..d) or node samples, depending on rule_.
  std::vector<ModuleElement> values_;
  std::optional<QuadratureRule> rule_;
};

/// max_d |coeff_F(d) - coeff_G(d)| entrywise; maps must be polynomial.
double max_coeff_deviation(const FrameMap& f, const FrameMap& g);

}  // namespace frames
