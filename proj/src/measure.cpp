#include "frames/measure.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace frames {

double weight_poly_eval(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (size_t c = coeffs.size(); c-- > 0;) acc = acc * x + coeffs[c];
  return acc;
}

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights,
                               int exactness_degree)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), degree_(exactness_degree) {
  if (nodes_.size() != weights_.size())
    throw ShapeMismatch("quadrature rule: nodes and weights differ in length");
  if (nodes_.empty()) throw ShapeMismatch("quadrature rule needs at least one node");
}

namespace {

// Gauss-Legendre nodes and weights on [-1,1] by Newton iteration on the
// Legendre recurrence, then mapped to [a,b].
void gauss_legendre(int m, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(static_cast<size_t>(m), 0.0);
  weights.assign(static_cast<size_t>(m), 0.0);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int pairs = (m + 1) / 2;
  for (int i = 0; i < pairs; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = m * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes[static_cast<size_t>(i)] = mid - half * z;
    nodes[static_cast<size_t>(m - 1 - i)] = mid + half * z;
    const double w = 2.0 * half / ((1.0 - z * z) * pp * pp);
    weights[static_cast<size_t>(i)] = w;
    weights[static_cast<size_t>(m - 1 - i)] = w;
  }
}

}  // namespace

QuadratureRule build_rule(const MeasureSpace& space, int target_degree) {
  if (target_degree < 0) throw ShapeMismatch("quadrature target degree must be >= 0");
  if (const auto* discrete = std::get_if<DiscreteMeasure>(&space)) {
    if (discrete->points.size() != discrete->masses.size())
      throw ShapeMismatch("discrete measure: points and masses differ in length");
    if (discrete->points.empty()) throw ShapeMismatch("discrete measure needs points");
    for (double m : discrete->masses)
      if (!(m > 0.0)) throw NegativeWeight("discrete measure masses must be positive");
    return QuadratureRule(discrete->points, discrete->masses, QuadratureRule::kInfiniteDegree);
  }

  const auto& interval = std::get<IntervalMeasure>(space);
  if (!(interval.a < interval.b)) throw ShapeMismatch("interval measure needs a < b");
  int deg_w = 0;
  for (size_t c = interval.weight.size(); c-- > 0;)
    if (interval.weight[c] != 0.0) {
      deg_w = static_cast<int>(c);
      break;
    }
  const int lebesgue_degree = target_degree + deg_w;
  const int m = lebesgue_degree / 2 + 1;  // 2m-1 >= lebesgue_degree
  std::vector<double> nodes, weights;
  gauss_legendre(m, interval.a, interval.b, nodes, weights);
  for (size_t q = 0; q < nodes.size(); ++q) {
    const double w = weight_poly_eval(interval.weight, nodes[q]);
    if (w < 0.0) throw NegativeWeight("measure weight is negative at a quadrature node");
    weights[q] *= w;
  }
  return QuadratureRule(std::move(nodes), std::move(weights), 2 * m - 1 - deg_w);
}

L2Element::L2Element(QuadratureRule rule, std::vector<AlgebraElement> samples)
    : rule_(std::move(rule)), samples_(std::move(samples)) {
  if (static_cast<int>(samples_.size()) != rule_.size())
    throw ShapeMismatch("L2 element needs one sample per node");
  for (const AlgebraElement& s : samples_)
    if (s.descriptor() != samples_.front().descriptor())
      throw ShapeMismatch("L2 samples disagree on the algebra");
}

L2Element L2Element::operator+(const L2Element& o) const {
  if (!rule_.same_rule(o.rule_)) throw RuleMismatch("L2 elements tabulated on different rules");
  std::vector<AlgebraElement> samples;
  samples.reserve(samples_.size());
  for (size_t q = 0; q < samples_.size(); ++q) samples.push_back(samples_[q] + o.samples_[q]);
  return L2Element(rule_, std::move(samples));
}

L2Element L2Element::operator-(const L2Element& o) const {
  if (!rule_.same_rule(o.rule_)) throw RuleMismatch("L2 elements tabulated on different rules");
  std::vector<AlgebraElement> samples;
  samples.reserve(samples_.size());
  for (size_t q = 0; q < samples_.size(); ++q) samples.push_back(samples_[q] - o.samples_[q]);
  return L2Element(rule_, std::move(samples));
}

L2Element L2Element::operator*(Complex scalar) const {
  std::vector<AlgebraElement> samples;
  samples.reserve(samples_.size());
  for (const AlgebraElement& s : samples_) samples.push_back(s * scalar);
  return L2Element(rule_, std::move(samples));
}

AlgebraElement integrate_alg(const QuadratureRule& rule,
                             std::span<const AlgebraElement> values) {
  if (static_cast<int>(values.size()) != rule.size())
    throw ShapeMismatch("integrate_alg needs one value per node");
  AlgebraElement acc = AlgebraElement::zero(values.front().descriptor());
  for (int q = 0; q < rule.size(); ++q)
    acc = acc + values[static_cast<size_t>(q)] * Complex(rule.weight(q), 0.0);
  return acc;
}

AlgebraElement l2_inner(const L2Element& phi, const L2Element& psi) {
  if (!phi.rule().same_rule(psi.rule()))
    throw RuleMismatch("L2 inner product across different rules");
  std::vector<AlgebraElement> values;
  values.reserve(static_cast<size_t>(phi.size()));
  for (int q = 0; q < phi.size(); ++q)
    values.push_back(phi.sample(q) * psi.sample(q).adjoint());
  return integrate_alg(phi.rule(), values);
}

double l2_norm(const L2Element& phi) { return std::sqrt(op_norm(l2_inner(phi, phi))); }

FrameMap FrameMap::polynomial(std::vector<ModuleElement> coeffs) {
  if (coeffs.empty()) throw ShapeMismatch("polynomial frame map needs at least one coefficient");
  for (const ModuleElement& c : coeffs)
    if (c.descriptor() != coeffs.front().descriptor() || c.rank() != coeffs.front().rank())
      throw ShapeMismatch("polynomial coefficients disagree in shape");
  FrameMap map;
  map.values_ = std::move(coeffs);
  return map;
}

FrameMap FrameMap::tabulated(QuadratureRule rule, std::vector<ModuleElement> samples) {
  if (static_cast<int>(samples.size()) != rule.size())
    throw ShapeMismatch("tabulated frame map needs one sample per node");
  for (const ModuleElement& s : samples)
    if (s.descriptor() != samples.front().descriptor() || s.rank() != samples.front().rank())
      throw ShapeMismatch("tabulated samples disagree in shape");
  FrameMap map;
  map.values_ = std::move(samples);
  map.rule_ = std::move(rule);
  return map;
}

int FrameMap::poly_degree() const {
  if (!is_polynomial()) throw ShapeMismatch("tabulated map has no polynomial degree");
  return static_cast<int>(values_.size()) - 1;
}

const AlgebraDescriptor& FrameMap::descriptor() const { return values_.front().descriptor(); }

int FrameMap::rank() const { return values_.front().rank(); }

ModuleElement FrameMap::coeff(int d) const {
  if (!is_polynomial()) throw ShapeMismatch("tabulated map has no coefficients");
  if (d < 0) throw ShapeMismatch("coefficient degree must be >= 0");
  if (d >= static_cast<int>(values_.size())) return ModuleElement::zero(descriptor(), rank());
  return values_[static_cast<size_t>(d)];
}

ModuleElement FrameMap::eval(double omega) const {
  if (is_polynomial()) {
    ModuleElement acc = ModuleElement::zero(descriptor(), rank());
    for (size_t d = values_.size(); d-- > 0;)
      acc = acc * Complex(omega, 0.0) + values_[d];
    return acc;
  }
  for (int q = 0; q < rule_->size(); ++q) {
    const double node = rule_->node(q);
    if (std::abs(omega - node) <= 1e-14 * (1.0 + std::abs(node)))
      return values_[static_cast<size_t>(q)];
  }
  throw OffNodeEvaluation("tabulated map evaluated away from its nodes");
}

ModuleElement FrameMap::eval_node(const QuadratureRule& rule, int q) const {
  if (is_polynomial()) return eval(rule.node(q));
  if (!rule_->same_rule(rule))
    throw RuleMismatch("tabulated map sampled on a different rule");
  return values_[static_cast<size_t>(q)];
}

bool FrameMap::evaluable_on(const QuadratureRule& rule) const {
  return is_polynomial() || rule_->same_rule(rule);
}

FrameMap FrameMap::scaled_by(const AlgebraElement& a) const {
  FrameMap out = *this;
  for (ModuleElement& v : out.values_) v = left_act(a, v);
  return out;
}

FrameMap FrameMap::applied(const ModuleOperator& x, OperatorSide side) const {
  FrameMap out = *this;
  for (ModuleElement& v : out.values_) v = apply_operator(x, v, side);
  return out;
}

FrameMap FrameMap::plus(const FrameMap& o) const {
  if (descriptor() != o.descriptor() || rank() != o.rank())
    throw ShapeMismatch("frame maps have different shapes");
  if (is_polynomial() != o.is_polynomial())
    throw ShapeMismatch("cannot add a polynomial map to a tabulated map");
  if (!is_polynomial()) {
    if (!rule_->same_rule(*o.rule_))
      throw RuleMismatch("tabulated maps live on different rules");
    FrameMap out = *this;
    for (size_t q = 0; q < values_.size(); ++q) out.values_[q] = values_[q] + o.values_[q];
    return out;
  }
  std::vector<ModuleElement> coeffs;
  const size_t count = std::max(values_.size(), o.values_.size());
  coeffs.reserve(count);
  for (size_t d = 0; d < count; ++d)
    coeffs.push_back(coeff(static_cast<int>(d)) + o.coeff(static_cast<int>(d)));
  return FrameMap::polynomial(std::move(coeffs));
}

FrameMap FrameMap::times(Complex scalar) const {
  FrameMap out = *this;
  for (ModuleElement& v : out.values_) v = v * scalar;
  return out;
}

double max_coeff_deviation(const FrameMap& f, const FrameMap& g) {
  if (!f.is_polynomial() || !g.is_polynomial())
    throw ShapeMismatch("coefficient comparison needs polynomial maps");
  if (f.descriptor() != g.descriptor() || f.rank() != g.rank())
    throw ShapeMismatch("frame maps have different shapes");
  const int count = std::max(f.coeff_count(), g.coeff_count());
  double deviation = 0.0;
  for (int d = 0; d < count; ++d) {
    const ModuleElement diff = f.coeff(d) - g.coeff(d);
    for (int i = 0; i < diff.rank(); ++i)
      for (int j = 0; j < diff.descriptor().block_count(); ++j)
        deviation = std::max(deviation, diff.component(i).block(j).cwiseAbs().maxCoeff());
  }
  return deviation;
}

}  // namespace frames
