#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace frames;
using fixtures::alg2;
using fixtures::elem2;

namespace {

const AlgebraDescriptor kD = fixtures::full2();
const QuadratureRule kRule = fixtures::example_rule();

FrameMap single_atom_identity() {
  const QuadratureRule rule = build_rule(DiscreteMeasure{{1.0}, {1.0}}, 0);
  return FrameMap::tabulated(rule, {ModuleElement(kD, {AlgebraElement::identity(kD)})});
}

}  // namespace

TEST_CASE("frame operator") {
  const FrameMap f = fixtures::example_f(kD);
  const ModuleOperator q = frame_operator(f, kRule);
  CHECK((q.flat() - alg2(kD, 5.0 / 3, 5.0 / 3, 5.0 / 3, 10.0 / 3).dense())
            .cwiseAbs()
            .maxCoeff() <= 1e-13);

  // Self-adjoint and positive.
  CHECK(operator_norm(q - q.adjoint()) <= 1e-14);
  CHECK(operator_order_leq(ModuleOperator::zero(kD, 1), q).holds);

  const QuadratureRule atom = build_rule(DiscreteMeasure{{1.0}, {1.0}}, 0);
  const ModuleOperator tight = frame_operator(single_atom_identity(), atom);
  CHECK(operator_norm(tight - ModuleOperator::identity(kD, 1)) <= 1e-15);

  const FrameMap zero = FrameMap::polynomial({ModuleElement::zero(kD, 1)});
  CHECK(operator_norm(frame_operator(zero, kRule)) == 0.0);
}

TEST_CASE("analysis samples the inner products") {
  const FrameMap f = fixtures::example_f(kD);
  const ModuleElement id(kD, {AlgebraElement::identity(kD)});
  const L2Element coeffs = analysis(f, id, kRule);
  for (int q = 0; q < kRule.size(); ++q) {
    const AlgebraElement expected = alg2(kD, 2, 1, 1, 3) * Complex(kRule.node(q), 0);
    CHECK(op_norm(coeffs.sample(q) - expected) <= 1e-14);
  }
  CHECK(l2_norm(analysis(f, ModuleElement::zero(kD, 1), kRule)) == 0.0);

  // <T*f, T*f> = <f Q, f>.
  std::mt19937_64 rng(41);
  const ModuleOperator q_op = frame_operator(f, kRule);
  for (int trial = 0; trial < 20; ++trial) {
    const ModuleElement g = random_module_element(kD, 1, rng);
    const AlgebraElement lhs = l2_inner(analysis(f, g, kRule), analysis(f, g, kRule));
    const AlgebraElement rhs = inner(apply_operator(q_op, g), g);
    CHECK(op_norm(lhs - rhs) <= 1e-12 * (1 + op_norm(rhs)));
  }
}

TEST_CASE("synthesis integrates coefficients against the map") {
  const FrameMap f = fixtures::example_f(kD);
  std::vector<AlgebraElement> ramp;
  for (int q = 0; q < kRule.size(); ++q)
    ramp.push_back(AlgebraElement::scalar(kD, Complex(kRule.node(q), 0)));
  const ModuleElement out = synthesis(f, L2Element(kRule, ramp));
  CHECK(op_norm(out.component(0) - alg2(kD, 2.0 / 3, 1.0 / 3, 1.0 / 3, 1.0)) <= 1e-14);

  std::vector<AlgebraElement> zeros(static_cast<size_t>(kRule.size()),
                                    AlgebraElement::zero(kD));
  CHECK(elem_norm(synthesis(f, L2Element(kRule, zeros))) == 0.0);

  // Adjointness of synthesis and analysis.
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<AlgebraElement> samples;
    for (int q = 0; q < kRule.size(); ++q) samples.push_back(random_algebra_element(kD, rng));
    const L2Element phi(kRule, samples);
    const ModuleElement g = random_module_element(kD, 1, rng);
    const AlgebraElement lhs = inner(synthesis(f, phi), g);
    const AlgebraElement rhs = l2_inner(phi, analysis(f, g, kRule));
    CHECK(op_norm(lhs - rhs) <= 1e-12 * (1 + op_norm(lhs)));
  }
}

TEST_CASE("optimal frame bounds") {
  const FrameMap f = fixtures::example_f(kD);
  const auto [lower, upper] = optimal_frame_bounds(f, kRule);
  const auto [expect_lo, expect_hi] = oracles::sym2_eigenvalues(5.0 / 3, 5.0 / 3, 10.0 / 3);
  CHECK(lower == doctest::Approx(expect_lo).epsilon(1e-12));
  CHECK(upper == doctest::Approx(expect_hi).epsilon(1e-12));

  const QuadratureRule atom = build_rule(DiscreteMeasure{{1.0}, {1.0}}, 0);
  const auto tight = optimal_frame_bounds(single_atom_identity(), atom);
  CHECK(tight.first == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tight.second == doctest::Approx(1.0).epsilon(1e-14));

  const FrameMap zero = FrameMap::polynomial({ModuleElement::zero(kD, 1)});
  const auto degenerate = optimal_frame_bounds(zero, kRule);
  CHECK(degenerate.first == 0.0);
  CHECK(degenerate.second == 0.0);
}

TEST_CASE("claimed bounds certification") {
  const FrameMap f = fixtures::example_f(kD);
  const auto [expect_lo, expect_hi] = oracles::sym2_eigenvalues(5.0 / 3, 5.0 / 3, 10.0 / 3);

  const FrameCertificate good = verify_claimed_bounds(f, 0.5, 4.5, kRule);
  CHECK(good.verdict == FrameVerdict::Frame);
  CHECK(good.lower_margin == doctest::Approx(expect_lo - 0.5).epsilon(1e-12));
  CHECK(good.upper_margin == doctest::Approx(4.5 - expect_hi).epsilon(1e-12));

  const FrameCertificate bad_lower = verify_claimed_bounds(f, 2.0 / 3, 4.5, kRule);
  CHECK(bad_lower.verdict == FrameVerdict::BesselOnly);
  REQUIRE(bad_lower.witness.has_value());
  const Matrix gap =
      frame_operator(f, kRule).flat() - (2.0 / 3) * Matrix::Identity(2, 2);
  CHECK((bad_lower.witness->adjoint() * gap * *bad_lower.witness)(0).real() < 0.0);

  const FrameCertificate bad_upper = verify_claimed_bounds(f, 0.5, 4.0, kRule);
  CHECK(bad_upper.verdict == FrameVerdict::NotBesselEvidence);

  // Optimal bounds pass with slack and fail when tightened beyond tolerance.
  const double eps = 1e-6;
  CHECK(verify_claimed_bounds(f, expect_lo - eps, expect_hi + eps, kRule).verdict ==
        FrameVerdict::Frame);
  CHECK(verify_claimed_bounds(f, expect_lo + eps, expect_hi - eps, kRule).verdict !=
        FrameVerdict::Frame);
  const FrameCertificate self = verify_claimed_bounds(f, expect_lo, expect_hi, kRule);
  CHECK(std::abs(self.lower_margin) <= 1e-10);
  CHECK(std::abs(self.upper_margin) <= 1e-10);
}

TEST_CASE("dual certificates") {
  const FrameMap f = fixtures::example_f(kD);
  const FrameMap g = fixtures::example_g(kD);
  CHECK(is_dual_pair(f, g, kRule).residual_norm <= 1e-12);
  CHECK(is_dual_pair(f, canonical_dual(f, kRule), kRule).residual_norm <= 1e-12);

  const DualCertificate doubled = is_dual_pair(f, g.times(Complex(2, 0)), kRule);
  CHECK_FALSE(doubled.is_dual);
  CHECK(doubled.residual_norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("canonical dual") {
  const FrameMap f = fixtures::example_f(kD);
  const FrameMap canonical = canonical_dual(f, kRule);
  const FrameMap expected =
      FrameMap::polynomial({elem2(kD, 0, 0, 0, 0), elem2(kD, 1.8, -0.6, -0.6, 1.2)});
  CHECK(max_coeff_deviation(canonical, expected) <= 1e-13);

  // Tight frame: Q = 4 I, canonical dual is F/4.
  const QuadratureRule atom = build_rule(DiscreteMeasure{{1.0}, {1.0}}, 0);
  const FrameMap tight = FrameMap::tabulated(
      atom, {ModuleElement(kD, {AlgebraElement::scalar(kD, 2.0)})});
  const FrameMap tight_dual = canonical_dual(tight, atom);
  CHECK(op_norm(tight_dual.eval(1.0).component(0) - AlgebraElement::scalar(kD, 0.5)) <= 1e-14);

  const FrameMap zero = FrameMap::polynomial({ModuleElement::zero(kD, 1)});
  CHECK_THROWS_AS(canonical_dual(zero, kRule), NotAFrame);
}

TEST_CASE("bessel bound") {
  const FrameMap f = fixtures::example_f(kD);
  const auto [expect_lo, expect_hi] = oracles::sym2_eigenvalues(5.0 / 3, 5.0 / 3, 10.0 / 3);
  CHECK(bessel_bound(f, kRule) == doctest::Approx(expect_hi).epsilon(1e-12));
  CHECK(bessel_bound(f.scaled_by(AlgebraElement::scalar(kD, 2.0)), kRule) ==
        doctest::Approx(4 * expect_hi).epsilon(1e-12));
  CHECK(bessel_bound(FrameMap::polynomial({ModuleElement::zero(kD, 1)}), kRule) == 0.0);
}

TEST_CASE("operator-norm facts of the frame operator") {
  const FrameMap f = fixtures::example_f(kD);
  const ModuleOperator q = frame_operator(f, kRule);
  const double upper = optimal_frame_bounds(f, kRule).second;
  CHECK(operator_norm(q) <= upper + 1e-12);

  // |T_F phi| <= sqrt(B) for unit phi.
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<AlgebraElement> samples;
    for (int nq = 0; nq < kRule.size(); ++nq)
      samples.push_back(random_algebra_element(kD, rng));
    L2Element phi(kRule, samples);
    const double phi_norm = l2_norm(phi);
    if (phi_norm < 1e-12) continue;
    phi = phi * Complex(1.0 / phi_norm, 0);
    CHECK(elem_norm(synthesis(f, phi)) <= std::sqrt(upper) + 1e-10);
  }
}

TEST_CASE("reconstruction with the canonical dual") {
  const FrameMap f = fixtures::example_f(kD);
  const FrameMap canonical = canonical_dual(f, kRule);
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const ModuleElement x = random_module_element(kD, 1, rng);
    const double scale = elem_norm(x);
    CHECK(elem_norm(reconstruct(f, canonical, x, kRule) - x) <= 1e-10 * scale);
    CHECK(elem_norm(reconstruct(canonical, f, x, kRule) - x) <= 1e-10 * scale);
  }
}

TEST_CASE("order form of the frame inequality") {
  const FrameMap f = fixtures::example_f(kD);
  const ModuleOperator q = frame_operator(f, kRule);
  const auto [lower, upper] = optimal_frame_bounds(f, kRule);
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    const ModuleElement x = random_module_element(kD, 1, rng);
    const AlgebraElement sandwich = inner(apply_operator(q, x), x);
    CHECK(order_leq(inner(x, x) * Complex(lower, 0), sandwich).holds);
    CHECK(order_leq(sandwich, inner(x, x) * Complex(upper, 0)).holds);
  }
}

TEST_CASE("rank-two module over a blocked algebra, end to end") {
  const AlgebraDescriptor d = fixtures::blocks21();
  const int k = 2;
  std::mt19937_64 rng(46);
  // Degree-1 map with random coefficients; three Gauss nodes make its frame
  // operator generically positive definite.
  const FrameMap f = FrameMap::polynomial(
      {random_module_element(d, k, rng), random_module_element(d, k, rng)});
  const QuadratureRule rule = fixtures::example_rule();

  const auto [lower, upper] = optimal_frame_bounds(f, rule);
  REQUIRE(lower > 1e-6);
  CHECK(verify_claimed_bounds(f, lower * 0.99, upper * 1.01, rule).verdict ==
        FrameVerdict::Frame);

  const FrameMap canonical = canonical_dual(f, rule);
  CHECK(is_dual_pair(f, canonical, rule).residual_norm <= 1e-11);
  for (int trial = 0; trial < 20; ++trial) {
    const ModuleElement x = random_module_element(d, k, rng);
    CHECK(elem_norm(reconstruct(f, canonical, x, rule) - x) <= 1e-9 * elem_norm(x));
  }
}

TEST_CASE("riesz-type diagnostic") {
  const QuadratureRule atom = build_rule(DiscreteMeasure{{1.0}, {1.0}}, 0);
  const RieszDiagnostic single = riesz_type_diagnostic(single_atom_identity(), atom);
  CHECK(single.verdict == RieszVerdict::RieszType);
  CHECK(single.rank == single.codomain_dim);

  const FrameMap f = fixtures::example_f(kD);
  const RieszDiagnostic interval = riesz_type_diagnostic(f, kRule);
  CHECK(interval.verdict == RieszVerdict::NotRieszType);
  CHECK(interval.structural);
  CHECK(interval.domain_dim == 4);

  // Two atoms carrying the same identity sample: range is the diagonal.
  const QuadratureRule atoms = build_rule(DiscreteMeasure{{1.0, 2.0}, {1.0, 1.0}}, 0);
  const ModuleElement id(kD, {AlgebraElement::identity(kD)});
  const FrameMap repeated = FrameMap::tabulated(atoms, {id, id});
  const RieszDiagnostic two = riesz_type_diagnostic(repeated, atoms);
  CHECK(two.verdict == RieszVerdict::NotRieszType);
  CHECK(two.rank == 4);
  CHECK(two.codomain_dim == 8);

  const FrameMap zero = FrameMap::polynomial({ModuleElement::zero(kD, 1)});
  CHECK_THROWS_AS(riesz_type_diagnostic(zero, kRule), NotAFrame);
}
