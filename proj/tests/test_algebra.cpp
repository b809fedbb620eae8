#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace frames;
using fixtures::alg2;

TEST_CASE("descriptor validation") {
  CHECK_THROWS_AS(AlgebraDescriptor({}), ShapeMismatch);
  CHECK_THROWS_AS(AlgebraDescriptor({2, 0}), ShapeMismatch);
  const AlgebraDescriptor d({2, 1});
  CHECK(d.dim() == 3);
  CHECK(d.complex_dim() == 5);
  CHECK(d.block_offset(1) == 2);
}

TEST_CASE("op_norm on reference elements") {
  const AlgebraDescriptor d = fixtures::full2();
  CHECK(op_norm(AlgebraElement::identity(d)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(op_norm(AlgebraElement::zero(d)) == 0.0);
  // F0 = [[2,1],[1,3]] has norm (5+sqrt5)/2.
  const double expected = oracles::sym2_norm(2, 1, 3);
  CHECK(expected == doctest::Approx((5.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));
  CHECK(op_norm(alg2(d, 2, 1, 1, 3)) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("order_leq certifies positivity with margins") {
  const AlgebraDescriptor d = fixtures::full2();
  const AlgebraElement q = alg2(d, 5.0 / 3, 5.0 / 3, 5.0 / 3, 10.0 / 3);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const AlgebraElement x = random_algebra_element(d, rng);
    CHECK(order_leq(AlgebraElement::zero(d), x.adjoint() * x).holds);
  }

  const auto [q_lo, q_hi] = oracles::sym2_eigenvalues(5.0 / 3, 5.0 / 3, 10.0 / 3);
  const OrderReport half = order_leq(AlgebraElement::scalar(d, 0.5), q);
  CHECK(half.holds);
  CHECK(half.margin == doctest::Approx(q_lo - 0.5).epsilon(1e-12));

  const OrderReport two_thirds = order_leq(AlgebraElement::scalar(d, 2.0 / 3), q);
  CHECK_FALSE(two_thirds.holds);
  CHECK(two_thirds.margin == doctest::Approx(q_lo - 2.0 / 3).epsilon(1e-10));
  REQUIRE(two_thirds.witness.size() == 2);
  // The witness realizes the violated inequality as a negative quadratic form.
  const Matrix gap = q.dense() - (2.0 / 3) * Matrix::Identity(2, 2);
  const Complex form = (two_thirds.witness.adjoint() * gap * two_thirds.witness)(0);
  CHECK(form.real() < 0.0);

  CHECK_THROWS_AS(order_leq(q, AlgebraElement::identity(fixtures::diag11())), ShapeMismatch);
}

TEST_CASE("mutual order forces equality") {
  const AlgebraDescriptor d = fixtures::full2();
  std::mt19937_64 rng(12);
  const AlgebraElement x = random_algebra_element(d, rng);
  const AlgebraElement h = x + x.adjoint();
  const AlgebraElement close = h + AlgebraElement::scalar(d, 1e-13);
  CHECK(order_leq(h, close).holds);
  CHECK(order_leq(close, h).holds);
  CHECK(op_norm(h - close) <= 2e-10 * (1.0 + op_norm(h)));

  const AlgebraElement far = h + AlgebraElement::scalar(d, 0.1);
  CHECK(order_leq(h, far).holds);
  CHECK_FALSE(order_leq(far, h).holds);
}

TEST_CASE("inverse matches the worked example") {
  const AlgebraDescriptor d = fixtures::full2();
  const AlgebraElement q = alg2(d, 5.0 / 3, 5.0 / 3, 5.0 / 3, 10.0 / 3);
  const AlgebraElement q_inv = inverse(q);
  CHECK(op_norm(q_inv - alg2(d, 1.2, -0.6, -0.6, 0.6)) <= 1e-14);
  CHECK(op_norm(q * q_inv - AlgebraElement::identity(d)) <= 1e-14);
  CHECK(op_norm(q_inv * q - AlgebraElement::identity(d)) <= 1e-14);

  CHECK(op_norm(inverse(AlgebraElement::identity(d)) - AlgebraElement::identity(d)) <= 1e-15);
  CHECK_THROWS_AS(inverse(alg2(d, 1, 1, 1, 1)), SingularElement);
}

TEST_CASE("hermitian_eigenvalues ascending per block") {
  const AlgebraDescriptor d = fixtures::full2();
  const std::vector<double> identity_eigs = hermitian_eigenvalues(AlgebraElement::identity(d));
  CHECK(identity_eigs == std::vector<double>{1.0, 1.0});

  const auto [lo, hi] = oracles::sym2_eigenvalues(5.0 / 3, 5.0 / 3, 10.0 / 3);
  const std::vector<double> q_eigs =
      hermitian_eigenvalues(alg2(d, 5.0 / 3, 5.0 / 3, 5.0 / 3, 10.0 / 3));
  CHECK(q_eigs[0] == doctest::Approx(lo).epsilon(1e-13));
  CHECK(q_eigs[1] == doctest::Approx(hi).epsilon(1e-13));

  const AlgebraDescriptor dd = fixtures::diag11();
  Matrix b1(1, 1), b2(1, 1);
  b1 << Complex(3, 0);
  b2 << Complex(2, 0);
  const std::vector<double> diag_eigs = hermitian_eigenvalues(AlgebraElement(dd, {b1, b2}));
  CHECK(diag_eigs == std::vector<double>{2.0, 3.0});

  CHECK_THROWS_AS(hermitian_eigenvalues(alg2(d, 0, 1, 0, 0)), NotHermitian);
}

TEST_CASE("centrality characterizes blockwise scalars") {
  const AlgebraDescriptor dd = fixtures::diag11();
  Matrix b1(1, 1), b2(1, 1);
  b1 << Complex(2, 0);
  b2 << Complex(3, 0);
  CHECK(is_central(AlgebraElement(dd, {b1, b2})));

  const AlgebraDescriptor d = fixtures::full2();
  CHECK_FALSE(is_central(alg2(d, 2, 0, 0, 3)));
  CHECK(is_central(AlgebraElement::scalar(d, 5.0)));

  // Central elements commute with everything.
  const AlgebraDescriptor d21 = fixtures::blocks21();
  Matrix c1(2, 2), c2(1, 1);
  c1 = Complex(4, 1) * Matrix::Identity(2, 2);
  c2 << Complex(-2, 0.5);
  const AlgebraElement central(d21, {c1, c2});
  REQUIRE(is_central(central));
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const AlgebraElement b = random_algebra_element(d21, rng);
    CHECK(op_norm(central * b - b * central) <= 1e-12 * op_norm(central) * op_norm(b));
  }
}

TEST_CASE("involution and C*-identity") {
  const AlgebraDescriptor d = fixtures::blocks21();
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const AlgebraElement a = random_algebra_element(d, rng);
    const AlgebraElement b = random_algebra_element(d, rng);
    // (a*)* = a exactly.
    CHECK(op_norm(a.adjoint().adjoint() - a) == 0.0);
    // (ab)* = b* a*.
    CHECK(op_norm((a * b).adjoint() - b.adjoint() * a.adjoint()) <=
          1e-12 * op_norm(a) * op_norm(b));
    // |a* a| = |a|^2.
    const double lhs = op_norm(a.adjoint() * a);
    const double rhs = op_norm(a) * op_norm(a);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
  }
}

TEST_CASE("block pattern is rejected, not zeroed") {
  const AlgebraDescriptor d = fixtures::diag11();
  Matrix dense = Matrix::Zero(2, 2);
  dense(0, 1) = Complex(0.5, 0);
  CHECK_THROWS_AS(AlgebraElement::from_dense(d, dense, 1e-12), BlockPatternViolation);
  dense(0, 1) = Complex(0, 0);
  CHECK_NOTHROW(AlgebraElement::from_dense(d, dense, 0.0));
}
