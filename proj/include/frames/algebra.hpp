#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "frames/errors.hpp"

namespace frames {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default tolerances used across the library. Every check that consumes one
/// of these accepts an explicit override.
struct Tolerances {
  double hermitian = 1e-10;      // relative slack for Hermitian-ness checks
  double positivity = 1e-10;     // relative slack in the C*-order
  double invertibility = 1e-12;  // relative singular-value cutoff for inverses
  double dual = 1e-9;            // absolute cutoff on dual-certificate residuals
  double centrality = 1e-12;     // relative deviation from blockwise-scalar form
};

/// Shape of the block-diagonal matrix algebra: an ordered list of block sizes.
/// A single block [n] is the full matrix algebra M_n; blocks [1,...,1] give a
/// commutative algebra.
class AlgebraDescriptor {
 public:
  explicit AlgebraDescriptor(std::vector<int> blocks);

  int block_count() const { return static_cast<int>(blocks_.size()); }
  int block_size(int j) const { return blocks_[static_cast<size_t>(j)]; }
  int block_offset(int j) const { return offsets_[static_cast<size_t>(j)]; }
  int dim() const { return dim_; }                  // ambient matrix dimension n
  int complex_dim() const { return complex_dim_; }  // sum of n_j^2
  const std::vector<int>& blocks() const { return blocks_; }

  bool operator==(const AlgebraDescriptor& o) const { return blocks_ == o.blocks_; }
  bool operator!=(const AlgebraDescriptor& o) const { return !(*this == o); }

 private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  int dim_ = 0;
  int complex_dim_ = 0;
};

/// An element of the block-diagonal C*-algebra. Storage is per block, so the
/// off-block entries are zero by construction rather than by zero testing.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraDescriptor descriptor, std::vector<Matrix> blocks);

  static AlgebraElement zero(const AlgebraDescriptor& d);
  static AlgebraElement identity(const AlgebraDescriptor& d);
  /// Scalar multiple of the identity.
  static AlgebraElement scalar(const AlgebraDescriptor& d, Complex value);
  /// Reject entries outside the block pattern larger than `tol * (1 + max|entry|)`.
  static AlgebraElement from_dense(const AlgebraDescriptor& d, const Matrix& dense,
                                   double tol = 0.0);

  const AlgebraDescriptor& descriptor() const { return descriptor_; }
  const Matrix& block(int j) const { return blocks_[static_cast<size_t>(j)]; }
  Matrix& block(int j) { return blocks_[static_cast<size_t>(j)]; }
  int block_count() const { return descriptor_.block_count(); }

  Matrix dense() const;
  AlgebraElement adjoint() const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement operator*(Complex scalar) const;
  AlgebraElement operator-() const { return *this * Complex(-1.0, 0.0); }

 private:
  AlgebraDescriptor descriptor_;
  std::vector<Matrix> blocks_;
};

inline AlgebraElement operator*(Complex s, const AlgebraElement& a) { return a * s; }

/// Outcome of an order comparison a <= b in the C*-order.
struct OrderReport {
  bool holds = false;
  double margin = 0.0;          // min eigenvalue of b - a
  double hermitian_defect = 0.0;
  Vector witness;               // eigenvector of the minimal eigenvalue when the order fails
};

/// C*-norm: largest singular value of the dense representative.
double op_norm(const AlgebraElement& a);

/// a <= b in the C*-order, i.e. b - a is Hermitian with spectrum >= -tol*(1+|b-a|).
OrderReport order_leq(const AlgebraElement& a, const AlgebraElement& b,
                      double tol = Tolerances{}.positivity);

/// Blockwise inverse. Throws SingularElement when the smallest singular value
/// falls at or below `tol_inv * |a|`.
AlgebraElement inverse(const AlgebraElement& a, double tol_inv = Tolerances{}.invertibility);

/// All n real eigenvalues, ascending. Throws NotHermitian when `a` is not
/// Hermitian within `tol * (1 + |a|)`.
std::vector<double> hermitian_eigenvalues(const AlgebraElement& a,
                                          double tol = Tolerances{}.hermitian);

/// True iff every diagonal block is a scalar multiple of the block identity,
/// which characterizes the center of the block algebra.
bool is_central(const AlgebraElement& a, double tol = Tolerances{}.centrality);

namespace detail {
// Dense Hermitian helpers shared by the algebra and operator layers.
double dense_op_norm(const Matrix& m);
double dense_min_singular_value(const Matrix& m);
OrderReport dense_order_leq(const Matrix& a, const Matrix& b, double tol);
std::vector<double> dense_hermitian_eigenvalues(const Matrix& m, double tol);
}  // namespace detail

}  // namespace frames
