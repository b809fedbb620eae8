#pragma once

#include <vector>

#include "frames/algebra.hpp"

namespace frames {

/// An element of the free Hilbert module U = A^k, stored as k algebra
/// components (f_1, ..., f_k). The flattened form is the n x (k n) block row
/// [f_1 ... f_k].
class ModuleElement {
 public:
  ModuleElement(AlgebraDescriptor descriptor, std::vector<AlgebraElement> components);

  static ModuleElement zero(const AlgebraDescriptor& d, int rank);

  const AlgebraDescriptor& descriptor() const { return descriptor_; }
  int rank() const { return static_cast<int>(components_.size()); }
  const AlgebraElement& component(int i) const { return components_[static_cast<size_t>(i)]; }

  Matrix flat() const;  // n x (k n)

  ModuleElement operator+(const ModuleElement& o) const;
  ModuleElement operator-(const ModuleElement& o) const;
  ModuleElement operator*(Complex scalar) const;
  ModuleElement operator-() const { return *this * Complex(-1.0, 0.0); }

 private:
  AlgebraDescriptor descriptor_;
  std::vector<AlgebraElement> components_;
};

inline ModuleElement operator*(Complex s, const ModuleElement& f) { return f * s; }

/// A-valued inner product <f,g> = sum_i f_i g_i^*.
AlgebraElement inner(const ModuleElement& f, const ModuleElement& g);

/// Left module action a.f = (a f_1, ..., a f_k).
ModuleElement left_act(const AlgebraElement& a, const ModuleElement& f);

/// |f| = |<f,f>|^(1/2), the largest singular value of the flattened row.
double elem_norm(const ModuleElement& f);

/// An adjointable A-linear operator on U = A^k, represented as right
/// multiplication of the flattened row by a (k n) x (k n) matrix whose n x n
/// blocks all lie in the algebra. Entries are stored row-major as a k x k grid
/// of algebra elements, so membership of each block in A is structural.
class ModuleOperator {
 public:
  ModuleOperator(AlgebraDescriptor descriptor, int rank, std::vector<AlgebraElement> entries);

  static ModuleOperator zero(const AlgebraDescriptor& d, int rank);
  static ModuleOperator identity(const AlgebraDescriptor& d, int rank);
  static ModuleOperator scalar(const AlgebraDescriptor& d, int rank, Complex value);
  static ModuleOperator from_flat(const AlgebraDescriptor& d, int rank, const Matrix& flat,
                                  double tol = 0.0);

  const AlgebraDescriptor& descriptor() const { return descriptor_; }
  int rank() const { return rank_; }
  const AlgebraElement& entry(int i, int j) const {
    return entries_[static_cast<size_t>(i * rank_ + j)];
  }

  Matrix flat() const;  // (k n) x (k n)

  ModuleOperator adjoint() const;
  ModuleOperator operator+(const ModuleOperator& o) const;
  ModuleOperator operator-(const ModuleOperator& o) const;
  ModuleOperator operator*(const ModuleOperator& o) const;  // matrix product
  ModuleOperator operator*(Complex scalar) const;
  ModuleOperator pow(int exponent) const;  // exponent >= 0

 private:
  AlgebraDescriptor descriptor_;
  int rank_;
  std::vector<AlgebraElement> entries_;
};

inline ModuleOperator operator*(Complex s, const ModuleOperator& x) { return x * s; }

/// Which side a pointwise operator application acts on. `Right` is the
/// representation-faithful action f -> flat(f) X; `Left` multiplies component
/// columns from the left and exists to reproduce computations that apply the
/// frame-operator matrix from the left.
enum class OperatorSide { Right, Left };

ModuleElement apply_operator(const ModuleOperator& t, const ModuleElement& f,
                             OperatorSide side = OperatorSide::Right);

ModuleOperator operator_adjoint(const ModuleOperator& t);

/// Smallest k with <Tf,Tf> <= k <f,f> for all f, namely |X|^2.
double operator_norm_bound_check(const ModuleOperator& t);

/// Operator norm |X| of the flattened matrix.
double operator_norm(const ModuleOperator& t);

/// Inverse inside M_k(A). Throws SingularElement below the cutoff.
ModuleOperator operator_inverse(const ModuleOperator& t,
                                double tol_inv = Tolerances{}.invertibility);

/// Eigenvalues of a Hermitian operator matrix, ascending over the whole
/// (k n)-dimensional space. Throws NotHermitian.
std::vector<double> operator_hermitian_eigenvalues(const ModuleOperator& t,
                                                   double tol = Tolerances{}.hermitian);

/// C*-order comparison of Hermitian operator matrices.
OrderReport operator_order_leq(const ModuleOperator& a, const ModuleOperator& b,
                               double tol = Tolerances{}.positivity);

}  // namespace frames
