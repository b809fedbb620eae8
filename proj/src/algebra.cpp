#include "frames/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace frames {

AlgebraDescriptor::AlgebraDescriptor(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ShapeMismatch("algebra descriptor needs at least one block");
  offsets_.reserve(blocks_.size());
  for (int b : blocks_) {
    if (b < 1) throw ShapeMismatch("algebra block sizes must be positive");
    offsets_.push_back(dim_);
    dim_ += b;
    complex_dim_ += b * b;
  }
}

AlgebraElement::AlgebraElement(AlgebraDescriptor descriptor, std::vector<Matrix> blocks)
    : descriptor_(std::move(descriptor)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != descriptor_.block_count())
    throw ShapeMismatch("algebra element: wrong number of blocks");
  for (int j = 0; j < descriptor_.block_count(); ++j) {
    const int nj = descriptor_.block_size(j);
    if (blocks_[static_cast<size_t>(j)].rows() != nj ||
        blocks_[static_cast<size_t>(j)].cols() != nj)
      throw ShapeMismatch("algebra element: block size disagrees with descriptor");
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraDescriptor& d) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(d.block_count()));
  for (int j = 0; j < d.block_count(); ++j)
    blocks.push_back(Matrix::Zero(d.block_size(j), d.block_size(j)));
  return AlgebraElement(d, std::move(blocks));
}

AlgebraElement AlgebraElement::identity(const AlgebraDescriptor& d) {
  return scalar(d, Complex(1.0, 0.0));
}

AlgebraElement AlgebraElement::scalar(const AlgebraDescriptor& d, Complex value) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(d.block_count()));
  for (int j = 0; j < d.block_count(); ++j)
    blocks.push_back(value * Matrix::Identity(d.block_size(j), d.block_size(j)));
  return AlgebraElement(d, std::move(blocks));
}

AlgebraElement AlgebraElement::from_dense(const AlgebraDescriptor& d, const Matrix& dense,
                                          double tol) {
  if (dense.rows() != d.dim() || dense.cols() != d.dim())
    throw ShapeMismatch("dense matrix does not match algebra dimension");
  const double scale = 1.0 + dense.cwiseAbs().maxCoeff();
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(d.block_count()));
  for (int j = 0; j < d.block_count(); ++j) {
    const int off = d.block_offset(j), nj = d.block_size(j);
    blocks.push_back(dense.block(off, off, nj, nj));
  }
  // Check the complement of the block pattern.
  Matrix rebuilt = Matrix::Zero(d.dim(), d.dim());
  for (int j = 0; j < d.block_count(); ++j) {
    const int off = d.block_offset(j), nj = d.block_size(j);
    rebuilt.block(off, off, nj, nj) = blocks[static_cast<size_t>(j)];
  }
  const double off_pattern = (dense - rebuilt).cwiseAbs().maxCoeff();
  if (off_pattern > tol * scale) {
    std::ostringstream msg;
    msg << "entry of magnitude " << off_pattern << " outside the block pattern";
    throw BlockPatternViolation(msg.str());
  }
  return AlgebraElement(d, std::move(blocks));
}

Matrix AlgebraElement::dense() const {
  Matrix out = Matrix::Zero(descriptor_.dim(), descriptor_.dim());
  for (int j = 0; j < descriptor_.block_count(); ++j) {
    const int off = descriptor_.block_offset(j), nj = descriptor_.block_size(j);
    out.block(off, off, nj, nj) = blocks_[static_cast<size_t>(j)];
  }
  return out;
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const Matrix& b : blocks_) blocks.push_back(b.adjoint());
  return AlgebraElement(descriptor_, std::move(blocks));
}

namespace {
void require_same_descriptor(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.descriptor() != b.descriptor())
    throw ShapeMismatch("algebra elements live in different algebras");
}
}  // namespace

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  require_same_descriptor(*this, o);
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (size_t j = 0; j < blocks_.size(); ++j) blocks.push_back(blocks_[j] + o.blocks_[j]);
  return AlgebraElement(descriptor_, std::move(blocks));
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  require_same_descriptor(*this, o);
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (size_t j = 0; j < blocks_.size(); ++j) blocks.push_back(blocks_[j] - o.blocks_[j]);
  return AlgebraElement(descriptor_, std::move(blocks));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  require_same_descriptor(*this, o);
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (size_t j = 0; j < blocks_.size(); ++j) blocks.push_back(blocks_[j] * o.blocks_[j]);
  return AlgebraElement(descriptor_, std::move(blocks));
}

AlgebraElement AlgebraElement::operator*(Complex scalar) const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const Matrix& b : blocks_) blocks.push_back(scalar * b);
  return AlgebraElement(descriptor_, std::move(blocks));
}

namespace detail {

double dense_op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double dense_min_singular_value(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

OrderReport dense_order_leq(const Matrix& a, const Matrix& b, double tol) {
  const Matrix diff = b - a;
  OrderReport report;
  report.hermitian_defect = (diff - diff.adjoint()).cwiseAbs().maxCoeff();
  const double scale = 1.0 + dense_op_norm(diff);
  if (report.hermitian_defect > tol * scale) {
    report.holds = false;
    report.margin = -report.hermitian_defect;
    return report;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + Matrix(diff.adjoint())));
  report.margin = es.eigenvalues()(0);
  report.holds = report.margin >= -tol * scale;
  if (!report.holds) report.witness = es.eigenvectors().col(0);
  return report;
}

std::vector<double> dense_hermitian_eigenvalues(const Matrix& m, double tol) {
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > tol * (1.0 + dense_op_norm(m)))
    throw NotHermitian("matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + Matrix(m.adjoint())));
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

double op_norm(const AlgebraElement& a) {
  double norm = 0.0;
  for (int j = 0; j < a.block_count(); ++j)
    norm = std::max(norm, detail::dense_op_norm(a.block(j)));
  return norm;
}

OrderReport order_leq(const AlgebraElement& a, const AlgebraElement& b, double tol) {
  require_same_descriptor(a, b);
  const AlgebraDescriptor& d = a.descriptor();
  const AlgebraElement diff = b - a;

  OrderReport report;
  double diff_norm = 0.0;
  for (int j = 0; j < diff.block_count(); ++j) {
    const Matrix& m = diff.block(j);
    report.hermitian_defect =
        std::max(report.hermitian_defect, (m - m.adjoint()).cwiseAbs().maxCoeff());
    diff_norm = std::max(diff_norm, detail::dense_op_norm(m));
  }
  const double scale = 1.0 + diff_norm;
  if (report.hermitian_defect > tol * scale) {
    report.holds = false;
    report.margin = -report.hermitian_defect;
    return report;
  }

  report.margin = std::numeric_limits<double>::infinity();
  int worst_block = 0;
  Vector worst_vec;
  for (int j = 0; j < diff.block_count(); ++j) {
    const Matrix& m = diff.block(j);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + Matrix(m.adjoint())));
    if (es.eigenvalues()(0) < report.margin) {
      report.margin = es.eigenvalues()(0);
      worst_block = j;
      worst_vec = es.eigenvectors().col(0);
    }
  }
  report.holds = report.margin >= -tol * scale;
  if (!report.holds) {
    // Embed the block eigenvector into the ambient space.
    report.witness = Vector::Zero(d.dim());
    report.witness.segment(d.block_offset(worst_block), d.block_size(worst_block)) = worst_vec;
  }
  return report;
}

AlgebraElement inverse(const AlgebraElement& a, double tol_inv) {
  double sigma_max = 0.0;
  double sigma_min = std::numeric_limits<double>::infinity();
  std::vector<Matrix> inverses;
  inverses.reserve(static_cast<size_t>(a.block_count()));
  for (int j = 0; j < a.block_count(); ++j) {
    Eigen::JacobiSVD<Matrix> svd(a.block(j));
    sigma_max = std::max(sigma_max, svd.singularValues()(0));
    sigma_min = std::min(sigma_min, svd.singularValues()(svd.singularValues().size() - 1));
  }
  if (sigma_min <= tol_inv * sigma_max)
    throw SingularElement("smallest singular value below invertibility cutoff");
  for (int j = 0; j < a.block_count(); ++j)
    inverses.push_back(a.block(j).partialPivLu().inverse());
  return AlgebraElement(a.descriptor(), std::move(inverses));
}

std::vector<double> hermitian_eigenvalues(const AlgebraElement& a, double tol) {
  const double scale = 1.0 + op_norm(a);
  std::vector<double> eigs;
  eigs.reserve(static_cast<size_t>(a.descriptor().dim()));
  for (int j = 0; j < a.block_count(); ++j) {
    const Matrix& m = a.block(j);
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
      throw NotHermitian("algebra element is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + Matrix(m.adjoint())));
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      eigs.push_back(es.eigenvalues()(i));
  }
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

bool is_central(const AlgebraElement& a, double tol) {
  const double scale = 1.0 + op_norm(a);
  for (int j = 0; j < a.block_count(); ++j) {
    const Matrix& m = a.block(j);
    const Complex mean = m.trace() / static_cast<double>(m.rows());
    const Matrix deviation = m - mean * Matrix::Identity(m.rows(), m.cols());
    if (deviation.cwiseAbs().maxCoeff() > tol * scale) return false;
  }
  return true;
}

}  // namespace frames
