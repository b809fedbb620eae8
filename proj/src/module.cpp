#include "frames/module.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frames {

ModuleElement::ModuleElement(AlgebraDescriptor descriptor,
                             std::vector<AlgebraElement> components)
    : descriptor_(std::move(descriptor)), components_(std::move(components)) {
  if (components_.empty()) throw ShapeMismatch("module element needs rank >= 1");
  for (const AlgebraElement& c : components_)
    if (c.descriptor() != descriptor_)
      throw ShapeMismatch("module element components disagree on the algebra");
}

ModuleElement ModuleElement::zero(const AlgebraDescriptor& d, int rank) {
  if (rank < 1) throw ShapeMismatch("module rank must be >= 1");
  std::vector<AlgebraElement> comps(static_cast<size_t>(rank), AlgebraElement::zero(d));
  return ModuleElement(d, std::move(comps));
}

Matrix ModuleElement::flat() const {
  const int n = descriptor_.dim();
  Matrix out = Matrix::Zero(n, static_cast<Eigen::Index>(rank()) * n);
  for (int i = 0; i < rank(); ++i) out.block(0, i * n, n, n) = components_[static_cast<size_t>(i)].dense();
  return out;
}

namespace {
void require_same_shape(const ModuleElement& f, const ModuleElement& g) {
  if (f.descriptor() != g.descriptor() || f.rank() != g.rank())
    throw ShapeMismatch("module elements have different shapes");
}
}  // namespace

ModuleElement ModuleElement::operator+(const ModuleElement& o) const {
  require_same_shape(*this, o);
  std::vector<AlgebraElement> comps;
  comps.reserve(components_.size());
  for (size_t i = 0; i < components_.size(); ++i) comps.push_back(components_[i] + o.components_[i]);
  return ModuleElement(descriptor_, std::move(comps));
}

ModuleElement ModuleElement::operator-(const ModuleElement& o) const {
  require_same_shape(*this, o);
  std::vector<AlgebraElement> comps;
  comps.reserve(components_.size());
  for (size_t i = 0; i < components_.size(); ++i) comps.push_back(components_[i] - o.components_[i]);
  return ModuleElement(descriptor_, std::move(comps));
}

ModuleElement ModuleElement::operator*(Complex scalar) const {
  std::vector<AlgebraElement> comps;
  comps.reserve(components_.size());
  for (const AlgebraElement& c : components_) comps.push_back(c * scalar);
  return ModuleElement(descriptor_, std::move(comps));
}

AlgebraElement inner(const ModuleElement& f, const ModuleElement& g) {
  require_same_shape(f, g);
  AlgebraElement acc = AlgebraElement::zero(f.descriptor());
  for (int i = 0; i < f.rank(); ++i) acc = acc + f.component(i) * g.component(i).adjoint();
  return acc;
}

ModuleElement left_act(const AlgebraElement& a, const ModuleElement& f) {
  if (a.descriptor() != f.descriptor())
    throw ShapeMismatch("algebra element and module element disagree on the algebra");
  std::vector<AlgebraElement> comps;
  comps.reserve(static_cast<size_t>(f.rank()));
  for (int i = 0; i < f.rank(); ++i) comps.push_back(a * f.component(i));
  return ModuleElement(f.descriptor(), std::move(comps));
}

double elem_norm(const ModuleElement& f) { return std::sqrt(op_norm(inner(f, f))); }

ModuleOperator::ModuleOperator(AlgebraDescriptor descriptor, int rank,
                               std::vector<AlgebraElement> entries)
    : descriptor_(std::move(descriptor)), rank_(rank), entries_(std::move(entries)) {
  if (rank_ < 1) throw ShapeMismatch("module operator rank must be >= 1");
  if (static_cast<int>(entries_.size()) != rank_ * rank_)
    throw ShapeMismatch("module operator needs rank^2 algebra entries");
  for (const AlgebraElement& e : entries_)
    if (e.descriptor() != descriptor_)
      throw ShapeMismatch("module operator entries disagree on the algebra");
}

ModuleOperator ModuleOperator::zero(const AlgebraDescriptor& d, int rank) {
  std::vector<AlgebraElement> entries(static_cast<size_t>(rank) * static_cast<size_t>(rank),
                                      AlgebraElement::zero(d));
  return ModuleOperator(d, rank, std::move(entries));
}

ModuleOperator ModuleOperator::identity(const AlgebraDescriptor& d, int rank) {
  return scalar(d, rank, Complex(1.0, 0.0));
}

ModuleOperator ModuleOperator::scalar(const AlgebraDescriptor& d, int rank, Complex value) {
  ModuleOperator out = zero(d, rank);
  for (int i = 0; i < rank; ++i)
    out.entries_[static_cast<size_t>(i * rank + i)] = AlgebraElement::scalar(d, value);
  return out;
}

ModuleOperator ModuleOperator::from_flat(const AlgebraDescriptor& d, int rank,
                                         const Matrix& flat, double tol) {
  const int n = d.dim();
  if (flat.rows() != static_cast<Eigen::Index>(rank) * n ||
      flat.cols() != static_cast<Eigen::Index>(rank) * n)
    throw ShapeMismatch("flat operator matrix has the wrong size");
  std::vector<AlgebraElement> entries;
  entries.reserve(static_cast<size_t>(rank) * static_cast<size_t>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      entries.push_back(AlgebraElement::from_dense(d, flat.block(i * n, j * n, n, n), tol));
  return ModuleOperator(d, rank, std::move(entries));
}

Matrix ModuleOperator::flat() const {
  const int n = descriptor_.dim();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(rank_) * n,
                            static_cast<Eigen::Index>(rank_) * n);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out.block(i * n, j * n, n, n) = entry(i, j).dense();
  return out;
}

ModuleOperator ModuleOperator::adjoint() const {
  std::vector<AlgebraElement> entries;
  entries.reserve(entries_.size());
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) entries.push_back(entry(j, i).adjoint());
  return ModuleOperator(descriptor_, rank_, std::move(entries));
}

namespace {
void require_same_shape(const ModuleOperator& a, const ModuleOperator& b) {
  if (a.descriptor() != b.descriptor() || a.rank() != b.rank())
    throw ShapeMismatch("module operators have different shapes");
}
}  // namespace

ModuleOperator ModuleOperator::operator+(const ModuleOperator& o) const {
  require_same_shape(*this, o);
  std::vector<AlgebraElement> entries;
  entries.reserve(entries_.size());
  for (size_t e = 0; e < entries_.size(); ++e) entries.push_back(entries_[e] + o.entries_[e]);
  return ModuleOperator(descriptor_, rank_, std::move(entries));
}

ModuleOperator ModuleOperator::operator-(const ModuleOperator& o) const {
  require_same_shape(*this, o);
  std::vector<AlgebraElement> entries;
  entries.reserve(entries_.size());
  for (size_t e = 0; e < entries_.size(); ++e) entries.push_back(entries_[e] - o.entries_[e]);
  return ModuleOperator(descriptor_, rank_, std::move(entries));
}

ModuleOperator ModuleOperator::operator*(const ModuleOperator& o) const {
  require_same_shape(*this, o);
  ModuleOperator out = zero(descriptor_, rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      AlgebraElement acc = AlgebraElement::zero(descriptor_);
      for (int l = 0; l < rank_; ++l) acc = acc + entry(i, l) * o.entry(l, j);
      out.entries_[static_cast<size_t>(i * rank_ + j)] = acc;
    }
  return out;
}

ModuleOperator ModuleOperator::operator*(Complex scalar) const {
  std::vector<AlgebraElement> entries;
  entries.reserve(entries_.size());
  for (const AlgebraElement& e : entries_) entries.push_back(e * scalar);
  return ModuleOperator(descriptor_, rank_, std::move(entries));
}

ModuleOperator ModuleOperator::pow(int exponent) const {
  if (exponent < 0) throw ShapeMismatch("operator power wants exponent >= 0");
  ModuleOperator acc = identity(descriptor_, rank_);
  for (int e = 0; e < exponent; ++e) acc = acc * (*this);
  return acc;
}

ModuleElement apply_operator(const ModuleOperator& t, const ModuleElement& f,
                             OperatorSide side) {
  if (t.descriptor() != f.descriptor() || t.rank() != f.rank())
    throw ShapeMismatch("operator and module element have different shapes");
  const int k = t.rank();
  std::vector<AlgebraElement> comps(static_cast<size_t>(k),
                                    AlgebraElement::zero(t.descriptor()));
  for (int out = 0; out < k; ++out) {
    AlgebraElement acc = AlgebraElement::zero(t.descriptor());
    for (int in = 0; in < k; ++in) {
      if (side == OperatorSide::Right)
        acc = acc + f.component(in) * t.entry(in, out);
      else
        acc = acc + t.entry(out, in) * f.component(in);
    }
    comps[static_cast<size_t>(out)] = acc;
  }
  return ModuleElement(t.descriptor(), std::move(comps));
}

ModuleOperator operator_adjoint(const ModuleOperator& t) { return t.adjoint(); }

namespace {

// M_k(A) splits along the algebra blocks: collecting the j-th block of every
// entry gives one (k n_j) x (k n_j) complex matrix per j. Spectral and inverse
// computations happen on these collected blocks, which keeps the pattern exact.
Matrix collect_block(const ModuleOperator& t, int j) {
  const int k = t.rank();
  const int nj = t.descriptor().block_size(j);
  Matrix c(static_cast<Eigen::Index>(k) * nj, static_cast<Eigen::Index>(k) * nj);
  for (int i1 = 0; i1 < k; ++i1)
    for (int i2 = 0; i2 < k; ++i2) c.block(i1 * nj, i2 * nj, nj, nj) = t.entry(i1, i2).block(j);
  return c;
}

void scatter_block(int k, int nj, int j, const Matrix& c,
                   std::vector<std::vector<Matrix>>& entry_blocks) {
  for (int i1 = 0; i1 < k; ++i1)
    for (int i2 = 0; i2 < k; ++i2)
      entry_blocks[static_cast<size_t>(i1 * k + i2)][static_cast<size_t>(j)] =
          c.block(i1 * nj, i2 * nj, nj, nj);
}

}  // namespace

double operator_norm(const ModuleOperator& t) {
  double norm = 0.0;
  for (int j = 0; j < t.descriptor().block_count(); ++j)
    norm = std::max(norm, detail::dense_op_norm(collect_block(t, j)));
  return norm;
}

double operator_norm_bound_check(const ModuleOperator& t) {
  const double n = operator_norm(t);
  return n * n;
}

ModuleOperator operator_inverse(const ModuleOperator& t, double tol_inv) {
  const AlgebraDescriptor& d = t.descriptor();
  const int k = t.rank();
  double sigma_max = 0.0;
  double sigma_min = std::numeric_limits<double>::infinity();
  std::vector<Matrix> collected;
  collected.reserve(static_cast<size_t>(d.block_count()));
  for (int j = 0; j < d.block_count(); ++j) {
    collected.push_back(collect_block(t, j));
    Eigen::JacobiSVD<Matrix> svd(collected.back());
    sigma_max = std::max(sigma_max, svd.singularValues()(0));
    sigma_min = std::min(sigma_min, svd.singularValues()(svd.singularValues().size() - 1));
  }
  if (sigma_min <= tol_inv * sigma_max)
    throw SingularElement("operator matrix is numerically singular");

  std::vector<std::vector<Matrix>> entry_blocks(
      static_cast<size_t>(k) * static_cast<size_t>(k),
      std::vector<Matrix>(static_cast<size_t>(d.block_count())));
  for (int j = 0; j < d.block_count(); ++j) {
    Matrix inv = collected[static_cast<size_t>(j)].partialPivLu().inverse();
    scatter_block(k, d.block_size(j), j, inv, entry_blocks);
  }
  std::vector<AlgebraElement> entries;
  entries.reserve(entry_blocks.size());
  for (auto& blocks : entry_blocks) entries.push_back(AlgebraElement(d, std::move(blocks)));
  return ModuleOperator(d, k, std::move(entries));
}

std::vector<double> operator_hermitian_eigenvalues(const ModuleOperator& t, double tol) {
  const double scale = 1.0 + operator_norm(t);
  std::vector<double> eigs;
  for (int j = 0; j < t.descriptor().block_count(); ++j) {
    const Matrix c = collect_block(t, j);
    if ((c - c.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
      throw NotHermitian("operator matrix is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + Matrix(c.adjoint())));
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      eigs.push_back(es.eigenvalues()(i));
  }
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

OrderReport operator_order_leq(const ModuleOperator& a, const ModuleOperator& b, double tol) {
  require_same_shape(a, b);
  const ModuleOperator diff = b - a;
  const AlgebraDescriptor& d = a.descriptor();
  const int k = a.rank();
  const int n = d.dim();

  OrderReport report;
  double diff_norm = 0.0;
  std::vector<Matrix> collected;
  collected.reserve(static_cast<size_t>(d.block_count()));
  for (int j = 0; j < d.block_count(); ++j) {
    collected.push_back(collect_block(diff, j));
    const Matrix& c = collected.back();
    report.hermitian_defect =
        std::max(report.hermitian_defect, (c - c.adjoint()).cwiseAbs().maxCoeff());
    diff_norm = std::max(diff_norm, detail::dense_op_norm(c));
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
  for (int j = 0; j < d.block_count(); ++j) {
    const Matrix& c = collected[static_cast<size_t>(j)];
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + Matrix(c.adjoint())));
    if (es.eigenvalues()(0) < report.margin) {
      report.margin = es.eigenvalues()(0);
      worst_block = j;
      worst_vec = es.eigenvectors().col(0);
    }
  }
  report.holds = report.margin >= -tol * scale;
  if (!report.holds) {
    // The collected coordinates are (component i, row r within block j);
    // re-embed them at flat index i*n + offset_j + r.
    const int nj = d.block_size(worst_block);
    report.witness = Vector::Zero(static_cast<Eigen::Index>(k) * n);
    for (int i = 0; i < k; ++i)
      report.witness.segment(i * n + d.block_offset(worst_block), nj) =
          worst_vec.segment(i * nj, nj);
  }
  return report;
}

}  // namespace frames
