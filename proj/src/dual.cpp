#include "frames/dual.hpp"

#include <algorithm>
#include <cmath>

namespace frames {

namespace {

void require_dual(const FrameMap& f, const FrameMap& g, const QuadratureRule& rule,
                  double tol, const char* who) {
  const DualCertificate cert = is_dual_pair(f, g, rule, tol);
  if (!cert.is_dual)
    throw NotADual(std::string(who) + ": input failed dual certification, residual " +
                   std::to_string(cert.residual_norm));
}

ModuleOperator frame_operator_checked(const FrameMap& f, const QuadratureRule& rule,
                                      double tol) {
  const ModuleOperator q = frame_operator(f, rule);
  const std::vector<double> eigs = operator_hermitian_eigenvalues(q);
  if (eigs.front() <= tol * (1.0 + eigs.back())) throw NotAFrame("map is not a frame");
  return q;
}

// Integral of F^*(omega) L(omega) as a module operator matrix.
ModuleOperator cross_moment(const FrameMap& f, const FrameMap& l, const QuadratureRule& rule) {
  const int k = f.rank();
  ModuleOperator acc = ModuleOperator::zero(f.descriptor(), k);
  for (int node = 0; node < rule.size(); ++node) {
    const ModuleElement fs = f.eval_node(rule, node);
    const ModuleElement ls = l.eval_node(rule, node);
    std::vector<AlgebraElement> entries;
    entries.reserve(static_cast<size_t>(k) * static_cast<size_t>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        entries.push_back(fs.component(i).adjoint() * ls.component(j));
    acc = acc +
          ModuleOperator(f.descriptor(), k, std::move(entries)) * Complex(rule.weight(node), 0.0);
  }
  return acc;
}

}  // namespace

FrameMap dual_sequence_step(const FrameMap& f, const FrameMap& g_i, const QuadratureRule& rule,
                            OperatorSide side, double tol) {
  require_dual(f, g_i, rule, tol, "dual_sequence_step");
  const ModuleOperator q = frame_operator_checked(f, rule, Tolerances{}.positivity);
  const ModuleOperator q_inv = operator_inverse(q);
  const FrameMap next =
      f.applied(q_inv, side).plus(g_i.applied(q, side)).plus(f.times(Complex(-1.0, 0.0)));
  const DualCertificate cert = is_dual_pair(f, next, rule, tol);
  if (!cert.is_dual)
    throw NotADual("dual_sequence_step: constructed map failed certification, residual " +
                   std::to_string(cert.residual_norm));
  return next;
}

FrameMap dual_sequence_closed(const FrameMap& f, const FrameMap& g, int i,
                              const QuadratureRule& rule, OperatorSide side, double tol) {
  if (i < 1) throw ShapeMismatch("dual_sequence_closed wants i >= 1");
  require_dual(f, g, rule, tol, "dual_sequence_closed");
  const ModuleOperator q = frame_operator_checked(f, rule, Tolerances{}.positivity);
  const ModuleOperator q_inv = operator_inverse(q);
  // S^{i+1}G - S^{i}F = S^i (S G - F), pointwise on the chosen side.
  const FrameMap correction =
      g.applied(q, side).plus(f.times(Complex(-1.0, 0.0))).applied(q.pow(i), side);
  const FrameMap result = f.applied(q_inv, side).plus(correction);
  const DualCertificate cert = is_dual_pair(f, result, rule, tol);
  if (!cert.is_dual)
    throw NotADual("dual_sequence_closed: constructed map failed certification, residual " +
                   std::to_string(cert.residual_norm));
  return result;
}

DualDecomposition dual_decompose(const FrameMap& f, const FrameMap& g,
                                 const QuadratureRule& rule, double tol) {
  const FrameMap canonical = canonical_dual(f, rule);
  const FrameMap l = g.plus(canonical.times(Complex(-1.0, 0.0)));
  DualDecomposition out{l, 0.0, false};
  out.nullity_residual = operator_norm(cross_moment(f, l, rule));
  out.is_dual = out.nullity_residual <= tol;
  return out;
}

std::vector<FrameMap> null_bessel_family(const FrameMap& f, int degree,
                                         const QuadratureRule& rule, double tol) {
  if (degree < 0) throw ShapeMismatch("null family degree must be >= 0");
  frame_operator_checked(f, rule, Tolerances{}.positivity);

  const AlgebraDescriptor& d = f.descriptor();
  const int k = f.rank();
  const int dim_a = d.complex_dim();
  const int coeff_dim = k * dim_a;                 // complex dims per polynomial coefficient
  const int unknowns = (degree + 1) * coeff_dim;   // all coefficients of L
  const int constraint_dim = k * k * dim_a;        // entries of the moment matrix

  // Unknown-to-constraint matrix: column c is the moment matrix of the basis
  // map with a single unit entry in one coefficient.
  Matrix system = Matrix::Zero(constraint_dim, unknowns);
  int col = 0;
  for (int deg = 0; deg <= degree; ++deg) {
    for (int comp = 0; comp < k; ++comp) {
      for (int j = 0; j < d.block_count(); ++j) {
        const int nj = d.block_size(j);
        for (int r = 0; r < nj; ++r) {
          for (int c = 0; c < nj; ++c) {
            std::vector<ModuleElement> coeffs(static_cast<size_t>(deg) + 1,
                                              ModuleElement::zero(d, k));
            {
              std::vector<AlgebraElement> comps;
              comps.reserve(static_cast<size_t>(k));
              for (int i = 0; i < k; ++i) {
                AlgebraElement a = AlgebraElement::zero(d);
                if (i == comp) a.block(j)(r, c) = Complex(1.0, 0.0);
                comps.push_back(std::move(a));
              }
              coeffs[static_cast<size_t>(deg)] = ModuleElement(d, std::move(comps));
            }
            const ModuleOperator moment =
                cross_moment(f, FrameMap::polynomial(std::move(coeffs)), rule);
            int row = 0;
            for (int i1 = 0; i1 < k; ++i1)
              for (int i2 = 0; i2 < k; ++i2)
                for (int jj = 0; jj < d.block_count(); ++jj) {
                  const Matrix& blk = moment.entry(i1, i2).block(jj);
                  for (int rr = 0; rr < blk.rows(); ++rr)
                    for (int cc = 0; cc < blk.cols(); ++cc)
                      system(row++, col) = blk(rr, cc);
                }
            ++col;
          }
        }
      }
    }
  }

  // Null space via SVD: right singular vectors with negligible singular value.
  Eigen::JacobiSVD<Matrix> svd(system, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  const double cutoff = tol * std::max(sigma_max, 1.0);
  std::vector<FrameMap> basis;
  for (Eigen::Index v = 0; v < svd.matrixV().cols(); ++v) {
    const bool in_kernel =
        v >= sigma.size() || sigma(v) <= cutoff;
    if (!in_kernel) continue;
    const Vector vec = svd.matrixV().col(v);
    std::vector<ModuleElement> coeffs;
    coeffs.reserve(static_cast<size_t>(degree) + 1);
    int idx = 0;
    for (int deg = 0; deg <= degree; ++deg) {
      std::vector<AlgebraElement> comps;
      comps.reserve(static_cast<size_t>(k));
      for (int comp = 0; comp < k; ++comp) {
        AlgebraElement a = AlgebraElement::zero(d);
        for (int j = 0; j < d.block_count(); ++j) {
          const int nj = d.block_size(j);
          for (int r = 0; r < nj; ++r)
            for (int c = 0; c < nj; ++c) a.block(j)(r, c) = vec(idx++);
        }
        comps.push_back(std::move(a));
      }
      coeffs.push_back(ModuleElement(d, std::move(comps)));
    }
    basis.push_back(FrameMap::polynomial(std::move(coeffs)));
  }
  return basis;
}

KOperator::KOperator(FrameMap difference, QuadratureRule rule)
    : difference_(std::move(difference)), rule_(std::move(rule)) {}

L2Element KOperator::apply(const ModuleElement& f) const {
  return analysis(difference_, f, rule_);
}

std::pair<KOperator, KOperatorChecks> k_operator_from_dual(const FrameMap& f,
                                                           const FrameMap& g,
                                                           const QuadratureRule& rule,
                                                           double tol, int samples,
                                                           unsigned seed) {
  require_dual(f, g, rule, tol, "k_operator_from_dual");
  const DualDecomposition decomposition = dual_decompose(f, g, rule, tol);
  KOperator k_op(decomposition.null_part, rule);

  KOperatorChecks checks;
  checks.nullity_ok = decomposition.is_dual;

  const auto [lower, upper] = optimal_frame_bounds(f, rule);
  const double bessel_g = bessel_bound(g, rule);
  checks.norm_bound = std::sqrt(bessel_g) + 1.0 / std::sqrt(lower);

  // |integral of L^* L|^(1/2) dominates |Kf| over unit f.
  const ModuleOperator q_l = frame_operator(decomposition.null_part, rule);
  checks.representation_norm = std::sqrt(operator_norm(q_l));

  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const ModuleElement x = random_module_element(f.descriptor(), f.rank(), rng);
    const double norm_x = elem_norm(x);
    if (norm_x < 1e-12) continue;
    const ModuleElement unit = x * Complex(1.0 / norm_x, 0.0);
    const L2Element image = k_op.apply(unit);
    checks.sampled_norm = std::max(checks.sampled_norm, l2_norm(image));
    const double synth_residual = elem_norm(synthesis(f, image));
    checks.synthesis_residual_max = std::max(checks.synthesis_residual_max, synth_residual);
  }
  checks.bound_ok = checks.sampled_norm <= checks.norm_bound + 1e-9 &&
                    checks.representation_norm <= checks.norm_bound + 1e-9;
  return {std::move(k_op), checks};
}

FrameMap dual_from_k_operator(const FrameMap& f, const FrameMap& l, const QuadratureRule& rule,
                              double tol) {
  const double residual = operator_norm(cross_moment(f, l, rule));
  if (residual > tol)
    throw NullityViolated("difference map fails the moment condition, residual " +
                          std::to_string(residual));
  return canonical_dual(f, rule).plus(l);
}

KernelSymmetryReport kernel_symmetry_check(const FrameMap& f, const FrameMap& g,
                                           std::span<const double> grid) {
  if (f.descriptor() != g.descriptor() || f.rank() != g.rank())
    throw ShapeMismatch("kernel symmetry: maps have different shapes");
  KernelSymmetryReport report;
  for (double omega : grid) {
    const ModuleElement f_omega = f.eval(omega);
    const ModuleElement g_omega = g.eval(omega);
    for (double gamma : grid) {
      const ModuleElement f_gamma = f.eval(gamma);
      const ModuleElement g_gamma = g.eval(gamma);
      const double deviation =
          op_norm(inner(f_omega, g_gamma) - inner(g_omega, f_gamma));
      if (deviation > report.max_deviation) {
        report.max_deviation = deviation;
        report.omega = omega;
        report.gamma = gamma;
      }
    }
  }
  return report;
}

MinimalityReport minimality_check(const FrameMap& f, const FrameMap& d,
                                  const QuadratureRule& rule, double tol) {
  require_dual(f, d, rule, tol, "minimality_check");
  // For a certified dual the cross terms in Q_D - Q^{-1} vanish, leaving the
  // Gram integral of the difference map L = D - S^{-1}F. Its extreme
  // eigenvalues are squared singular values of the node-stacked samples of L,
  // which keeps the margin exact where the direct difference would cancel.
  const FrameMap canonical = canonical_dual(f, rule);
  const FrameMap l = d.plus(canonical.times(Complex(-1.0, 0.0)));

  const AlgebraDescriptor& desc = f.descriptor();
  const int k = f.rank();
  MinimalityReport report;
  report.margin = std::numeric_limits<double>::infinity();
  report.canonicity_gap = 0.0;
  for (int j = 0; j < desc.block_count(); ++j) {
    const int nj = desc.block_size(j);
    Matrix stacked(static_cast<Eigen::Index>(rule.size()) * nj,
                   static_cast<Eigen::Index>(k) * nj);
    for (int node = 0; node < rule.size(); ++node) {
      const ModuleElement sample = l.eval_node(rule, node);
      const double scale = std::sqrt(rule.weight(node));
      for (int i = 0; i < k; ++i)
        stacked.block(node * nj, i * nj, nj, nj) = scale * sample.component(i).block(j);
    }
    Eigen::JacobiSVD<Matrix> svd(stacked);
    const auto& sigma = svd.singularValues();
    const double smallest = sigma.size() < static_cast<Eigen::Index>(k) * nj
                                ? 0.0
                                : sigma(sigma.size() - 1);
    report.margin = std::min(report.margin, smallest * smallest);
    report.canonicity_gap = std::max(report.canonicity_gap, sigma(0) * sigma(0));
  }
  report.holds = report.margin >= -tol;
  report.is_canonical = report.canonicity_gap <= tol;
  return report;
}

AlgebraElement random_algebra_element(const AlgebraDescriptor& d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(d.block_count()));
  for (int j = 0; j < d.block_count(); ++j) {
    Matrix m(d.block_size(j), d.block_size(j));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
    blocks.push_back(std::move(m));
  }
  return AlgebraElement(d, std::move(blocks));
}

ModuleElement random_module_element(const AlgebraDescriptor& d, int rank,
                                    std::mt19937_64& rng) {
  std::vector<AlgebraElement> comps;
  comps.reserve(static_cast<size_t>(rank));
  for (int i = 0; i < rank; ++i) comps.push_back(random_algebra_element(d, rng));
  return ModuleElement(d, std::move(comps));
}

ModuleOperator random_module_operator(const AlgebraDescriptor& d, int rank,
                                      std::mt19937_64& rng) {
  std::vector<AlgebraElement> entries;
  entries.reserve(static_cast<size_t>(rank) * static_cast<size_t>(rank));
  for (int e = 0; e < rank * rank; ++e) entries.push_back(random_algebra_element(d, rng));
  return ModuleOperator(d, rank, std::move(entries));
}

}  // namespace frames
