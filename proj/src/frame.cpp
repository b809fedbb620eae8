#include "frames/frame.hpp"

#include <algorithm>
#include <cmath>

namespace frames {

std::string to_string(FrameVerdict v) {
  switch (v) {
    case FrameVerdict::Frame: return "frame";
    case FrameVerdict::BesselOnly: return "bessel_only";
    case FrameVerdict::NotBesselEvidence: return "not_bessel_evidence";
  }
  return "unknown";
}

std::string to_string(RieszVerdict v) {
  switch (v) {
    case RieszVerdict::RieszType: return "riesz_type";
    case RieszVerdict::NotRieszType: return "not_riesz_type";
    case RieszVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {
void require_evaluable(const FrameMap& f, const QuadratureRule& rule) {
  if (!f.evaluable_on(rule))
    throw RuleMismatch("frame map is tabulated on a different rule");
}
}  // namespace

ModuleOperator frame_operator(const FrameMap& f, const QuadratureRule& rule) {
  require_evaluable(f, rule);
  const int k = f.rank();
  ModuleOperator q = ModuleOperator::zero(f.descriptor(), k);
  for (int node = 0; node < rule.size(); ++node) {
    const ModuleElement sample = f.eval_node(rule, node);
    std::vector<AlgebraElement> entries;
    entries.reserve(static_cast<size_t>(k) * static_cast<size_t>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        entries.push_back(sample.component(i).adjoint() * sample.component(j));
    q = q + ModuleOperator(f.descriptor(), k, std::move(entries)) * Complex(rule.weight(node), 0.0);
  }
  return q;
}

L2Element analysis(const FrameMap& map, const ModuleElement& f, const QuadratureRule& rule) {
  require_evaluable(map, rule);
  if (map.descriptor() != f.descriptor() || map.rank() != f.rank())
    throw ShapeMismatch("analysis: map and element have different shapes");
  std::vector<AlgebraElement> samples;
  samples.reserve(static_cast<size_t>(rule.size()));
  for (int q = 0; q < rule.size(); ++q) samples.push_back(inner(f, map.eval_node(rule, q)));
  return L2Element(rule, std::move(samples));
}

ModuleElement synthesis(const FrameMap& map, const L2Element& phi) {
  require_evaluable(map, phi.rule());
  if (map.descriptor() != phi.sample(0).descriptor())
    throw ShapeMismatch("synthesis: map and coefficients disagree on the algebra");
  ModuleElement acc = ModuleElement::zero(map.descriptor(), map.rank());
  for (int q = 0; q < phi.rule().size(); ++q) {
    const ModuleElement weighted = left_act(phi.sample(q), map.eval_node(phi.rule(), q));
    acc = acc + weighted * Complex(phi.rule().weight(q), 0.0);
  }
  return acc;
}

ModuleElement reconstruct(const FrameMap& f_map, const FrameMap& g_map,
                          const ModuleElement& f, const QuadratureRule& rule) {
  return synthesis(f_map, analysis(g_map, f, rule));
}

std::pair<double, double> optimal_frame_bounds(const FrameMap& f, const QuadratureRule& rule) {
  const ModuleOperator q = frame_operator(f, rule);
  const std::vector<double> eigs = operator_hermitian_eigenvalues(q);
  return {eigs.front(), eigs.back()};
}

FrameCertificate verify_claimed_bounds(const FrameMap& f, double lower, double upper,
                                       const QuadratureRule& rule, double tol) {
  const ModuleOperator q = frame_operator(f, rule);
  const std::vector<double> eigs = operator_hermitian_eigenvalues(q);
  const int k = f.rank();

  FrameCertificate cert;
  cert.claimed_lower = lower;
  cert.claimed_upper = upper;
  cert.optimal_lower = eigs.front();
  cert.optimal_upper = eigs.back();

  const ModuleOperator lower_op =
      ModuleOperator::scalar(f.descriptor(), k, Complex(lower, 0.0));
  const ModuleOperator upper_op =
      ModuleOperator::scalar(f.descriptor(), k, Complex(upper, 0.0));
  const OrderReport lower_check = operator_order_leq(lower_op, q, tol);
  const OrderReport upper_check = operator_order_leq(q, upper_op, tol);
  cert.lower_margin = lower_check.margin;
  cert.upper_margin = upper_check.margin;

  if (!upper_check.holds) {
    cert.verdict = FrameVerdict::NotBesselEvidence;
    cert.witness = upper_check.witness;
  } else if (!lower_check.holds || lower <= tol) {
    cert.verdict = FrameVerdict::BesselOnly;
    if (!lower_check.holds) cert.witness = lower_check.witness;
  } else {
    cert.verdict = FrameVerdict::Frame;
  }
  return cert;
}

DualCertificate is_dual_pair(const FrameMap& f, const FrameMap& g, const QuadratureRule& rule,
                             double tol) {
  require_evaluable(f, rule);
  require_evaluable(g, rule);
  if (f.descriptor() != g.descriptor() || f.rank() != g.rank())
    throw ShapeMismatch("dual check: maps have different shapes");
  const int k = f.rank();
  ModuleOperator acc = ModuleOperator::zero(f.descriptor(), k);
  for (int node = 0; node < rule.size(); ++node) {
    const ModuleElement fs = f.eval_node(rule, node);
    const ModuleElement gs = g.eval_node(rule, node);
    std::vector<AlgebraElement> entries;
    entries.reserve(static_cast<size_t>(k) * static_cast<size_t>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        entries.push_back(gs.component(i).adjoint() * fs.component(j));
    acc = acc + ModuleOperator(f.descriptor(), k, std::move(entries)) * Complex(rule.weight(node), 0.0);
  }
  const ModuleOperator residual_op = acc - ModuleOperator::identity(f.descriptor(), k);
  DualCertificate cert;
  cert.residual = residual_op.flat();
  cert.residual_norm = operator_norm(residual_op);
  cert.tol = tol;
  cert.is_dual = cert.residual_norm <= tol;
  return cert;
}

FrameMap canonical_dual(const FrameMap& f, const QuadratureRule& rule, double tol) {
  const ModuleOperator q = frame_operator(f, rule);
  const std::vector<double> eigs = operator_hermitian_eigenvalues(q);
  if (eigs.front() <= tol * (1.0 + eigs.back()))
    throw NotAFrame("lower frame bound vanishes; no canonical dual");
  return f.applied(operator_inverse(q), OperatorSide::Right);
}

double bessel_bound(const FrameMap& f, const QuadratureRule& rule) {
  return optimal_frame_bounds(f, rule).second;
}

RieszDiagnostic riesz_type_diagnostic(const FrameMap& f, const QuadratureRule& rule,
                                      double tol) {
  {
    const std::vector<double> eigs =
        operator_hermitian_eigenvalues(frame_operator(f, rule));
    if (eigs.front() <= tol * (1.0 + eigs.back()))
      throw NotAFrame("riesz diagnostic needs a frame");
  }

  const AlgebraDescriptor& d = f.descriptor();
  const int k = f.rank();
  const int dim_a = d.complex_dim();
  RieszDiagnostic diag;
  diag.domain_dim = k * dim_a;
  diag.codomain_dim = rule.size() * dim_a;

  // Column c of the analysis matrix is the node-stacked image of the c-th
  // coordinate element of U.
  Matrix analysis_matrix = Matrix::Zero(diag.codomain_dim, diag.domain_dim);
  int col = 0;
  for (int comp = 0; comp < k; ++comp) {
    for (int j = 0; j < d.block_count(); ++j) {
      const int nj = d.block_size(j);
      for (int r = 0; r < nj; ++r) {
        for (int c = 0; c < nj; ++c) {
          std::vector<AlgebraElement> comps;
          comps.reserve(static_cast<size_t>(k));
          for (int i = 0; i < k; ++i) {
            AlgebraElement a = AlgebraElement::zero(d);
            if (i == comp) a.block(j)(r, c) = Complex(1.0, 0.0);
            comps.push_back(std::move(a));
          }
          const ModuleElement basis(d, std::move(comps));
          const L2Element image = analysis(f, basis, rule);
          int row = 0;
          for (int q = 0; q < rule.size(); ++q) {
            for (int jj = 0; jj < d.block_count(); ++jj) {
              const Matrix& blk = image.sample(q).block(jj);
              for (int rr = 0; rr < blk.rows(); ++rr)
                for (int cc = 0; cc < blk.cols(); ++cc)
                  analysis_matrix(row++, col) = blk(rr, cc);
            }
          }
          ++col;
        }
      }
    }
  }

  Eigen::JacobiSVD<Matrix> svd(analysis_matrix);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  const double cutoff = tol * std::max(sigma_max, 1.0);
  int rank = 0;
  bool ambiguous = false;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++rank;
    if (sigma(i) > cutoff * 0.1 && sigma(i) <= cutoff * 10.0) ambiguous = true;
  }
  diag.rank = rank;

  if (!rule.is_discrete()) {
    diag.verdict = RieszVerdict::NotRieszType;
    diag.structural = true;
    diag.note = "nonatomic measure: L2(Omega,A) is infinite-dimensional while U has complex dimension " +
                std::to_string(diag.domain_dim) + "; the analysis operator cannot be onto";
    return diag;
  }

  if (ambiguous) {
    diag.verdict = RieszVerdict::Inconclusive;
    diag.note = "singular values straddle the rank cutoff";
    return diag;
  }
  if (rank == diag.codomain_dim) {
    diag.verdict = RieszVerdict::RieszType;
    diag.note = "analysis operator is onto the sampled space";
  } else {
    diag.verdict = RieszVerdict::NotRieszType;
    diag.note = "analysis range has dimension " + std::to_string(rank) + " inside " +
                std::to_string(diag.codomain_dim);
  }
  return diag;
}

}  // namespace frames
