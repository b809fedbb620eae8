#include "frames/report.hpp"

namespace frames {

Json to_json(const FrameCertificate& c) {
  Json out = Json::object();
  if (c.claimed_lower) out["claimed_lower"] = *c.claimed_lower;
  if (c.claimed_upper) out["claimed_upper"] = *c.claimed_upper;
  out["optimal_lower"] = c.optimal_lower;
  out["optimal_upper"] = c.optimal_upper;
  out["lower_margin"] = c.lower_margin;
  out["upper_margin"] = c.upper_margin;
  out["verdict"] = to_string(c.verdict);
  if (c.witness) out["witness"] = vector_to_json(*c.witness);
  return out;
}

Json to_json(const DualCertificate& c) {
  Json out = Json::object();
  out["residual_norm"] = c.residual_norm;
  out["tol"] = c.tol;
  out["verdict"] = c.is_dual ? "dual" : "not_dual";
  if (!c.is_dual) out["residual"] = matrix_to_json(c.residual);
  return out;
}

Json to_json(const RieszDiagnostic& d) {
  Json out = Json::object();
  out["verdict"] = to_string(d.verdict);
  out["rank"] = d.rank;
  out["domain_dim"] = d.domain_dim;
  out["codomain_dim"] = d.codomain_dim;
  out["structural"] = d.structural;
  out["note"] = d.note;
  return out;
}

Json to_json(const DualDecomposition& d) {
  Json out = Json::object();
  out["null_part"] = frame_map_to_json(d.null_part);
  out["nullity_residual"] = d.nullity_residual;
  out["verdict"] = d.is_dual ? "dual" : "not_dual";
  return out;
}

Json to_json(const KOperatorChecks& c) {
  Json out = Json::object();
  out["synthesis_residual_max"] = c.synthesis_residual_max;
  out["sampled_norm"] = c.sampled_norm;
  out["representation_norm"] = c.representation_norm;
  out["norm_bound"] = c.norm_bound;
  out["nullity_ok"] = c.nullity_ok;
  out["bound_ok"] = c.bound_ok;
  return out;
}

Json to_json(const KernelSymmetryReport& r) {
  Json out = Json::object();
  out["max_deviation"] = r.max_deviation;
  out["witness"] = Json::object({{"omega", r.omega}, {"gamma", r.gamma}});
  return out;
}

Json to_json(const MinimalityReport& r) {
  Json out = Json::object();
  out["margin"] = r.margin;
  out["canonicity_gap"] = r.canonicity_gap;
  out["holds"] = r.holds;
  out["is_canonical"] = r.is_canonical;
  return out;
}

Json to_json(const SumFrameCertificate& c) {
  Json out = Json::object();
  out["hypothesis_residual"] = c.hypothesis_residual;
  out["guaranteed_lower"] = c.guaranteed_lower;
  out["guaranteed_upper"] = c.guaranteed_upper;
  out["optimal_lower"] = c.optimal_lower;
  out["optimal_upper"] = c.optimal_upper;
  out["lower_margin"] = c.lower_margin;
  out["lower_ok"] = c.lower_ok;
  out["upper_ok"] = c.upper_ok;
  return out;
}

Json to_json(const ScaledMapReport& r) {
  Json out = Json::object();
  out["claimed_bessel"] = r.claimed_bessel;
  out["actual_bessel"] = r.actual_bessel;
  out["bessel_ok"] = r.bessel_ok;
  out["unitary"] = r.unitary;
  if (r.unitary) out["unitary_residual"] = r.unitary_residual;
  out["central"] = r.central;
  if (r.central) {
    out["central_matrix_residual"] = r.central_matrix_residual;
    out["central_synthesis_residual"] = r.central_synthesis_residual;
  }
  return out;
}

Json to_json(const IdentityCheckReport& r) {
  Json out = Json::object();
  out["dual_residual"] = r.dual_residual;
  out["operator_residual"] = r.operator_residual;
  out["verdict"] = r.is_dual ? "dual" : "not_dual";
  return out;
}

}  // namespace frames
