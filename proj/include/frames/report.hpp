#pragma once

#include "frames/dual.hpp"
#include "frames/problem.hpp"
#include "frames/sum.hpp"

namespace frames {

// JSON report fragments for certificates. Field order is fixed so that
// serialized reports are byte-stable across runs.
Json to_json(const FrameCertificate& c);
Json to_json(const DualCertificate& c);
Json to_json(const RieszDiagnostic& d);
Json to_json(const DualDecomposition& d);
Json to_json(const KOperatorChecks& c);
Json to_json(const KernelSymmetryReport& r);
Json to_json(const MinimalityReport& r);
Json to_json(const SumFrameCertificate& c);
Json to_json(const ScaledMapReport& r);
Json to_json(const IdentityCheckReport& r);

}  // namespace frames
