#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "frames/frame.hpp"

namespace frames {

using Json = nlohmann::ordered_json;

/// A fully validated problem: one algebra, one module rank, one measure with
/// its quadrature rule, and named maps / operators / elements / scalars that
/// all live over that algebra.
struct ProblemFile {
  AlgebraDescriptor algebra;
  int rank = 1;
  MeasureSpace measure;
  QuadratureRule rule;
  std::map<std::string, FrameMap> maps;
  std::map<std::string, ModuleOperator> operators;
  std::map<std::string, AlgebraElement> elements;
  std::map<std::string, Complex> scalars;

  const FrameMap& map(const std::string& name) const;
  const ModuleOperator& op(const std::string& name) const;
  const AlgebraElement& element(const std::string& name) const;
  Complex scalar(const std::string& name) const;
};

/// Parse and validate a problem file. Rejects instead of guessing: malformed
/// JSON raises ParseError, schema violations SchemaError, dense matrices with
/// entries off the block pattern BlockPatternViolation.
ProblemFile parse_problem_file(const std::string& path);
ProblemFile parse_problem_json(const Json& doc);

// JSON encoders shared by reports and coefficient dumps. Complex numbers are
// [re, im]; algebra elements are arrays of row-major blocks.
Json complex_to_json(Complex z);
Json matrix_to_json(const Matrix& m);
Json algebra_to_json(const AlgebraElement& a);
Json module_element_to_json(const ModuleElement& f);
Json operator_to_json(const ModuleOperator& x);
Json frame_map_to_json(const FrameMap& f);
Json vector_to_json(const Vector& v);

// Decoders (used by the parser and by tests that re-ingest dumps).
AlgebraElement algebra_from_json(const AlgebraDescriptor& d, const Json& j);
ModuleElement module_element_from_json(const AlgebraDescriptor& d, int rank, const Json& j);
ModuleOperator operator_from_json(const AlgebraDescriptor& d, int rank, const Json& j);

}  // namespace frames
