#include "frames/problem.hpp"

#include <algorithm>
#include <fstream>

namespace frames {

const FrameMap& ProblemFile::map(const std::string& name) const {
  auto it = maps.find(name);
  if (it == maps.end()) throw NamedObjectMissing("no map named '" + name + "' in problem file");
  return it->second;
}

const ModuleOperator& ProblemFile::op(const std::string& name) const {
  auto it = operators.find(name);
  if (it == operators.end())
    throw NamedObjectMissing("no operator named '" + name + "' in problem file");
  return it->second;
}

const AlgebraElement& ProblemFile::element(const std::string& name) const {
  auto it = elements.find(name);
  if (it == elements.end())
    throw NamedObjectMissing("no element named '" + name + "' in problem file");
  return it->second;
}

Complex ProblemFile::scalar(const std::string& name) const {
  auto it = scalars.find(name);
  if (it == scalars.end())
    throw NamedObjectMissing("no scalar named '" + name + "' in problem file");
  return it->second;
}

namespace {

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw SchemaError("complex number must be a number or an [re, im] pair");
}

Matrix block_from_json(const Json& j, int expected) {
  if (!j.is_array() || static_cast<int>(j.size()) != expected)
    throw SchemaError("matrix block must be an array of " + std::to_string(expected) + " rows");
  Matrix m(expected, expected);
  for (int r = 0; r < expected; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != expected)
      throw SchemaError("matrix row must have " + std::to_string(expected) + " entries");
    for (int c = 0; c < expected; ++c) m(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
  }
  return m;
}

Matrix dense_from_json(const Json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw SchemaError("dense matrix must have " + std::to_string(n) + " rows");
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw SchemaError("dense matrix row must have " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) m(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
  }
  return m;
}

}  // namespace

AlgebraElement algebra_from_json(const AlgebraDescriptor& d, const Json& j) {
  if (j.is_object()) {
    if (!j.contains("dense"))
      throw SchemaError("algebra element object form needs a 'dense' field");
    return AlgebraElement::from_dense(d, dense_from_json(j.at("dense"), d.dim()), 0.0);
  }
  if (!j.is_array() || static_cast<int>(j.size()) != d.block_count())
    throw SchemaError("algebra element must list one matrix per block (" +
                      std::to_string(d.block_count()) + " blocks)");
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(d.block_count()));
  for (int b = 0; b < d.block_count(); ++b)
    blocks.push_back(block_from_json(j[static_cast<size_t>(b)], d.block_size(b)));
  return AlgebraElement(d, std::move(blocks));
}

ModuleElement module_element_from_json(const AlgebraDescriptor& d, int rank, const Json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank)
    throw SchemaError("module element must list " + std::to_string(rank) + " components");
  std::vector<AlgebraElement> comps;
  comps.reserve(static_cast<size_t>(rank));
  for (int i = 0; i < rank; ++i) comps.push_back(algebra_from_json(d, j[static_cast<size_t>(i)]));
  return ModuleElement(d, std::move(comps));
}

ModuleOperator operator_from_json(const AlgebraDescriptor& d, int rank, const Json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank)
    throw SchemaError("operator must be a " + std::to_string(rank) + " x " +
                      std::to_string(rank) + " grid of algebra elements");
  std::vector<AlgebraElement> entries;
  entries.reserve(static_cast<size_t>(rank) * static_cast<size_t>(rank));
  for (int i = 0; i < rank; ++i) {
    const Json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != rank)
      throw SchemaError("operator row must have " + std::to_string(rank) + " entries");
    for (int c = 0; c < rank; ++c) entries.push_back(algebra_from_json(d, row[static_cast<size_t>(c)]));
  }
  return ModuleOperator(d, rank, std::move(entries));
}

namespace {

MeasureSpace measure_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) throw SchemaError("measure needs a 'type' field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "interval") {
    IntervalMeasure m;
    if (!j.contains("a") || !j.contains("b")) throw SchemaError("interval measure needs a and b");
    m.a = j.at("a").get<double>();
    m.b = j.at("b").get<double>();
    if (j.contains("weight")) {
      m.weight.clear();
      for (const Json& c : j.at("weight")) m.weight.push_back(c.get<double>());
      if (m.weight.empty()) throw SchemaError("weight polynomial needs coefficients");
    }
    if (!(m.a < m.b)) throw SchemaError("interval measure needs a < b");
    return m;
  }
  if (type == "discrete") {
    DiscreteMeasure m;
    if (!j.contains("points") || !j.contains("masses"))
      throw SchemaError("discrete measure needs points and masses");
    for (const Json& p : j.at("points")) m.points.push_back(p.get<double>());
    for (const Json& w : j.at("masses")) m.masses.push_back(w.get<double>());
    if (m.points.size() != m.masses.size())
      throw SchemaError("discrete measure: points and masses differ in length");
    if (m.points.empty()) throw SchemaError("discrete measure needs at least one point");
    for (double w : m.masses)
      if (!(w > 0.0)) throw SchemaError("discrete measure masses must be positive");
    return m;
  }
  throw SchemaError("unknown measure type '" + type + "'");
}

}  // namespace

ProblemFile parse_problem_json(const Json& doc) {
  if (!doc.is_object()) throw SchemaError("problem file must be a JSON object");
  if (!doc.contains("algebra") || !doc.at("algebra").contains("blocks"))
    throw SchemaError("problem file needs algebra.blocks");
  std::vector<int> blocks;
  for (const Json& b : doc.at("algebra").at("blocks")) {
    if (!b.is_number_integer() || b.get<int>() < 1)
      throw SchemaError("algebra blocks must be positive integers");
    blocks.push_back(b.get<int>());
  }

  AlgebraDescriptor descriptor{blocks};
  const int rank = doc.contains("rank") ? doc.at("rank").get<int>() : 1;
  if (rank < 1) throw SchemaError("rank must be >= 1");
  if (!doc.contains("measure")) throw SchemaError("problem file needs a measure");
  MeasureSpace measure = measure_from_json(doc.at("measure"));

  // The default rule degree 2 d_F + 2 makes every paired-map integral exact.
  int max_poly_degree = 0;
  bool has_tabulated = false;
  if (doc.contains("maps")) {
    for (const auto& [name, body] : doc.at("maps").items()) {
      if (!body.is_object() || !body.contains("type"))
        throw SchemaError("map '" + name + "' needs a type");
      const std::string type = body.at("type").get<std::string>();
      if (type == "polynomial") {
        if (!body.contains("coeffs") || !body.at("coeffs").is_array() ||
            body.at("coeffs").empty())
          throw SchemaError("polynomial map '" + name + "' needs coefficients");
        max_poly_degree =
            std::max(max_poly_degree, static_cast<int>(body.at("coeffs").size()) - 1);
      } else if (type == "tabulated") {
        has_tabulated = true;
      } else {
        throw SchemaError("map '" + name + "' has unknown type '" + type + "'");
      }
    }
  }

  int target_degree = 2 * max_poly_degree + 2;
  if (doc.contains("quadrature_degree")) {
    target_degree = doc.at("quadrature_degree").get<int>();
    if (target_degree < 0) throw SchemaError("quadrature_degree must be >= 0");
  } else if (has_tabulated && !std::holds_alternative<DiscreteMeasure>(measure)) {
    throw SchemaError("tabulated maps over an interval need an explicit quadrature_degree");
  }

  QuadratureRule rule = build_rule(measure, target_degree);

  ProblemFile problem{std::move(descriptor), rank, std::move(measure), std::move(rule),
                      {},                    {},   {},                 {}};

  if (doc.contains("maps")) {
    for (const auto& [name, body] : doc.at("maps").items()) {
      const std::string type = body.at("type").get<std::string>();
      if (type == "polynomial") {
        std::vector<ModuleElement> coeffs;
        for (const Json& c : body.at("coeffs"))
          coeffs.push_back(module_element_from_json(problem.algebra, rank, c));
        problem.maps.emplace(name, FrameMap::polynomial(std::move(coeffs)));
      } else {
        const Json& samples_json = body.at("samples");
        if (!samples_json.is_array() ||
            static_cast<int>(samples_json.size()) != problem.rule.size())
          throw SchemaError("tabulated map '" + name + "' needs one sample per node (" +
                            std::to_string(problem.rule.size()) + ")");
        std::vector<ModuleElement> samples;
        for (const Json& s : samples_json)
          samples.push_back(module_element_from_json(problem.algebra, rank, s));
        problem.maps.emplace(name, FrameMap::tabulated(problem.rule, std::move(samples)));
      }
    }
  }
  if (doc.contains("operators"))
    for (const auto& [name, body] : doc.at("operators").items())
      problem.operators.emplace(name, operator_from_json(problem.algebra, rank, body));
  if (doc.contains("elements"))
    for (const auto& [name, body] : doc.at("elements").items())
      problem.elements.emplace(name, algebra_from_json(problem.algebra, body));
  if (doc.contains("scalars"))
    for (const auto& [name, body] : doc.at("scalars").items())
      problem.scalars.emplace(name, complex_from_json(body));
  return problem;
}

ProblemFile parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file: " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse_problem_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed problem file: ") + e.what());
  }
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json algebra_to_json(const AlgebraElement& a) {
  Json blocks = Json::array();
  for (int j = 0; j < a.block_count(); ++j) blocks.push_back(matrix_to_json(a.block(j)));
  return blocks;
}

Json module_element_to_json(const ModuleElement& f) {
  Json comps = Json::array();
  for (int i = 0; i < f.rank(); ++i) comps.push_back(algebra_to_json(f.component(i)));
  return comps;
}

Json operator_to_json(const ModuleOperator& x) {
  Json rows = Json::array();
  for (int i = 0; i < x.rank(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < x.rank(); ++j) row.push_back(algebra_to_json(x.entry(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json frame_map_to_json(const FrameMap& f) {
  Json out = Json::object();
  if (f.is_polynomial()) {
    out["type"] = "polynomial";
    Json coeffs = Json::array();
    for (int d = 0; d < f.coeff_count(); ++d) coeffs.push_back(module_element_to_json(f.coeff(d)));
    out["coeffs"] = std::move(coeffs);
  } else {
    out["type"] = "tabulated";
    const QuadratureRule& rule = *f.tab_rule();
    Json nodes = Json::array();
    Json samples = Json::array();
    for (int q = 0; q < rule.size(); ++q) {
      nodes.push_back(rule.node(q));
      samples.push_back(module_element_to_json(f.eval_node(rule, q)));
    }
    out["nodes"] = std::move(nodes);
    out["samples"] = std::move(samples);
  }
  return out;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

}  // namespace frames
