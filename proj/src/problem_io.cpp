#include "cspline/problem_io.hpp"

#include <fstream>

namespace cspline {

using nlohmann::json;

namespace {

Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where, "expected a complex scalar [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Matrix parse_block(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(where, "expected a " + std::to_string(n) + "x" + std::to_string(n) +
                                " block, got " + std::to_string(j.is_array() ? j.size() : 0) +
                                " rows");
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(where + ".row[" + std::to_string(r) + "]",
                       "expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c)
      m(r, c) = parse_complex(row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

AlgebraElement parse_element(const json& j, const AlgebraSpec& spec, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != spec.num_blocks())
    throw ParseError(where, "expected " + std::to_string(spec.num_blocks()) + " blocks");
  std::vector<Matrix> blocks;
  blocks.reserve(spec.num_blocks());
  for (int k = 0; k < spec.num_blocks(); ++k)
    blocks.push_back(parse_block(j[k], spec.block_sizes[k], where + ".block[" + std::to_string(k) + "]"));
  return {spec, std::move(blocks)};
}

ModuleVector parse_vector(const json& j, const ModuleSpace& space, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != space.rank)
    throw ParseError(where, "expected " + std::to_string(space.rank) + " entries");
  std::vector<AlgebraElement> entries;
  entries.reserve(space.rank);
  for (int i = 0; i < space.rank; ++i)
    entries.push_back(parse_element(j[i], space.spec, where + "[" + std::to_string(i) + "]"));
  return {space, std::move(entries)};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json element_to_json(const AlgebraElement& a) {
  json blocks = json::array();
  for (const Matrix& blk : a.blocks) {
    json rows = json::array();
    for (long r = 0; r < blk.rows(); ++r) {
      json row = json::array();
      for (long c = 0; c < blk.cols(); ++c) row.push_back(complex_to_json(blk(r, c)));
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return blocks;
}

}  // namespace

ParsedProblem parse_problem(const json& doc) {
  if (!doc.is_object()) throw ParseError("$", "problem file must be a JSON object");
  if (!doc.contains("algebra") || !doc["algebra"].is_object() ||
      !doc["algebra"].contains("blocks"))
    throw ParseError("algebra.blocks", "missing algebra block sizes");
  AlgebraSpec spec;
  for (const json& b : doc["algebra"]["blocks"]) {
    if (!b.is_number_integer() || b.get<int>() < 1)
      throw ParseError("algebra.blocks", "block sizes must be positive integers");
    spec.block_sizes.push_back(b.get<int>());
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    throw ParseError("algebra.blocks", e.what());
  }

  if (!doc.contains("module_rank") || !doc["module_rank"].is_number_integer() ||
      doc["module_rank"].get<int>() < 1)
    throw ParseError("module_rank", "missing or non-positive module rank");
  ModuleSpace space{spec, doc["module_rank"].get<int>()};

  if (!doc.contains("T") || !doc["T"].is_array() ||
      static_cast<int>(doc["T"].size()) != space.rank)
    throw ParseError("T", "expected an " + std::to_string(space.rank) + "x" +
                              std::to_string(space.rank) + " operator matrix");
  std::vector<std::vector<AlgebraElement>> entries;
  for (int i = 0; i < space.rank; ++i) {
    const json& row = doc["T"][i];
    if (!row.is_array() || static_cast<int>(row.size()) != space.rank)
      throw ParseError("T[" + std::to_string(i) + "]",
                       "expected " + std::to_string(space.rank) + " entries");
    std::vector<AlgebraElement> out_row;
    for (int j = 0; j < space.rank; ++j)
      out_row.push_back(parse_element(row[j], spec,
                                      "T[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    entries.push_back(std::move(out_row));
  }
  SesquilinearForm form = form_from_operator(space, std::move(entries));

  std::vector<ModuleVector> gens;
  if (doc.contains("Y_generators")) {
    if (!doc["Y_generators"].is_array()) throw ParseError("Y_generators", "expected an array");
    for (size_t g = 0; g < doc["Y_generators"].size(); ++g)
      gens.push_back(parse_vector(doc["Y_generators"][g], space,
                                  "Y_generators[" + std::to_string(g) + "]"));
  }
  Submodule constraint = submodule_from_generators(space, gens);

  if (!doc.contains("x")) throw ParseError("x", "missing target vector");
  ModuleVector target = parse_vector(doc["x"], space, "x");

  ProblemOptions opts;
  if (doc.contains("options")) {
    const json& o = doc["options"];
    if (!o.is_object()) throw ParseError("options", "expected an object");
    if (o.contains("tol")) {
      if (!o["tol"].is_number() || !(o["tol"].get<double>() > 0))
        throw ParseError("options.tol", "tolerance must be a positive number");
      opts.tol = o["tol"].get<double>();
      opts.tol_given = true;
    }
    if (o.contains("seed")) {
      if (!o["seed"].is_number_integer() || o["seed"].get<long long>() < 0)
        throw ParseError("options.seed", "seed must be a nonnegative integer");
      opts.seed = o["seed"].get<unsigned long>();
    }
  }

  SplineProblem p{space, std::move(constraint), std::move(form), std::move(target), opts.tol};
  p.validate();
  return {std::move(p), opts};
}

ParsedProblem parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(path, std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(doc);
}

json module_vector_to_json(const ModuleVector& x) {
  json out = json::array();
  for (const AlgebraElement& a : x.entries) out.push_back(element_to_json(a));
  return out;
}

json problem_to_json(const SplineProblem& p, unsigned long seed) {
  json doc;
  doc["algebra"] = {{"blocks", p.space.spec.block_sizes}};
  doc["module_rank"] = p.space.rank;
  json t = json::array();
  for (int i = 0; i < p.space.rank; ++i) {
    json row = json::array();
    for (int j = 0; j < p.space.rank; ++j) row.push_back(element_to_json(p.form.op[i][j]));
    t.push_back(std::move(row));
  }
  doc["T"] = std::move(t);
  json gens = json::array();
  for (const ModuleVector& g : p.constraint.generators()) gens.push_back(module_vector_to_json(g));
  doc["Y_generators"] = std::move(gens);
  doc["x"] = module_vector_to_json(p.target);
  doc["options"] = {{"tol", p.tol}, {"seed", seed}};
  return doc;
}

json report_to_json(const SplineReport& r) {
  json doc;
  doc["solvable"] = r.solvable;
  doc["residual"] = r.residual;
  doc["unique"] = r.unique;
  doc["radical_dims"] = {{"right", r.radical_dims.first}, {"left", r.radical_dims.second}};
  doc["necessary_condition"] = r.necessary_condition;
  doc["positive_on_Y"] = r.positive_on_constraint;
  doc["all_targets_solvable"] = r.all_targets_solvable;
  doc["range_containment"] = r.operator_range_containment;
  doc["solution"] = r.solution ? module_vector_to_json(*r.solution) : json(nullptr);
  doc["diagnostics"] = r.diagnostics;
  return doc;
}

json table_to_json(const CoercivityTable& t) {
  json rows = json::array();
  for (const CoercivityRow& row : t.rows) {
    json r = {{"k", row.k}, {"c_hat", row.c_hat}, {"witnesses", row.witnesses}};
    if (!row.note.empty()) r["note"] = row.note;
    rows.push_back(std::move(r));
  }
  return {{"rows", std::move(rows)},
          {"states", t.n_states},
          {"targets", t.n_targets},
          {"seed", t.seed}};
}

}  // namespace cspline
