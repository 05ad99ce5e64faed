#include "jordan/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace jordan::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw SchemaError(what); }

// Runs a decoder, turning every library or JSON error into a SchemaError.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object with field '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + ": expected an integer");
  return j.get<int>();
}

std::vector<ComplexMatrix> matrix_list(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + ": expected an array of matrices");
  std::vector<ComplexMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

Json matrix_list_json(const std::vector<ComplexMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

Json table_json(const std::optional<StarRepTable>& t) { return t ? to_json(*t) : Json(nullptr); }

std::optional<StarRepTable> table_in(const Json& j, const FdAlgebra& alg) {
  if (j.is_null()) return std::nullopt;
  if (j.contains("algebra") && !(algebra_from_json(j["algebra"]) == alg))
    fail("representation table lives on a different algebra than its slot");
  const int space = integer(field(j, "space_dim"), "space_dim");
  return guarded("StarRepTable", [&] { return StarRepTable(alg, space, matrix_list(field(j, "images"), "images")); });
}

}  // namespace

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

// ---------------------------------------------------------------------------
// Encoders

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    data.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Json to_json(const FdAlgebra& alg) { return {{"blocks", alg.block_dims()}}; }

Json to_json(const AlgElement& a) { return {{"algebra", to_json(a.algebra())}, {"blocks", matrix_list_json(a.blocks())}}; }

Json to_json(const State& s) {
  return {{"algebra", to_json(s.algebra())}, {"densities", matrix_list_json(s.densities())}};
}

Json to_json(const BilinearForm& b) {
  return {{"alg_a", to_json(b.alg_a())}, {"alg_b", to_json(b.alg_b())}, {"coeffs", to_json(b.coeffs())}};
}

Json to_json(const HilbertMap& f) {
  return {{"alg", to_json(f.algebra())}, {"target_dim", f.target_dim()}, {"matrix", to_json(f.matrix())}};
}

Json to_json(const StarRepTable& t) {
  return {{"algebra", to_json(t.algebra())}, {"space_dim", t.space_dim()}, {"images", matrix_list_json(t.images())}};
}

Json to_json(const JordanRep& sigma) {
  return {{"algebra", to_json(sigma.algebra())},
          {"rep_part", table_json(sigma.rep_part())},
          {"anti_part", table_json(sigma.anti_part())}};
}

Json to_json(const JSRep& j) {
  Json algebras = Json::array(), reps = Json::array();
  for (const auto& a : j.algebras()) algebras.push_back(to_json(a));
  for (const auto& r : j.reps()) reps.push_back(to_json(r));
  return {{"arity", j.arity()},
          {"algebras", std::move(algebras)},
          {"dims", j.dims()},
          {"reps", std::move(reps)},
          {"operators", matrix_list_json(j.operators())}};
}

Json to_json(const BilinearWitness& w) {
  return {{"kappa", to_json(w.kappa)}, {"lambda", to_json(w.lambda)}, {"mu", to_json(w.mu)}, {"nu", to_json(w.nu)}};
}

Json to_json(const LittleWitness& w) { return {{"psi", to_json(w.psi)}, {"phi", to_json(w.phi)}}; }

Json to_json(const NormEstimate& e) {
  Json out{{"value", number(e.value)},
           {"maximizer_x", to_json(e.maximizer_x)},
           {"converged", e.converged},
           {"restarts_used", e.restarts_used}};
  out["maximizer_y"] = e.maximizer_y ? to_json(*e.maximizer_y) : Json(nullptr);
  return out;
}

Json to_json(const ValidationReport& r) {
  return {{"multiplicativity", number(r.multiplicativity)},
          {"anti_multiplicativity", number(r.anti_multiplicativity)},
          {"self_adjointness", number(r.self_adjointness)},
          {"positivity", number(r.positivity)},
          {"shape_chain", r.shape_chain},
          {"tolerance", ValidationReport::kTolerance},
          {"passed", r.passed}};
}

Json to_json(const GnsData& g) {
  return {{"algebra", to_json(g.alg)},
          {"state", to_json(g.state)},
          {"space_dim", g.space_dim},
          {"embed", to_json(g.embed)},
          {"cyclic_vector", to_json(ComplexMatrix(g.cyclic_vector))},
          {"conjugation_basis", to_json(g.conjugation_basis)},
          {"pi", to_json(g.pi)},
          {"rho", to_json(g.rho)}};
}

Json to_json(const GnsResidual& r) {
  return {{"pi_identity", number(r.pi_identity)},
          {"rho_identity", number(r.rho_identity)},
          {"conjugation_identity", number(r.conjugation_identity)},
          {"embed_identity", number(r.embed_identity)},
          {"module_identity", number(r.module_identity)},
          {"rho_anti_multiplicativity", number(r.rho_anti_multiplicativity)},
          {"pi_multiplicativity", number(r.pi_multiplicativity)},
          {"worst", number(r.worst())}};
}

Json to_json(const WitnessReport& r) {
  Json out{{"max_violation", number(r.max_violation)},
           {"worst_a", to_json(r.worst_a)},
           {"norm_estimate_used", number(r.norm_estimate_used)},
           {"witness_constant", number(r.witness_constant)}};
  out["worst_b"] = r.worst_b ? to_json(*r.worst_b) : Json(nullptr);
  return out;
}

Json to_json(const Factorization& f) {
  return {{"rep", to_json(f.rep)},
          {"middle_norm", number(f.middle_norm)},
          {"reproduction_residual", number(f.reproduction_residual)},
          {"bound", number(f.bound)}};
}

Json to_json(const RatioReport& r) {
  return {{"index", r.index},
          {"kind", r.kind},
          {"blocks", r.blocks},
          {"rank", r.rank},
          {"norm_lower", number(r.norm_lower)},
          {"jordan_upper", number(r.jordan_upper)},
          {"ratio", number(r.ratio)},
          {"witness_constant", number(r.witness_constant)},
          {"violation", number(r.violation)},
          {"success", r.success},
          {"failure", r.failure}};
}

Json to_json(const PositivityResult& r) {
  return {{"positive", r.positive},
          {"min_eigenvalue", number(r.min_eigenvalue)},
          {"hermitian_residual", number(r.hermitian_residual)}};
}

Json to_json(const PositiveFormData& d) {
  return {{"gram", to_json(d.gram)},
          {"fb", to_json(d.fb)},
          {"kernel_dim", d.kernel_dim},
          {"identity_residual", number(d.identity_residual)}};
}

Json to_json(const NormSquareReport& r) {
  return {{"form_norm", number(r.form_norm)},
          {"map_norm", number(r.map_norm)},
          {"relative_gap", number(r.relative_gap)},
          {"passed", r.passed}};
}

Json to_json(const RoundTripReport& r) {
  return {{"start_bound", number(r.start_bound)},
          {"fb_bound", number(r.fb_bound)},
          {"fb_bound_squared", number(r.fb_bound_squared)},
          {"final_bound", number(r.final_bound)},
          {"symmetrize_residual", number(r.symmetrize_residual)},
          {"compress_residual", number(r.compress_residual)},
          {"final_residual", number(r.final_residual)},
          {"passed", r.passed}};
}

// ---------------------------------------------------------------------------
// Decoders

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const int rows = integer(field(j, "rows"), "rows");
  const int cols = integer(field(j, "cols"), "cols");
  if (rows < 0 || cols < 0) fail("matrix: negative shape");
  const Json& data = field(j, "data");
  if (!data.is_array()) fail("matrix: data must be an array of rows");
  if (rows == 0) {
    if (!data.empty()) fail("matrix: data has rows but rows = 0");
    return ComplexMatrix(0, cols);
  }
  if (static_cast<int>(data.size()) != rows) fail("matrix: row count does not match data");
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = data[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) fail("matrix: column count does not match data");
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

ComplexVector vector_from_json(const Json& j) {
  if (j.is_array()) {
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
  }
  const ComplexMatrix m = matrix_from_json(j);
  if (m.cols() != 1) fail("vector: expected a single column");
  return m.col(0);
}

FdAlgebra algebra_from_json(const Json& j) {
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array() || blocks.empty()) fail("algebra: blocks must be a nonempty array");
  std::vector<int> dims;
  for (const auto& d : blocks) dims.push_back(integer(d, "block size"));
  return guarded("algebra", [&] { return FdAlgebra(dims); });
}

AlgElement element_from_json(const Json& j) {
  const FdAlgebra alg = algebra_from_json(field(j, "algebra"));
  return guarded("element", [&] { return AlgElement(alg, matrix_list(field(j, "blocks"), "blocks")); });
}

State state_from_json(const Json& j) {
  const FdAlgebra alg = algebra_from_json(field(j, "algebra"));
  return guarded("state", [&] { return State(alg, matrix_list(field(j, "densities"), "densities")); });
}

BilinearForm form_from_json(const Json& j) {
  const FdAlgebra a = algebra_from_json(field(j, "alg_a"));
  const FdAlgebra b = algebra_from_json(field(j, "alg_b"));
  const ComplexMatrix c = matrix_from_json(field(j, "coeffs"));
  return guarded("bilinear form", [&] { return BilinearForm(a, b, c); });
}

HilbertMap map_from_json(const Json& j) {
  const FdAlgebra alg = algebra_from_json(field(j, "alg"));
  const ComplexMatrix m = matrix_from_json(field(j, "matrix"));
  if (j.contains("target_dim") && integer(j["target_dim"], "target_dim") != m.rows())
    fail("hilbert map: target_dim does not match the matrix");
  return guarded("hilbert map", [&] { return HilbertMap(alg, m); });
}

StarRepTable table_from_json(const Json& j) { return *table_in(j, algebra_from_json(field(j, "algebra"))); }

JordanRep jordan_rep_from_json(const Json& j) {
  if (!j.contains("algebra")) fail("jordan representation: missing field 'algebra'");
  const FdAlgebra alg = algebra_from_json(j["algebra"]);
  auto rep = table_in(field(j, "rep_part"), alg);
  auto anti = table_in(field(j, "anti_part"), alg);
  return guarded("jordan representation", [&] { return JordanRep(std::move(rep), std::move(anti)); });
}

JSRep jsrep_from_json(const Json& j) {
  const int arity = integer(field(j, "arity"), "arity");
  const Json& algebras = field(j, "algebras");
  const Json& reps = field(j, "reps");
  if (arity < 1) fail("jsrep: arity must be positive");
  if (!algebras.is_array() || static_cast<int>(algebras.size()) != arity) fail("jsrep: algebras must list one per slot");
  if (!reps.is_array() || static_cast<int>(reps.size()) != arity) fail("jsrep: reps must list one per slot");
  std::vector<JordanRep> sigmas;
  for (int i = 0; i < arity; ++i) {
    const FdAlgebra alg = algebra_from_json(algebras[static_cast<std::size_t>(i)]);
    const Json& r = reps[static_cast<std::size_t>(i)];
    auto rep = table_in(field(r, "rep_part"), alg);
    auto anti = table_in(field(r, "anti_part"), alg);
    sigmas.push_back(guarded("jsrep slot", [&] { return JordanRep(std::move(rep), std::move(anti)); }));
  }
  std::vector<ComplexMatrix> ops = matrix_list(field(j, "operators"), "operators");
  JSRep out = guarded("jsrep", [&] { return JSRep(std::move(sigmas), std::move(ops)); });
  if (j.contains("dims")) {
    const Json& dims = j["dims"];
    if (!dims.is_array() || dims.get<std::vector<int>>() != out.dims()) fail("jsrep: dims do not match the representations");
  }
  return out;
}

BilinearWitness bilinear_witness_from_json(const Json& j) {
  return {state_from_json(field(j, "kappa")), state_from_json(field(j, "lambda")), state_from_json(field(j, "mu")),
          state_from_json(field(j, "nu"))};
}

LittleWitness little_witness_from_json(const Json& j) {
  return {state_from_json(field(j, "psi")), state_from_json(field(j, "phi"))};
}

// ---------------------------------------------------------------------------
// Files

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open input file " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail("invalid JSON in " + path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << j.dump(2) << '\n';
}

}  // namespace jordan::io
