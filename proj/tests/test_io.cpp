#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "jordan/io.hpp"

using namespace jordan;
using io::Json;

TEST_CASE("complex and matrix encodings") {
  CHECK(io::to_json(Complex(1.5, -2.0)) == Json::array({1.5, -2.0}));
  CHECK(io::complex_from_json(Json::array({0.25, 3.0})) == Complex(0.25, 3.0));
  CHECK(io::complex_from_json(Json(2.0)) == Complex(2.0, 0.0));
  CHECK_THROWS_AS(io::complex_from_json(Json::array({1.0})), SchemaError);
  CHECK_THROWS_AS(io::complex_from_json(Json("x")), SchemaError);

  Rng rng(61);
  const ComplexMatrix m = linalg::random_gaussian(2, 3, rng);
  const Json j = io::to_json(m);
  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 3);
  CHECK(j["data"].size() == 2);
  CHECK(io::matrix_from_json(j) == m);
  const ComplexMatrix empty(0, 1);
  CHECK(io::matrix_from_json(io::to_json(empty)).cols() == 1);

  Json bad = j;
  bad["rows"] = 3;
  CHECK_THROWS_AS(io::matrix_from_json(bad), SchemaError);
  bad = j;
  bad["data"][1].erase(0);
  CHECK_THROWS_AS(io::matrix_from_json(bad), SchemaError);
  CHECK_THROWS_AS(io::matrix_from_json(Json::object()), SchemaError);
  CHECK(io::vector_from_json(Json::array({Json::array({1.0, 0.0}), Json::array({0.0, 1.0})})).size() == 2);
}

TEST_CASE("algebra, element, state round trips") {
  const FdAlgebra alg({1, 2});
  CHECK(io::to_json(alg) == Json{{"blocks", {1, 2}}});
  CHECK(io::algebra_from_json(io::to_json(alg)) == alg);
  CHECK_THROWS_AS(io::algebra_from_json(Json{{"blocks", Json::array()}}), SchemaError);
  CHECK_THROWS_AS(io::algebra_from_json(Json{{"blocks", {2, 0}}}), SchemaError);
  CHECK_THROWS_AS(io::algebra_from_json(Json{{"blocks", {1.5}}}), SchemaError);

  Rng rng(62);
  const AlgElement a = AlgElement::random(alg, rng);
  CHECK(io::element_from_json(io::to_json(a)).vec() == a.vec());
  Json wrong = io::to_json(a);
  wrong["blocks"].erase(1);
  CHECK_THROWS_AS(io::element_from_json(wrong), SchemaError);

  const State s = State::random(alg, rng);
  const Json js = io::to_json(s);
  CHECK(js.contains("densities"));
  const State back = io::state_from_json(js);
  CHECK(oracle::max_abs(back.density(1) - s.density(1)) < 1e-15);
  Json neg = js;
  neg["densities"][0]["data"][0][0] = Json::array({-1.0, 0.0});
  CHECK_THROWS_AS(io::state_from_json(neg), SchemaError);
}

TEST_CASE("forms and maps") {
  Rng rng(63);
  const FdAlgebra a = FdAlgebra::full(2), b({1, 1});
  const BilinearForm f = BilinearForm::random_rank(a, b, 2, rng);
  const Json jf = io::to_json(f);
  CHECK(jf.contains("alg_a"));
  CHECK(jf.contains("alg_b"));
  CHECK(io::form_from_json(jf).coeffs() == f.coeffs());
  Json bad = jf;
  bad["alg_b"] = io::to_json(FdAlgebra::full(3));
  CHECK_THROWS_AS(io::form_from_json(bad), SchemaError);

  const HilbertMap m = HilbertMap::row_map(3);
  const Json jm = io::to_json(m);
  CHECK(jm["target_dim"] == 3);
  CHECK(io::map_from_json(jm).matrix() == m.matrix());
  Json badm = jm;
  badm["target_dim"] = 2;
  CHECK_THROWS_AS(io::map_from_json(badm), SchemaError);
}

TEST_CASE("JSRep round trip preserves evaluation") {
  Rng rng(64);
  const JSRep j = random_bilinear_jsrep(FdAlgebra::full(2), FdAlgebra({1, 2}), rng);
  const Json jj = io::to_json(j);
  CHECK(jj["arity"] == 2);
  CHECK(jj["dims"] == j.dims());
  CHECK(jj["reps"][0].contains("rep_part"));
  CHECK(jj["reps"][0].contains("anti_part"));
  const JSRep back = io::jsrep_from_json(jj);
  for (int t = 0; t < 5; ++t) {
    const AlgElement x = AlgElement::random(FdAlgebra::full(2), rng), y = AlgElement::random(FdAlgebra({1, 2}), rng);
    CHECK(oracle::max_abs(evaluate(back, {x, y}) - evaluate(j, {x, y})) == 0.0);
  }
  Json bad = jj;
  bad["arity"] = 3;
  CHECK_THROWS_AS(io::jsrep_from_json(bad), SchemaError);
  bad = jj;
  bad["dims"] = {1, 1};
  CHECK_THROWS_AS(io::jsrep_from_json(bad), SchemaError);
  bad = jj;
  bad["operators"].erase(0);
  CHECK_THROWS_AS(io::jsrep_from_json(bad), SchemaError);

  const JordanRep sigma(StarRepTable::identity(FdAlgebra::full(2)), std::nullopt);
  const JordanRep s2 = io::jordan_rep_from_json(io::to_json(sigma));
  CHECK(s2.rep_dim() == 2);
  CHECK_FALSE(s2.anti_part().has_value());
}

TEST_CASE("witness states and reports") {
  const BilinearWitness w = corner_witness(2);
  const BilinearWitness back = io::bilinear_witness_from_json(io::to_json(w));
  CHECK(oracle::max_abs(back.kappa.density(0) - w.kappa.density(0)) == 0.0);
  CHECK(oracle::max_abs(back.nu.density(0) - w.nu.density(0)) == 0.0);
  const LittleWitness lw = row_map_witness(3);
  CHECK(oracle::max_abs(io::little_witness_from_json(io::to_json(lw)).phi.density(0) - lw.phi.density(0)) == 0.0);
  CHECK_THROWS_AS(io::bilinear_witness_from_json(Json{{"kappa", io::to_json(w.kappa)}}), SchemaError);

  const WitnessReport r = check_witness(corner_form(2), w, 1.0);
  const Json jr = io::to_json(r);
  CHECK(jr.contains("max_violation"));
  CHECK(jr["worst_b"].is_object());
  CHECK(io::to_json(roundtrip_positive(transpose_factorization_example(2), corner_form(2)))["passed"] == true);
}

TEST_CASE("non-finite numbers and files") {
  CHECK(io::number(INFINITY) == "inf");
  CHECK(io::number(-INFINITY) == "-inf");
  CHECK(io::number(NAN) == "nan");
  CHECK(io::number(0.5) == 0.5);

  const auto path = (std::filesystem::temp_directory_path() / "jordan_io_test.json").string();
  const Json doc = io::to_json(corner_form(2));
  io::write_file(path, doc);
  CHECK(io::read_file(path) == doc);
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(io::read_file(path), SchemaError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_file(path), SchemaError);
}
