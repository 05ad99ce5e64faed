#pragma once

// JSON encodings of the library types.
//   complex        [re, im]
//   ComplexMatrix  {"rows", "cols", "data": nested arrays of complex}
//   FdAlgebra      {"blocks": [d1, ...]}
//   AlgElement     {"algebra", "blocks": [matrix, ...]}
//   State          {"algebra", "densities": [matrix, ...]}
//   BilinearForm   {"alg_a", "alg_b", "coeffs"}
//   HilbertMap     {"alg", "target_dim", "matrix"}
//   StarRepTable   {"algebra", "space_dim", "images": [matrix per basis unit]}
//   JSRep          {"arity", "algebras", "dims", "reps": [{"rep_part", "anti_part"}], "operators"}
// Decoders throw SchemaError on any malformed or inconsistent input.

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "jordan/forms.hpp"
#include "jordan/gns.hpp"
#include "jordan/grothendieck.hpp"
#include "jordan/jsrep.hpp"
#include "jordan/positive.hpp"

namespace jordan {

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io {

using Json = nlohmann::json;

Json to_json(Complex z);
Json to_json(const ComplexMatrix& m);
Json to_json(const FdAlgebra& alg);
Json to_json(const AlgElement& a);
Json to_json(const State& s);
Json to_json(const BilinearForm& b);
Json to_json(const HilbertMap& f);
Json to_json(const StarRepTable& t);
Json to_json(const JordanRep& sigma);
Json to_json(const JSRep& j);

Complex complex_from_json(const Json& j);
ComplexMatrix matrix_from_json(const Json& j);
/// Column vector: a one-column matrix or a flat array of complex numbers.
ComplexVector vector_from_json(const Json& j);
FdAlgebra algebra_from_json(const Json& j);
AlgElement element_from_json(const Json& j);
State state_from_json(const Json& j);
BilinearForm form_from_json(const Json& j);
HilbertMap map_from_json(const Json& j);
StarRepTable table_from_json(const Json& j);
JordanRep jordan_rep_from_json(const Json& j);
JSRep jsrep_from_json(const Json& j);

Json to_json(const BilinearWitness& w);
Json to_json(const LittleWitness& w);
BilinearWitness bilinear_witness_from_json(const Json& j);
LittleWitness little_witness_from_json(const Json& j);

Json to_json(const NormEstimate& e);
Json to_json(const ValidationReport& r);
Json to_json(const GnsData& g);
Json to_json(const GnsResidual& r);
Json to_json(const WitnessReport& r);
Json to_json(const Factorization& f);
Json to_json(const RatioReport& r);
Json to_json(const PositivityResult& r);
Json to_json(const PositiveFormData& d);
Json to_json(const NormSquareReport& r);
Json to_json(const RoundTripReport& r);

/// Non-finite doubles become the strings "inf", "-inf", "nan".
Json number(double x);

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace io
}  // namespace jordan
