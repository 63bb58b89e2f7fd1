#pragma once

#include "vna/covering.hpp"
#include "vna/families.hpp"

#include <json.hpp>

namespace vna {

// JSON schemas (schema_version 1):
//   complex             [re, im]
//   matrix              {"rows": n, "cols": n, "data": [[re, im], ...]}  row-major
//   element             {"dims": [n_1, ...], "blocks": [matrix, ...]}
//   central projection  {"mask": [bool, ...]}
//   subalgebra          {"atoms": [element, ...], "contains_center": bool}
// Serialization is deterministic: object keys are emitted sorted and floats
// use the shortest round-trip form.

void to_json(nlohmann::json& j, const CMatrix& m);
void to_json(nlohmann::json& j, const BlockElement& x);
void to_json(nlohmann::json& j, const ProjectionElement& p);
void to_json(nlohmann::json& j, const CentralProjection& z);
void to_json(nlohmann::json& j, const CommutativeSubalgebra& v);
void to_json(nlohmann::json& j, const CommutativeIdeal& ideal);
void to_json(nlohmann::json& j, const PartialOrthWitness& w);
void to_json(nlohmann::json& j, const CoverCertificate& cert);
void to_json(nlohmann::json& j, const CoverValidation& val);
void to_json(nlohmann::json& j, const Counterexample& c);
void to_json(nlohmann::json& j, const CheckReport& r);
void to_json(nlohmann::json& j, const ViolationWitness& w);

CMatrix parse_matrix(const nlohmann::json& j);
BlockElement parse_element(const nlohmann::json& j);
ProjectionElement parse_projection(const nlohmann::json& j, const Tolerance& tol = {});
CentralProjection parse_central(const nlohmann::json& j, const BlockAlgebra& a);
CommutativeSubalgebra parse_subalgebra(const nlohmann::json& j, const Tolerance& tol = {});

}  // namespace vna
