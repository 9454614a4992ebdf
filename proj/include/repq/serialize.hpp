// JSON encodings for the core value types. Complex entries are [re, im]
// pairs; matrices are row-major nested arrays. Decoding validates shapes
// against the embedded descriptor and surfaces the offending key on failure.
#pragma once

#include <nlohmann/json.hpp>

#include "repq/gns.hpp"
#include "repq/rep_space.hpp"

namespace repq {

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const AlgebraDescriptor& descriptor);
nlohmann::json to_json(const AlgebraElement& a);
nlohmann::json to_json(const Functional& phi);
nlohmann::json to_json(const Representation& pi);
nlohmann::json to_json(const GnsTriple& triple);

Matrix matrix_from_json(const nlohmann::json& j);
Vector vector_from_json(const nlohmann::json& j);
AlgebraDescriptor descriptor_from_json(const nlohmann::json& j);
AlgebraElement element_from_json(const nlohmann::json& j);
Functional functional_from_json(const nlohmann::json& j);
Representation representation_from_json(const nlohmann::json& j);
GnsTriple gns_triple_from_json(const nlohmann::json& j);

}  // namespace repq
