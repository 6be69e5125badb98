#pragma once

// JSON (de)serialization: complex matrices as nested [re, im] pairs, real
// matrices row-major, covariant systems as {form, generators, omega}.

#include <json.hpp>

#include "warpcore/covariant.hpp"
#include "warpcore/minkowski.hpp"
#include "warpcore/types.hpp"

namespace warpcore::serialize {

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json real_matrix_to_json(const RealMatrix& m);  // row-major
RealMatrix real_matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const CVector& v);
CVector vector_from_json(const nlohmann::json& j);

nlohmann::json system_to_json(const covariant::CovariantSystem& sys);
covariant::CovariantSystem system_from_json(const nlohmann::json& j);

}  // namespace warpcore::serialize
