#pragma once

#include <string>

#include <json.hpp>

#include "ophh/hermitian.hpp"

namespace ophh {

// Exchange format: {"n": d, "re": [[...]], "im": [[...]]}, row-major d x d.
// Loading validates shape and Hermitian symmetry.
nlohmann::ordered_json matrix_to_json(const HermitianMatrix& m);
HermitianMatrix matrix_from_json(const nlohmann::json& j);

void save_matrix(const HermitianMatrix& m, const std::string& path);
HermitianMatrix load_matrix(const std::string& path);

}  // namespace ophh
