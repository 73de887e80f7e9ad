#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "ocorg/set_computation.hpp"

namespace ocorg {

using json = nlohmann::json;

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json to_json(const HPolytope& p);
HPolytope hpolytope_from_json(const json& j);

json to_json(const SupportSet& s);
SupportSet support_set_from_json(const json& j);

/// Set artifact with determination diagnostics, cacheable and reloadable.
json mas_to_json(const MasResult& mas, double lambda, double eps_mas);
MasResult mas_from_json(const json& j);

json rpi_to_json(const RPIApprox& rpi);
RPIApprox rpi_from_json(const json& j);

/// Vertex list CSV (columns x,y), counter-clockwise, closed implicitly.
std::string polygon_csv(const std::vector<std::array<double, 2>>& vertices);

/// FNV-1a content hash of a canonical string, as fixed-width hex.
std::string content_hash(const std::string& canonical);

}  // namespace ocorg
