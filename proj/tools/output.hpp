#pragma once

#include "json.hpp"

#include "holo/common.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace holo::cli {

using nlohmann::json;

// Doubles at 17 significant digits, object keys sorted, two-space indent.
std::string dump(const json& j);

json to_json(cplx z);
json to_json(const RMat& m);
json to_json(const CMat& m);
json to_json(const std::vector<cplx>& v);

std::string fmt(double v);  // %.17g
std::string fmt(cplx z);

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Writes text to `path`; throws Error(usage) when the file cannot be opened.
void write_file(const std::string& path, const std::string& text);

}  // namespace holo::cli
