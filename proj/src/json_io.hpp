#pragma once

#include <string>

#include <json.hpp>

#include "seqfmeca/fmeca.hpp"

namespace seqfmeca::detail {

using Json = nlohmann::ordered_json;

Json row_to_json(const WorksheetRow& row);
std::string dump(const Json& j);

}  // namespace seqfmeca::detail
