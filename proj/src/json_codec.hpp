// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "alloyse/edit.hpp"

#include <json.hpp>

namespace alloyse::detail {

using json = nlohmann::json;

json to_json(const EditAction& a);
/// Throws Error(BadRequest).
EditAction action_from(const json& j);
NodeRef ref_from(const json& j, std::string_view field);

} // namespace alloyse::detail
