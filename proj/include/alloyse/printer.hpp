// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "alloyse/model.hpp"

#include <string>

namespace alloyse {

enum class ParenPolicy : std::uint8_t { Minimal, Full };

struct PrintOptions {
  bool allow_holes = true;
  ParenPolicy parens = ParenPolicy::Minimal;
};

/// Renders a subtree. Throws Error(HolesPresent) when holes are disallowed.
std::string print_node(const Node& n, const PrintOptions& opts = {});

/// `pred name { body }`. An empty body (a lone root hole) prints as `{}`
/// unless holes are allowed.
std::string print_pred(const PredDecl& p, const PrintOptions& opts = {});

/// Deterministic model text in declaration order, comments re-emitted before
/// the declaration they preceded. Hole-free output reparses to an equal model.
std::string print_model(const Model& m, const PrintOptions& opts = {});

} // namespace alloyse
