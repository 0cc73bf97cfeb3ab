// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "alloyse/model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace alloyse {

enum class TypeErrorClass : std::uint8_t {
  KindMismatch,
  ArityMismatch,
  DisjointOperands,
  EmptyJoin,
  ClosureArity,
  TransposeArity,
};

std::string_view to_string(TypeErrorClass c);

/// Kind of a well-typed node. `type` is meaningful for Expr only.
struct Kind {
  KindClass cls = KindClass::Formula;
  RelType type;

  friend bool operator==(const Kind&, const Kind&) = default;
};

struct TypeError {
  NodeId node = 0;                // the operator whose rule failed
  TypeErrorClass cls = TypeErrorClass::KindMismatch;
  std::optional<NodeId> operand;  // the offending operand, when one is singled out
  std::string message;
  std::string detail;             // "Left type = {..}. Right type = {..}" for binary rules
};

struct TypeResult {
  std::optional<Kind> kind;
  std::optional<TypeError> error;

  bool ok() const { return kind.has_value(); }
};

/// Variable bindings, innermost last.
using Scope = std::vector<std::pair<std::string, RelType>>;

/// Types a hole-free subtree. The first failing rule in leftmost-innermost
/// order is reported. Throws Error(HolesPresent) on a hole and
/// Error(UnknownRef) on an unbound variable.
TypeResult type_of(const Model& m, const Node& n, const Scope& scope = {});

/// Types a predicate body, expecting a formula.
TypeResult check_pred(const Model& m, const PredDecl& p);

} // namespace alloyse
