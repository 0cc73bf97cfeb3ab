// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "alloyse/model.hpp"
#include "alloyse/typecheck.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace alloyse {

/// Abstraction of the expression types one subtree can take: every concrete
/// type T of this arity with T inside `bound` (any T when `bound` is empty,
/// i.e. Top), empty only if `may_empty`, non-empty only if `may_nonempty`.
struct AbsRel {
  int arity = 1;
  std::optional<RelType> bound; // nullopt: Top
  bool may_empty = true;
  bool may_nonempty = true;

  bool is_top() const { return !bound.has_value(); }
  friend bool operator==(const AbsRel&, const AbsRel&) = default;
};

/// The kinds a subtree with holes may still take across its completions.
struct PossibleType {
  bool formula = false;
  bool integer = false;
  std::vector<AbsRel> exprs;

  bool untypable() const { return !formula && !integer && exprs.empty(); }
  bool admits(KindClass k) const {
    return k == KindClass::Formula ? formula : k == KindClass::Int ? integer : !exprs.empty();
  }
  std::vector<int> arities() const;

  static PossibleType of_kind(const Kind& k);
  /// A bare hole of class `k`.
  static PossibleType maximal(KindClass k, int max_arity);
};

/// Coarsenings used to name why an analysis fails. KindOnly ignores arities
/// and types; ArityOnly treats every leaf as an unconstrained non-empty
/// relation of its arity.
enum class Precision : std::uint8_t { KindOnly, ArityOnly, Full };

using AbsScope = std::vector<std::pair<std::string, AbsRel>>;
/// Replaces the analysis result of specific holes.
using HoleOverrides = std::unordered_map<NodeId, PossibleType>;

struct AnalysisOptions {
  Precision precision = Precision::Full;
  const HoleOverrides* overrides = nullptr;
};

/// Sound over-approximation: every kind some hole-filling makes `type_of`
/// return is represented. Exact on hole-free subtrees.
PossibleType possible_type(const Model& m, const Node& n, const AbsScope& scope = {},
                           const AnalysisOptions& opts = {});

/// True when some completion of a predicate body is a well-typed formula.
bool body_typable(const Model& m, const Node& body, const AnalysisOptions& opts = {});

AbsScope abstract_scope(const Scope& scope);

} // namespace alloyse
