// SPDX-License-Identifier: Apache-2.0
#pragma once

// Brute-force ground truth for block selectability. Relies only on the
// concrete typechecker: a partial tree is completable iff some filling of
// its holes with hole-free subtrees of bounded height type-checks.

#include "alloyse/model.hpp"
#include "alloyse/typecheck.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace alloyse::oracle {

struct KindLess {
  bool operator()(const Kind& a, const Kind& b) const {
    if (a.cls != b.cls)
      return a.cls < b.cls;
    return a.type < b.type;
  }
};

struct RuleLess {
  bool operator()(const std::pair<Op, std::vector<Kind>>& a, const std::pair<Op, std::vector<Kind>>& b) const {
    if (a.first != b.first)
      return a.first < b.first;
    return std::lexicographical_compare(a.second.begin(), a.second.end(), b.second.begin(), b.second.end(),
                                        KindLess{});
  }
};

/// Achievable kinds, each with one hole-free witness.
using KindMap = std::map<Kind, NodePtr, KindLess>;

/// Kind-quotient search. Two fillers with the same kind are interchangeable
/// under every typing rule, so one witness per kind suffices; the result
/// equals exhaustive enumeration at the same height bound.
class Oracle {
public:
  /// `pred` is excluded from predicate-call fillers.
  Oracle(const Model& m, int depth, std::string pred);

  /// Kinds of well-typed fillers of height <= depth for a hole of class `cls`.
  const KindMap& filler_kinds(const Scope& scope, KindClass cls);

  /// Kinds the partial tree can take across completions.
  KindMap kinds(const NodePtr& n, const Scope& scope);

  bool completion_exists(const NodePtr& body);

  /// Body after placing palette block `block_id` at hole `hole`; nullptr when
  /// the id names no placeable block.
  NodePtr with_block_at_hole(const NodePtr& body, NodeId hole, const std::string& block_id) const;
  /// Body after wrapping `node` with `block_id` on `side` ("left"/"right").
  NodePtr with_block_at_anchor(const NodePtr& body, NodeId node, bool left, const std::string& block_id) const;

  bool selectable_at_hole(const NodePtr& body, NodeId hole, const std::string& block_id);
  bool selectable_at_anchor(const NodePtr& body, NodeId node, bool left, const std::string& block_id);

private:
  struct Levels {
    KindMap all; // every kind, any class
  };

  const Levels& fillers(const Scope& scope);
  /// Kind of `node`, an operator over witnesses of kinds `args`. Typing is
  /// compositional, so the result is memoized per operator and argument kinds.
  std::optional<Kind> rule(const NodePtr& node, const Scope& scope, std::vector<Kind> args);
  /// `kinds` of a node with holes, from its children's kinds.
  KindMap combine(const NodePtr& n, const Scope& scope);
  NodePtr template_for(const std::string& block_id, const std::vector<std::string>& vars, NodePtr wrapped,
                       bool left) const;

  const Model& m_;
  int depth_;
  std::string pred_;
  std::map<std::vector<std::pair<std::string, RelType>>, Levels> cache_;
  std::map<std::pair<std::vector<std::pair<std::string, RelType>>, int>, KindMap> by_class_;
  std::unordered_map<std::string, KindMap> memo_;
  std::map<std::pair<Op, std::vector<Kind>>, std::optional<Kind>, RuleLess> rules_; // keyed by scope and node shape
};

/// Exhaustive enumeration: every hole-free instantiation of `node` whose
/// fillers have height <= depth and which type-checks. Throws
/// Error(BudgetExceeded) when more than `budget` candidates would be tried.
std::vector<NodePtr> enumerate_completions(const Model& m, const Scope& scope, const NodePtr& node, int depth,
                                           std::size_t budget = 2'000'000, const std::string& pred = {});

} // namespace alloyse::oracle
