// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "alloyse/error.hpp"
#include "alloyse/possible_type.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace alloyse {

enum class Side : std::uint8_t { Left, Right };

std::string_view to_string(Side s);

/// Where a block goes: into a hole, or wrapped around an existing node at one
/// of its extension points.
struct Target {
  enum class Kind : std::uint8_t { Hole, Anchor };
  Kind kind = Kind::Hole;
  NodeId node = 0;
  Side side = Side::Right; // anchors only

  static Target hole(NodeId id) { return {Kind::Hole, id, Side::Right}; }
  static Target anchor(NodeId id, Side side) { return {Kind::Anchor, id, side}; }
};

/// A palette entry.
struct Block {
  enum class Payload : std::uint8_t { Operator, Quantifier, BasicSet, PredCall, IntLit, Declaration };

  std::string id;    // "&", "quant:all", "File", "pred:inv5", "0", "set"
  std::string label; // display text
  Category category = Category::Relational;
  Payload payload = Payload::Operator;
  Op op = Op::Leaf;             // Operator / Quantifier
  LeafRef leaf = LeafRef::Sig;  // BasicSet
  std::string name;             // BasicSet / PredCall
  std::int64_t value = 0;       // IntLit
  KindClass result = KindClass::Expr;
  std::vector<std::string> slots; // template hole labels, e.g. {"var", "domain", "subformula"}
};

struct Verdict {
  bool selectable = true;
  ReasonClass reason = ReasonClass::None;
  std::string human_reason;
};

struct PaletteEntry {
  Block block;
  Verdict verdict;
};

/// What the context demands of a hole.
struct HoleConstraint {
  KindClass kind = KindClass::Formula;
  std::vector<int> allowed_arities;         // expr holes only
  std::map<int, RelType> must_overlap;      // per arity
  std::optional<RelType> first_col;         // first column must meet this set
  std::optional<RelType> last_col;          // last column must meet this set
  std::string label;                        // "formula", "domain", "lhs", ...
};

/// Sequential id source for template holes.
struct IdCounter {
  NodeId next = 0;
  NodeId operator()() { return next++; }
};

/// The node at `target` inside predicate `pred`. Throws Error(UnknownTarget /
/// UnknownHole / AnchorKindMismatch) when it is absent or of the wrong sort.
Located resolve_target(const Model& m, std::size_t pred, const Target& target);

/// Every block offered at the target, in palette order.
std::vector<Block> palette(const Model& m, std::size_t pred, const Target& target);

/// Looks a block up by id at the target. Throws Error(UnknownBlock).
Block find_block(const Model& m, std::size_t pred, const Target& target, std::string_view id);

/// Whether the block structurally fits the anchor side (binary both sides,
/// prefix and quantifiers left, postfix right).
bool fits_anchor(const Block& b, Side side);

/// Builds the block's template. `wrapped`, for anchor use, becomes the
/// operand on the anchored side; other operands become fresh holes.
NodePtr instantiate(const Block& b, IdCounter& ids, const std::vector<std::string>& avoid_names,
                    NodePtr wrapped = nullptr, Side side = Side::Right);

/// Predicate body after placing the block at the target.
NodePtr place_block(const Model& m, std::size_t pred, const Target& target, const Block& b, IdCounter& ids);

/// Why a candidate body admits no well-typed completion, or None if it does.
ReasonClass classify(const Model& m, const Node& body);

Verdict check_block(const Model& m, std::size_t pred, const Target& target, const Block& b);

HoleConstraint hole_constraint(const Model& m, std::size_t pred, NodeId hole);

std::vector<PaletteEntry> enumerate_blocks(const Model& m, std::size_t pred, const Target& target);

/// Fresh binder name: x, y, z, x1, y1, z1, ... avoiding `taken`.
std::string fresh_var_name(const std::vector<std::string>& taken);

/// Names a new binder at this path must avoid: declared names, in-scope
/// variables, and variables used inside `subtree`.
std::vector<std::string> binder_names_to_avoid(const Model& m, std::span<const PathStep> path,
                                               const Node* subtree);

} // namespace alloyse
