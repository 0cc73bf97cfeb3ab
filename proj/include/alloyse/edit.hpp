// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "alloyse/palette.hpp"
#include "alloyse/parser.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace alloyse {

/// A node reference as written in scripts: a numeric id, or a path
/// "root", "root/1/0" into a named predicate's body.
struct NodeRef {
  std::variant<NodeId, std::string> ref;

  static NodeRef id(NodeId n) { return {n}; }
  static NodeRef path(std::string p) { return {std::move(p)}; }
  std::string str() const;
};

struct EditAction {
  enum class Type : std::uint8_t { Insert, Extend, Delete, Splice, Replace, Rename, Paste, Undo, Redo };

  Type type = Type::Insert;
  std::optional<std::string> pred; // needed for path references, optional otherwise
  NodeRef node;                    // hole, anchored node, or target node
  Side side = Side::Right;         // Extend
  std::string block;               // Insert, Extend, Replace
  std::size_t keep = 0;            // Splice: kept child index
  std::string name;                // Rename
  std::string text;                // Paste
};

std::string_view to_string(EditAction::Type t);

/// Result of an accepted action.
struct Outcome {
  std::string pred;               // predicate edited (empty for undo/redo)
  std::vector<NodeId> new_holes;  // holes created by the action, pre-order
  std::optional<NodeId> created;  // root of the inserted or wrapping node
  std::string note;               // e.g. children dropped by a replace
};

/// A single-writer editing session over one model. Every accepted action
/// keeps each predicate body potentially typable.
class EditSession {
public:
  explicit EditSession(Model initial);

  const Model& model() const { return current_; }
  bool can_undo() const { return !history_.empty(); }
  bool can_redo() const { return !redo_.empty(); }
  std::size_t history_size() const { return history_.size(); }

  /// Applies one action. Throws Error on rejection, leaving the session
  /// unchanged.
  Outcome apply(const EditAction& a);

  Outcome insert(std::size_t pred, NodeId hole, std::string_view block);
  Outcome extend(std::size_t pred, NodeId node, Side side, std::string_view block);
  Outcome delete_subtree(std::size_t pred, NodeId node);
  Outcome splice(std::size_t pred, NodeId node, std::size_t keep);
  Outcome replace(std::size_t pred, NodeId node, std::string_view block);
  Outcome rename(std::size_t pred, NodeId quant, std::string_view name);
  Outcome paste(std::size_t pred, NodeId hole, std::string_view text);
  Outcome undo();
  Outcome redo();

  /// Resolves a reference to (pred index, node id). Throws Error(UnknownTarget
  /// / UnknownPred).
  std::pair<std::size_t, NodeId> resolve(const NodeRef& ref, const std::optional<std::string>& pred) const;

private:
  Outcome commit(std::size_t pred, NodePtr body, NodeId next_id, Outcome out);

  Model current_;
  std::vector<Model> history_;
  std::vector<Model> redo_;
};

struct ActionResult {
  std::size_t index = 0;
  bool ok = true;
  std::optional<Outcome> outcome;
  ErrorCode code = ErrorCode::BadRequest;
  ReasonClass reason = ReasonClass::None;
  std::string message;
};

struct ReplayResult {
  Model model;
  std::vector<ActionResult> results;
  bool halted = false;
};

/// Applies actions in order, recording each rejection. Stops at the first
/// rejection when `halt_on_reject`.
ReplayResult replay(Model initial, const std::vector<EditAction>& actions, bool halt_on_reject = false);
ReplayResult replay(std::string_view model_text, const std::vector<EditAction>& actions,
                    bool halt_on_reject = false, Config config = {});

/// One-line JSON encoding shared by edit scripts and the wire protocol.
std::string action_to_json(const EditAction& a);
/// Throws Error(BadRequest) on malformed input.
EditAction action_from_json(std::string_view text);

/// Reads an edit script: one JSON action per line; blank lines and lines
/// starting with '#' are skipped. Errors name the line number.
std::vector<EditAction> parse_edit_script(std::string_view text);

} // namespace alloyse
