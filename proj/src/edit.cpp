// SPDX-License-Identifier: Apache-2.0
#include "alloyse/edit.hpp"

#include "json_codec.hpp"

#include <algorithm>
#include <charconv>

namespace alloyse {

std::string NodeRef::str() const {
  if (const auto* id = std::get_if<NodeId>(&ref))
    return std::to_string(*id);
  return std::get<std::string>(ref);
}

std::string_view to_string(EditAction::Type t) {
  switch (t) {
  case EditAction::Type::Insert: return "insert";
  case EditAction::Type::Extend: return "extend";
  case EditAction::Type::Delete: return "delete";
  case EditAction::Type::Splice: return "splice";
  case EditAction::Type::Replace: return "replace";
  case EditAction::Type::Rename: return "rename";
  case EditAction::Type::Paste: return "paste";
  case EditAction::Type::Undo: return "undo";
  case EditAction::Type::Redo: return "redo";
  }
  return "?";
}

namespace {

// Whether `n` mentions variable `name` free.
bool uses_var(const Node& n, const std::string& name) {
  if (n.op == Op::Leaf)
    return n.leaf == LeafRef::Var && n.name == name;
  if (n.is_quant())
    return uses_var(*n.kids[0], name) || (n.name != name && uses_var(*n.kids[1], name));
  return std::any_of(n.kids.begin(), n.kids.end(), [&](const NodePtr& k) { return uses_var(*k, name); });
}

bool binds_name(const Node& n, const std::string& name) {
  if (n.is_quant() && n.name == name)
    return true;
  return std::any_of(n.kids.begin(), n.kids.end(), [&](const NodePtr& k) { return binds_name(*k, name); });
}

NodePtr rename_free(const NodePtr& n, const std::string& from, const std::string& to) {
  if (n->op == Op::Leaf) {
    if (n->leaf == LeafRef::Var && n->name == from)
      return make_leaf(n->id, LeafRef::Var, to);
    return n;
  }
  if (n->kids.empty())
    return n;
  std::vector<NodePtr> kids = n->kids;
  const bool shadowed = n->is_quant() && n->name == from;
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (!(shadowed && i == 1))
      kids[i] = rename_free(kids[i], from, to);
  return with_kids(*n, std::move(kids));
}

void holes_from(const Node& n, NodeId first_new, std::vector<NodeId>& out) {
  if (n.is_hole() && n.id >= first_new)
    out.push_back(n.id);
  for (const auto& k : n.kids)
    holes_from(*k, first_new, out);
}

Error untypable(ReasonClass reason, const std::string& what) {
  return Error(ErrorCode::Untypable, what + " leaves no well-typed completion (" + std::string(to_string(reason)) + ")",
               reason);
}

Error not_selectable(const Block& b, const Verdict& v) {
  return Error(ErrorCode::BlockNotSelectable, "block '" + b.id + "' is not selectable: " + v.human_reason, v.reason);
}

} // namespace

EditSession::EditSession(Model initial) : current_(std::move(initial)) {}

std::pair<std::size_t, NodeId> EditSession::resolve(const NodeRef& ref,
                                                    const std::optional<std::string>& pred) const {
  std::optional<std::size_t> idx;
  if (pred) {
    idx = current_.pred_index(*pred);
    if (!idx)
      throw Error(ErrorCode::UnknownPred, "unknown predicate '" + *pred + "'");
  }
  if (const auto* id = std::get_if<NodeId>(&ref.ref)) {
    auto owner = current_.pred_containing(*id);
    if (!owner || (idx && *owner != *idx))
      throw Error(ErrorCode::UnknownTarget, "no node with id " + std::to_string(*id));
    return {*owner, *id};
  }
  const std::string& path = std::get<std::string>(ref.ref);
  if (!idx)
    throw Error(ErrorCode::BadRequest, "path reference '" + path + "' needs a predicate");
  if (path != "root" && !path.starts_with("root/"))
    throw Error(ErrorCode::UnknownTarget, "bad node reference '" + path + "'");
  const Node* n = current_.preds()[*idx].body.get();
  std::size_t pos = 4;
  while (pos < path.size()) {
    const std::size_t next = path.find('/', pos + 1);
    const std::string_view step = std::string_view(path).substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1);
    std::size_t child = 0;
    auto [p, ec] = std::from_chars(step.data(), step.data() + step.size(), child);
    if (ec != std::errc{} || p != step.data() + step.size() || child >= n->kids.size())
      throw Error(ErrorCode::UnknownTarget, "path '" + path + "' does not name a node");
    n = n->kids[child].get();
    pos = next == std::string::npos ? path.size() : next;
  }
  return {*idx, n->id};
}

Outcome EditSession::commit(std::size_t pred, NodePtr body, NodeId next_id, Outcome out) {
  Model next = current_;
  const NodeId first_new = current_.next_node_id();
  holes_from(*body, first_new, out.new_holes);
  out.pred = next.preds()[pred].name;
  next.set_body(pred, std::move(body));
  next.reserve_ids_below(next_id);
  history_.push_back(std::move(current_));
  current_ = std::move(next);
  redo_.clear();
  return out;
}

Outcome EditSession::insert(std::size_t pred, NodeId hole, std::string_view block) {
  const Target target = Target::hole(hole);
  const Block b = find_block(current_, pred, target, block);
  const Verdict v = check_block(current_, pred, target, b);
  if (!v.selectable)
    throw not_selectable(b, v);
  IdCounter ids{current_.next_node_id()};
  NodePtr body = place_block(current_, pred, target, b, ids);
  Outcome out;
  out.created = current_.next_node_id();
  return commit(pred, std::move(body), ids.next, std::move(out));
}

Outcome EditSession::extend(std::size_t pred, NodeId node, Side side, std::string_view block) {
  const Target target = Target::anchor(node, side);
  const Block b = find_block(current_, pred, target, block);
  if (!fits_anchor(b, side))
    throw Error(ErrorCode::AnchorKindMismatch,
                "'" + b.label + "' does not fit the " + std::string(to_string(side)) + " extension point",
                ReasonClass::KindMismatch);
  const Verdict v = check_block(current_, pred, target, b);
  if (!v.selectable)
    throw not_selectable(b, v);
  IdCounter ids{current_.next_node_id()};
  NodePtr body = place_block(current_, pred, target, b, ids);
  Outcome out;
  out.created = current_.next_node_id();
  return commit(pred, std::move(body), ids.next, std::move(out));
}

Outcome EditSession::delete_subtree(std::size_t pred, NodeId node) {
  const NodePtr& body = current_.preds().at(pred).body;
  auto loc = locate(*body, node);
  if (!loc)
    throw Error(ErrorCode::UnknownNode, "no node with id " + std::to_string(node));
  if (loc->binder)
    throw Error(ErrorCode::CannotDeleteBinder, "a quantifier's variable cannot be deleted; rename it instead");
  IdCounter ids{current_.next_node_id()};
  NodePtr hole = make_hole(ids(), slot_class(loc->path));
  NodePtr next = replace_at(body, loc->path, hole);
  return commit(pred, std::move(next), ids.next, {});
}

Outcome EditSession::splice(std::size_t pred, NodeId node, std::size_t keep) {
  const NodePtr& body = current_.preds().at(pred).body;
  auto loc = locate(*body, node);
  if (!loc)
    throw Error(ErrorCode::UnknownNode, "no node with id " + std::to_string(node));
  if (loc->binder)
    throw Error(ErrorCode::CannotDeleteBinder, "a quantifier's variable cannot be spliced");
  const Node& n = *loc->node;
  if (n.kids.empty())
    throw Error(ErrorCode::BadRequest, "node " + std::to_string(node) + " has no operands");
  if (keep >= n.kids.size())
    throw Error(ErrorCode::BadRequest, "operand index " + std::to_string(keep) + " out of range");
  const NodePtr& kept = n.kids[keep];
  const KindClass slot = slot_class(loc->path);
  if (kept->kind_class() != slot)
    throw Error(ErrorCode::KindMismatch,
                "kept operand is " + std::string(to_string(kept->kind_class())) + " but the slot needs " +
                    std::string(to_string(slot)),
                ReasonClass::KindMismatch);
  if (n.is_quant() && keep == 1 && uses_var(*kept, n.name))
    throw Error(ErrorCode::BinderEscape, "the kept body still uses variable '" + n.name + "'");
  NodePtr next = replace_at(body, loc->path, kept);
  if (auto reason = classify(current_, *next); reason != ReasonClass::None)
    throw untypable(reason, "splicing node " + std::to_string(node));
  return commit(pred, std::move(next), current_.next_node_id(), {});
}

Outcome EditSession::replace(std::size_t pred, NodeId node, std::string_view block) {
  const NodePtr& body = current_.preds().at(pred).body;
  auto loc = locate(*body, node);
  if (!loc)
    throw Error(ErrorCode::UnknownNode, "no node with id " + std::to_string(node));
  if (loc->binder)
    throw Error(ErrorCode::CannotDeleteBinder, "a quantifier's variable cannot be replaced; rename it instead");
  const Node& old = *loc->node;

  Model scratch = current_;
  const NodeId hole_id = scratch.fresh_node_id();
  scratch.set_body(pred, replace_at(body, loc->path, make_hole(hole_id, slot_class(loc->path))));
  const Target target = Target::hole(hole_id);
  const Block b = find_block(scratch, pred, target, block);

  // Operator swap keeping the operands.
  const bool op_block = b.payload == Block::Payload::Operator || b.payload == Block::Payload::Quantifier;
  if (op_block && !old.kids.empty() && static_cast<std::size_t>(info(b.op).operands) == old.kids.size() &&
      old.is_quant() == (b.payload == Block::Payload::Quantifier)) {
    const auto& oi = info(b.op);
    bool kinds_fit = true;
    for (std::size_t i = 0; i < old.kids.size(); ++i)
      kinds_fit = kinds_fit && old.kids[i]->kind_class() == oi.slot[i];
    if (kinds_fit) {
      IdCounter ids{scratch.next_node_id()};
      NodePtr swapped;
      if (old.is_quant())
        swapped = make_quant(ids(), b.op, old.name, old.binder_id, old.kids[0], old.kids[1]);
      else if (old.kids.size() == 1)
        swapped = make_unary(ids(), b.op, old.kids[0]);
      else
        swapped = make_binary(ids(), b.op, old.kids[0], old.kids[1]);
      NodePtr next = replace_at(body, loc->path, swapped);
      if (classify(current_, *next) == ReasonClass::None) {
        Outcome out;
        out.created = swapped->id;
        out.note = "operands kept";
        return commit(pred, std::move(next), ids.next, std::move(out));
      }
    }
  }

  const Verdict v = check_block(scratch, pred, target, b);
  if (!v.selectable)
    throw not_selectable(b, v);
  IdCounter ids{scratch.next_node_id()};
  NodePtr next = place_block(scratch, pred, target, b, ids);
  Outcome out;
  out.created = scratch.next_node_id();
  if (!old.kids.empty())
    out.note = "operands dropped";
  return commit(pred, std::move(next), ids.next, std::move(out));
}

Outcome EditSession::rename(std::size_t pred, NodeId quant, std::string_view name_view) {
  const NodePtr& body = current_.preds().at(pred).body;
  auto loc = locate(*body, quant);
  if (!loc)
    throw Error(ErrorCode::UnknownNode, "no node with id " + std::to_string(quant));
  const Node& q = *loc->node;
  if (!q.is_quant())
    throw Error(ErrorCode::BadRequest, "node " + std::to_string(quant) + " is not a quantifier");
  const std::string name(name_view);
  if (!is_identifier(name))
    throw Error(ErrorCode::InvalidIdentifier, "'" + name + "' is not a valid identifier");
  if (name == q.name)
    return commit(pred, body, current_.next_node_id(), {});
  auto clash = [&](const std::string& why) {
    return Error(ErrorCode::NameClash, "'" + name + "' " + why);
  };
  if (current_.table().has_sig(name))
    throw clash("names a signature");
  for (const auto& s : current_.sigs())
    for (const auto& f : s.fields)
      if (f.name == name)
        throw clash("names a field");
  if (current_.find_pred(name))
    throw clash("names a predicate");
  for (const auto& v : vars_in_scope(loc->path))
    if (v == name)
      throw clash("is already bound in scope");
  if (binds_name(*q.kids[1], name))
    throw clash("is bound by an inner quantifier");
  if (uses_var(*q.kids[1], name))
    throw clash("is used free in the body");
  NodePtr renamed = make_quant(q.id, q.op, name, q.binder_id, q.kids[0], rename_free(q.kids[1], q.name, name));
  return commit(pred, replace_at(body, loc->path, renamed), current_.next_node_id(), {});
}

Outcome EditSession::paste(std::size_t pred, NodeId hole, std::string_view text) {
  const NodePtr& body = current_.preds().at(pred).body;
  auto loc = locate(*body, hole);
  if (!loc || loc->binder || !loc->node->is_hole())
    throw Error(ErrorCode::UnknownHole, "no hole with id " + std::to_string(hole));
  Model scratch = current_;
  const auto vars = vars_in_scope(loc->path);
  NodePtr fragment = parse_fragment(text, loc->node->hole_class, scratch, vars);
  NodePtr next = replace_at(body, loc->path, fragment);
  if (auto reason = classify(current_, *next); reason != ReasonClass::None)
    throw untypable(reason, "pasting '" + std::string(text) + "'");
  Outcome out;
  out.created = fragment->id;
  return commit(pred, std::move(next), scratch.next_node_id(), std::move(out));
}

Outcome EditSession::undo() {
  if (history_.empty())
    throw Error(ErrorCode::NothingToUndo, "nothing to undo");
  Model prev = std::move(history_.back());
  history_.pop_back();
  prev.reserve_ids_below(current_.next_node_id());
  redo_.push_back(std::move(current_));
  current_ = std::move(prev);
  return {};
}

Outcome EditSession::redo() {
  if (redo_.empty())
    throw Error(ErrorCode::NothingToRedo, "nothing to redo");
  Model next = std::move(redo_.back());
  redo_.pop_back();
  next.reserve_ids_below(current_.next_node_id());
  history_.push_back(std::move(current_));
  current_ = std::move(next);
  return {};
}

Outcome EditSession::apply(const EditAction& a) {
  using T = EditAction::Type;
  if (a.type == T::Undo)
    return undo();
  if (a.type == T::Redo)
    return redo();
  std::pair<std::size_t, NodeId> at;
  try {
    at = resolve(a.node, a.pred);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnknownTarget)
      throw;
    switch (a.type) {
    case T::Insert:
    case T::Paste: throw Error(ErrorCode::UnknownHole, e.what());
    case T::Extend: throw;
    default: throw Error(ErrorCode::UnknownNode, e.what());
    }
  }
  const auto [pred, node] = at;
  switch (a.type) {
  case T::Insert: return insert(pred, node, a.block);
  case T::Extend: return extend(pred, node, a.side, a.block);
  case T::Delete: return delete_subtree(pred, node);
  case T::Splice: return splice(pred, node, a.keep);
  case T::Replace: return replace(pred, node, a.block);
  case T::Rename: return rename(pred, node, a.name);
  case T::Paste: return paste(pred, node, a.text);
  default: break;
  }
  throw Error(ErrorCode::BadRequest, "unsupported action");
}

ReplayResult replay(Model initial, const std::vector<EditAction>& actions, bool halt_on_reject) {
  EditSession session(std::move(initial));
  ReplayResult out;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    ActionResult r;
    r.index = i;
    try {
      r.outcome = session.apply(actions[i]);
    } catch (const Error& e) {
      r.ok = false;
      r.code = e.code();
      r.reason = e.reason();
      r.message = e.what();
    }
    const bool rejected = !r.ok;
    out.results.push_back(std::move(r));
    if (rejected && halt_on_reject) {
      out.halted = true;
      break;
    }
  }
  out.model = session.model();
  return out;
}

ReplayResult replay(std::string_view model_text, const std::vector<EditAction>& actions, bool halt_on_reject,
                    Config config) {
  return replay(parse_model(model_text, config).model, actions, halt_on_reject);
}

std::string action_to_json(const EditAction& a) { return detail::to_json(a).dump(); }

EditAction action_from_json(std::string_view text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const detail::json::exception& e) {
    throw Error(ErrorCode::BadRequest, std::string("malformed action: ") + e.what());
  }
  return detail::action_from(j);
}

std::vector<EditAction> parse_edit_script(std::string_view text) {
  std::vector<EditAction> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
      line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.remove_suffix(1);
    if (line.empty() || line.front() == '#')
      continue;
    try {
      out.push_back(action_from_json(line));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

namespace detail {

namespace {

EditAction::Type type_from(const std::string& s) {
  using T = EditAction::Type;
  for (T t : {T::Insert, T::Extend, T::Delete, T::Splice, T::Replace, T::Rename, T::Paste, T::Undo, T::Redo})
    if (to_string(t) == s)
      return t;
  throw Error(ErrorCode::BadRequest, "unknown action '" + s + "'");
}

std::string string_field(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_string())
    throw Error(ErrorCode::BadRequest, std::string("action needs a string '") + field + "'");
  return it->get<std::string>();
}

Side side_from(const std::string& s) {
  if (s == "left")
    return Side::Left;
  if (s == "right")
    return Side::Right;
  throw Error(ErrorCode::BadRequest, "side must be 'left' or 'right'");
}

} // namespace

NodeRef ref_from(const json& j, std::string_view field) {
  if (j.is_number_unsigned())
    return NodeRef::id(j.get<NodeId>());
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return NodeRef::id(static_cast<NodeId>(j.get<std::int64_t>()));
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    NodeId id = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
    if (ec == std::errc{} && p == s.data() + s.size() && !s.empty())
      return NodeRef::id(id);
    return NodeRef::path(s);
  }
  throw Error(ErrorCode::BadRequest, "'" + std::string(field) + "' must be a node id or a path");
}

json to_json(const EditAction& a) {
  using T = EditAction::Type;
  json j;
  j["action"] = std::string(to_string(a.type));
  if (a.type == T::Undo || a.type == T::Redo)
    return j;
  if (a.pred)
    j["pred"] = *a.pred;
  const char* field = (a.type == T::Insert || a.type == T::Paste) ? "hole" : "node";
  if (const auto* id = std::get_if<NodeId>(&a.node.ref))
    j[field] = *id;
  else
    j[field] = std::get<std::string>(a.node.ref);
  switch (a.type) {
  case T::Extend:
    j["side"] = std::string(to_string(a.side));
    j["block"] = a.block;
    break;
  case T::Insert:
  case T::Replace: j["block"] = a.block; break;
  case T::Splice: j["keep"] = a.keep; break;
  case T::Rename: j["name"] = a.name; break;
  case T::Paste: j["text"] = a.text; break;
  default: break;
  }
  return j;
}

EditAction action_from(const json& j) {
  using T = EditAction::Type;
  if (!j.is_object())
    throw Error(ErrorCode::BadRequest, "an action must be a JSON object");
  EditAction a;
  a.type = type_from(string_field(j, "action"));
  if (a.type == T::Undo || a.type == T::Redo)
    return a;
  if (auto it = j.find("pred"); it != j.end() && !it->is_null()) {
    if (!it->is_string())
      throw Error(ErrorCode::BadRequest, "'pred' must be a string");
    a.pred = it->get<std::string>();
  }
  if (a.type == T::Extend) {
    if (auto it = j.find("anchor"); it != j.end()) {
      if (it->is_string()) {
        const auto s = it->get<std::string>();
        const auto colon = s.rfind(':');
        if (colon == std::string::npos)
          throw Error(ErrorCode::BadRequest, "anchor must look like '<node>:<side>'");
        a.node = ref_from(json(s.substr(0, colon)), "anchor");
        a.side = side_from(s.substr(colon + 1));
      } else if (it->is_object()) {
        a.node = ref_from(it->value("node", json()), "anchor.node");
        a.side = side_from(it->value("side", std::string()));
      } else {
        throw Error(ErrorCode::BadRequest, "'anchor' must be a string or an object");
      }
    } else {
      auto node = j.find("node");
      if (node == j.end())
        throw Error(ErrorCode::BadRequest, "extend needs 'anchor' or 'node'");
      a.node = ref_from(*node, "node");
      a.side = side_from(string_field(j, "side"));
    }
  } else {
    const char* primary = (a.type == T::Insert || a.type == T::Paste) ? "hole" : "node";
    auto it = j.find(primary);
    if (it == j.end())
      it = j.find("target");
    if (it == j.end())
      throw Error(ErrorCode::BadRequest, std::string("action needs '") + primary + "'");
    a.node = ref_from(*it, primary);
  }
  switch (a.type) {
  case T::Insert:
  case T::Extend:
  case T::Replace: a.block = string_field(j, "block"); break;
  case T::Splice: {
    auto it = j.find("keep");
    if (it == j.end() || !it->is_number_unsigned())
      throw Error(ErrorCode::BadRequest, "splice needs a non-negative integer 'keep'");
    a.keep = it->get<std::size_t>();
    break;
  }
  case T::Rename: a.name = string_field(j, "name"); break;
  case T::Paste: a.text = string_field(j, "text"); break;
  default: break;
  }
  return a;
}

} // namespace detail

} // namespace alloyse
