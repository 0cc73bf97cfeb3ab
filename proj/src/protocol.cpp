// SPDX-License-Identifier: Apache-2.0
#include "alloyse/protocol.hpp"

#include "alloyse/edit.hpp"
#include "alloyse/printer.hpp"
#include "alloyse/version.hpp"
#include "json_codec.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace alloyse {

namespace {

using detail::json;

constexpr const char* kMethods[] = {"hello", "load",  "state",       "blocks", "apply",   "undo",
                                    "redo",  "print", "constraints", "replay", "shutdown"};

/// A failure that is not an engine Error: carries its own wire code.
struct WireError {
  std::string code;
  std::string message;
  json extra = json::object();
};

json error_json(const Error& e) {
  json err{{"code", std::string(to_string(e.code()))},
           {"message", e.what()},
           {"reason_class", std::string(to_string(e.reason()))}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err["line"] = pe->span().start.line;
    err["column"] = pe->span().start.column;
    err["expected"] = pe->expected();
  }
  return err;
}

std::string label_of(const Node& n) {
  switch (n.op) {
  case Op::Hole: return "(?)";
  case Op::Leaf:
  case Op::PredCall: return n.name;
  case Op::IntLit: return std::to_string(n.value);
  default: return std::string(info(n.op).symbol);
  }
}

json node_json(const Node& n, std::vector<PathStep>& path) {
  json j{{"id", n.id},
         {"kind", std::string(shape_name(n.kind_class()))},
         {"form", std::string(to_string(n.form()))},
         {"label", label_of(n)},
         {"hole", n.is_hole()},
         {"slot", std::string(slot_label(path))},
         {"text", print_node(n)}};
  json anchors = json::array();
  if (!n.is_hole())
    for (const char* side : {"left", "right"})
      anchors.push_back({{"side", side}, {"shape", std::string(shape_name(n.kind_class()))}});
  j["anchors"] = std::move(anchors);
  if (n.is_quant())
    j["binder"] = {{"id", n.binder_id}, {"name", n.name}};
  if (n.op == Op::Leaf)
    j["ref"] = std::string(to_string(n.leaf));
  json kids = json::array();
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    path.push_back({&n, i});
    kids.push_back(node_json(*n.kids[i], path));
    path.pop_back();
  }
  j["children"] = std::move(kids);
  return j;
}

json state_json(const EditSession& s) {
  const Model& m = s.model();
  json preds = json::array();
  for (std::size_t i = 0; i < m.preds().size(); ++i) {
    const auto& p = m.preds()[i];
    std::vector<const Node*> holes;
    collect_holes(*p.body, holes);
    json hole_ids = json::array();
    for (const auto* h : holes)
      hole_ids.push_back(h->id);
    std::vector<PathStep> path;
    preds.push_back({{"name", p.name},
                     {"index", i},
                     {"complete", holes.empty()},
                     {"holes", std::move(hole_ids)},
                     {"body", node_json(*p.body, path)}});
  }
  return {{"preds", std::move(preds)},
          {"can_undo", s.can_undo()},
          {"can_redo", s.can_redo()},
          {"text", print_model(m)}};
}

json outcome_json(const Outcome& o) {
  json j{{"pred", o.pred}, {"new_holes", o.new_holes}, {"note", o.note}};
  j["created"] = o.created ? json(*o.created) : json(nullptr);
  return j;
}

std::optional<std::string> opt_string(const json& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end() || it->is_null())
    return std::nullopt;
  if (!it->is_string())
    throw Error(ErrorCode::BadRequest, std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

bool opt_bool(const json& params, const char* key, bool fallback) {
  auto it = params.find(key);
  if (it == params.end() || it->is_null())
    return fallback;
  if (!it->is_boolean())
    throw Error(ErrorCode::BadRequest, std::string("'") + key + "' must be a boolean");
  return it->get<bool>();
}

Config config_from(const json& j, Config base) {
  if (j.is_null())
    return base;
  if (!j.is_object())
    throw Error(ErrorCode::BadRequest, "'config' must be an object");
  if (auto it = j.find("max_arity"); it != j.end()) {
    if (!it->is_number_integer() || it->get<int>() < 1 || it->get<int>() > 8)
      throw Error(ErrorCode::BadRequest, "'max_arity' must be an integer in 1..8");
    base.max_arity = it->get<int>();
  }
  base.strict_disjoint_minus = opt_bool(j, "strict_disjoint_minus", base.strict_disjoint_minus);
  return base;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw WireError{"io_error", "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Every body must admit a well-typed completion; complete bodies must type.
void require_typable(const Model& m) {
  for (const auto& p : m.preds()) {
    if (count_holes(*p.body) == 0) {
      TypeResult r = check_pred(m, p);
      if (r.ok())
        continue;
      std::string msg = "pred " + p.name + ": " + r.error->message;
      if (!r.error->detail.empty() && msg.find(r.error->detail) == std::string::npos)
        msg += ". " + r.error->detail;
      json extra{{"pred", p.name},
                 {"node", r.error->node},
                 {"type_error", std::string(to_string(r.error->cls))},
                 {"detail", r.error->detail}};
      throw WireError{"type_error", msg, std::move(extra)};
    }
    if (ReasonClass rc = classify(m, *p.body); rc != ReasonClass::None)
      throw WireError{"type_error", "pred " + p.name + " has no well-typed completion",
                      {{"pred", p.name}, {"reason_class", std::string(to_string(rc))}}};
  }
}

Target target_from(const EditSession& s, const json& params, std::size_t& pred) {
  const auto pred_name = opt_string(params, "pred");
  if (auto it = params.find("hole"); it != params.end()) {
    auto [p, id] = s.resolve(detail::ref_from(*it, "hole"), pred_name);
    pred = p;
    return Target::hole(id);
  }
  if (params.contains("anchor")) {
    json probe{{"action", "extend"}, {"anchor", params["anchor"]}, {"block", ""}};
    if (pred_name)
      probe["pred"] = *pred_name;
    EditAction a = detail::action_from(probe);
    auto [p, id] = s.resolve(a.node, pred_name);
    pred = p;
    return Target::anchor(id, a.side);
  }
  throw Error(ErrorCode::BadRequest, "target needs 'hole' or 'anchor'");
}

json rel_json(const Model& m, const RelType& t) { return m.table().format(t); }

} // namespace

struct ProtocolSession::State {
  Config defaults;
  std::optional<EditSession> session;
  bool closed = false;

  EditSession& need_session() {
    if (!session)
      throw WireError{"no_model", "no model is loaded; send 'load' first"};
    return *session;
  }

  json dispatch(const std::string& method, const json& params) {
    if (method == "hello")
      return hello_json();
    if (method == "load")
      return load(params);
    if (method == "state")
      return state_json(need_session());
    if (method == "blocks")
      return blocks(params);
    if (method == "apply")
      {
      auto it = params.find("action");
      return apply(it != params.end() && it->is_object() ? *it : params);
    }
    if (method == "undo")
      return apply(json{{"action", "undo"}});
    if (method == "redo")
      return apply(json{{"action", "redo"}});
    if (method == "print")
      return print(params);
    if (method == "constraints")
      return constraints(params);
    if (method == "replay")
      return replay_actions(params);
    if (method == "shutdown") {
      closed = true;
      return json::object();
    }
    throw WireError{"unknown_method", "unknown method '" + method + "'"};
  }

  static json hello_json() {
    return {{"protocol", kProtocolVersion}, {"version", kVersion}, {"capabilities", kMethods}};
  }

  json load(const json& params) {
    const auto path = opt_string(params, "path");
    const auto text = opt_string(params, "text");
    if (path.has_value() == text.has_value())
      throw Error(ErrorCode::BadRequest, "load needs exactly one of 'path' and 'text'");
    const Config cfg = config_from(params.value("config", json()), defaults);
    const std::string source = path ? read_file(*path) : *text;
    Model m = parse_model(source, cfg).model;
    require_typable(m);
    session.emplace(std::move(m));
    return state_json(*session);
  }

  json blocks(const json& params) {
    EditSession& s = need_session();
    std::size_t pred = 0;
    const Target t = target_from(s, params, pred);
    json entries = json::array();
    for (const auto& e : enumerate_blocks(s.model(), pred, t)) {
      entries.push_back({{"id", e.block.id},
                         {"label", e.block.label},
                         {"category", std::string(to_string(e.block.category))},
                         {"shape", std::string(shape_name(e.block.result))},
                         {"slots", e.block.slots},
                         {"status", e.verdict.selectable ? "Selectable" : "Grayed"},
                         {"reason_class", std::string(to_string(e.verdict.reason))},
                         {"reason", e.verdict.human_reason}});
    }
    json target{{"pred", s.model().preds()[pred].name}, {"node", t.node}};
    target["kind"] = t.kind == Target::Kind::Hole ? "hole" : "anchor";
    if (t.kind == Target::Kind::Anchor)
      target["side"] = std::string(to_string(t.side));
    return {{"target", std::move(target)}, {"entries", std::move(entries)}};
  }

  json apply(const json& action) {
    EditSession& s = need_session();
    Outcome o = s.apply(detail::action_from(action));
    return {{"outcome", outcome_json(o)}, {"state", state_json(s)}};
  }

  json print(const json& params) {
    EditSession& s = need_session();
    PrintOptions opts;
    opts.allow_holes = opt_bool(params, "allow_holes", true);
    const auto parens = opt_string(params, "parens").value_or("minimal");
    if (parens != "minimal" && parens != "full")
      throw Error(ErrorCode::BadRequest, "'parens' must be 'minimal' or 'full'");
    opts.parens = parens == "full" ? ParenPolicy::Full : ParenPolicy::Minimal;
    if (auto pred = opt_string(params, "pred")) {
      const PredDecl* p = s.model().find_pred(*pred);
      if (!p)
        throw Error(ErrorCode::UnknownPred, "unknown predicate '" + *pred + "'");
      return {{"text", print_pred(*p, opts)}};
    }
    return {{"text", print_model(s.model(), opts)}};
  }

  json constraints(const json& params) {
    EditSession& s = need_session();
    std::size_t pred = 0;
    const Target t = target_from(s, params, pred);
    if (t.kind != Target::Kind::Hole)
      throw Error(ErrorCode::BadRequest, "constraints needs a 'hole'");
    const Model& m = s.model();
    const HoleConstraint c = hole_constraint(m, pred, t.node);
    json overlap = json::object();
    for (const auto& [arity, type] : c.must_overlap)
      overlap[std::to_string(arity)] = rel_json(m, type);
    json j{{"hole", t.node},
           {"kind", std::string(shape_name(c.kind))},
           {"label", c.label},
           {"allowed_arities", c.allowed_arities},
           {"must_overlap", std::move(overlap)}};
    j["first_col"] = c.first_col ? rel_json(m, *c.first_col) : json(nullptr);
    j["last_col"] = c.last_col ? rel_json(m, *c.last_col) : json(nullptr);
    return j;
  }

  json replay_actions(const json& params) {
    EditSession& s = need_session();
    std::vector<EditAction> actions;
    if (auto script = opt_string(params, "script")) {
      actions = parse_edit_script(*script);
    } else {
      auto it = params.find("actions");
      if (it == params.end() || !it->is_array())
        throw Error(ErrorCode::BadRequest, "replay needs 'actions' or 'script'");
      for (const auto& a : *it)
        actions.push_back(detail::action_from(a));
    }
    const bool halt = opt_bool(params, "halt_on_reject", false);
    json results = json::array();
    bool halted = false;
    for (std::size_t i = 0; i < actions.size(); ++i) {
      json r{{"index", i}};
      try {
        r["outcome"] = outcome_json(s.apply(actions[i]));
        r["ok"] = true;
      } catch (const Error& e) {
        r["ok"] = false;
        r["error"] = error_json(e);
      }
      const bool rejected = !r["ok"].get<bool>();
      results.push_back(std::move(r));
      if (rejected && halt) {
        halted = true;
        break;
      }
    }
    return {{"results", std::move(results)}, {"halted", halted}, {"state", state_json(s)}};
  }
};

ProtocolSession::ProtocolSession(Config defaults) : state_(std::make_unique<State>()) {
  state_->defaults = defaults;
}
ProtocolSession::~ProtocolSession() = default;
ProtocolSession::ProtocolSession(ProtocolSession&&) noexcept = default;
ProtocolSession& ProtocolSession::operator=(ProtocolSession&&) noexcept = default;

bool ProtocolSession::closed() const { return state_->closed; }

std::string ProtocolSession::hello() const {
  return json{{"id", nullptr}, {"ok", true}, {"method", "hello"}, {"result", State::hello_json()}}.dump();
}

std::string ProtocolSession::handle(std::string_view request) {
  json id = nullptr;
  auto fail = [&](const std::string& code, const std::string& message, ReasonClass rc = ReasonClass::None,
                  json extra = json::object()) {
    json err{{"code", code}, {"message", message}, {"reason_class", std::string(to_string(rc))}};
    err.update(extra);
    return json{{"id", id}, {"ok", false}, {"error", std::move(err)}}.dump();
  };
  json req;
  try {
    req = json::parse(request);
  } catch (const json::exception& e) {
    return fail("malformed_request", std::string("request is not valid JSON: ") + e.what());
  }
  if (!req.is_object())
    return fail("malformed_request", "request must be a JSON object");
  if (auto it = req.find("id"); it != req.end()) {
    if (!it->is_number_integer())
      return fail("malformed_request", "'id' must be an integer");
    id = *it;
  } else {
    return fail("malformed_request", "request needs an integer 'id'");
  }
  auto method = req.find("method");
  if (method == req.end() || !method->is_string())
    return fail("malformed_request", "request needs a string 'method'");
  json params = req.value("params", json::object());
  if (params.is_null())
    params = json::object();
  if (!params.is_object())
    return fail("malformed_request", "'params' must be an object");
  if (state_->closed)
    return fail("closed", "session was shut down");
  try {
    json result = state_->dispatch(method->get<std::string>(), params);
    return json{{"id", id}, {"ok", true}, {"result", std::move(result)}}.dump();
  } catch (const WireError& e) {
    ReasonClass rc = ReasonClass::None;
    return fail(e.code, e.message, rc, e.extra);
  } catch (const Error& e) {
    json err = error_json(e);
    return json{{"id", id}, {"ok", false}, {"error", std::move(err)}}.dump();
  } catch (const json::exception& e) {
    return fail("bad_params", e.what());
  } catch (const std::exception& e) {
    return fail("internal_error", e.what());
  }
}

} // namespace alloyse
