// SPDX-License-Identifier: Apache-2.0
#include "engine.hpp"
#include "serve.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace alloyse_cli {

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kModelError = 1;
constexpr int kContract = 2;
constexpr int kIo = 3;

struct Failure {
  int exit_code;
  std::string message;
};

struct Options {
  std::string format = "table";
  int max_arity = 4;
  bool strict_disjoint_minus = true;
  std::string session_path = ".alloyse-session";
  bool records() const { return format == "records"; }
  json config() const { return {{"max_arity", max_arity}, {"strict_disjoint_minus", strict_disjoint_minus}}; }
};

int exit_code_for(const std::string& code) {
  for (const char* c : {"parse_error", "unknown_sig", "unknown_field", "unknown_ref", "invalid_model", "type_error"})
    if (code == c)
      return kModelError;
  return code == "io_error" ? kIo : kContract;
}

[[noreturn]] void fail_with(const json& error) {
  std::string msg = error.value("message", std::string("request failed"));
  const auto reason = error.value("reason_class", std::string());
  if (!reason.empty())
    msg += " [" + reason + "]";
  throw Failure{exit_code_for(error.value("code", std::string())), error.value("code", std::string()) + ": " + msg};
}

json result_or_fail(const json& resp) {
  if (!resp.value("ok", false))
    fail_with(resp["error"]);
  return resp["result"];
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Failure{kIo, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// The session file: a header line holding the model text and config, then
/// one accepted action per line.
class SessionFile {
public:
  explicit SessionFile(std::string path) : path_(std::move(path)) {}

  void create(const std::string& source, const std::string& text, const json& config) const {
    std::ofstream out(path_, std::ios::trunc);
    if (!out)
      throw Failure{kIo, "cannot write session file '" + path_ + "'"};
    out << json{{"alloyse_session", 1}, {"source", source}, {"model_text", text}, {"config", config}}.dump() << "\n";
  }

  void append(const json& action) const {
    std::ofstream out(path_, std::ios::app);
    if (!out)
      throw Failure{kIo, "cannot write session file '" + path_ + "'"};
    out << action.dump() << "\n";
  }

  /// Rebuilds the engine state recorded in the file.
  Engine restore() const {
    std::ifstream in(path_);
    if (!in)
      throw Failure{kContract, "no model loaded (run 'alloyse load <file.als>' first)"};
    std::string line;
    if (!std::getline(in, line))
      throw Failure{kIo, "session file '" + path_ + "' is empty"};
    json header;
    try {
      header = json::parse(line);
    } catch (const json::exception&) {
      throw Failure{kIo, "session file '" + path_ + "' is corrupt"};
    }
    Engine engine(header.value("config", json::object()));
    result_or_fail(engine.call("load", {{"text", header.value("model_text", std::string())}}));
    while (std::getline(in, line)) {
      if (line.empty())
        continue;
      json action;
      try {
        action = json::parse(line);
      } catch (const json::exception&) {
        throw Failure{kIo, "session file '" + path_ + "' is corrupt"};
      }
      result_or_fail(engine.call("apply", {{"action", action}}));
    }
    return engine;
  }

private:
  std::string path_;
};

void print_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i)
        width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size())
        line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    std::cout << line << "\n";
  }
}

void print_tree(const json& n, int depth) {
  std::string line(static_cast<std::size_t>(depth) * 2, ' ');
  line += "[" + std::to_string(n["id"].get<unsigned long long>()) + "] ";
  line += n["hole"].get<bool>() ? "(?) " + n["slot"].get<std::string>() : n["label"].get<std::string>();
  line += "  <" + n["kind"].get<std::string>() + ">";
  if (n.contains("binder"))
    line += "  var " + n["binder"]["name"].get<std::string>() + " [" +
            std::to_string(n["binder"]["id"].get<unsigned long long>()) + "]";
  std::cout << line << "\n";
  for (const auto& k : n["children"])
    print_tree(k, depth + 1);
}

/// A path reference without --pred goes to the first predicate with holes.
std::string default_pred(Engine& engine) {
  json st = result_or_fail(engine.call("state"));
  for (const auto& p : st["preds"])
    if (!p["complete"].get<bool>())
      return p["name"];
  throw Failure{kContract, "no predicate has holes; pass --pred"};
}

json node_ref(const std::string& s) {
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos)
    return json(std::stoull(s));
  return json(s);
}

json build_action(const std::vector<std::string>& args, const std::optional<std::string>& pred, Engine& engine) {
  if (args.empty())
    throw Failure{kContract, "apply needs an action"};
  if (args[0].starts_with("{")) {
    try {
      return json::parse(args[0]);
    } catch (const json::exception& e) {
      throw Failure{kContract, std::string("malformed action: ") + e.what()};
    }
  }
  const std::string& type = args[0];
  auto need = [&](std::size_t n, const char* usage) {
    if (args.size() != n + 1)
      throw Failure{kContract, std::string("usage: apply ") + usage};
  };
  json a{{"action", type}};
  if (type == "undo" || type == "redo") {
    need(0, type.c_str());
    return a;
  }
  std::string ref;
  if (type == "insert") {
    need(2, "insert <hole> <block>");
    a["hole"] = node_ref(args[1]);
    a["block"] = args[2];
  } else if (type == "extend") {
    need(2, "extend <node>:<left|right> <block>");
    a["anchor"] = args[1];
    a["block"] = args[2];
  } else if (type == "delete") {
    need(1, "delete <node>");
    a["node"] = node_ref(args[1]);
  } else if (type == "splice") {
    need(2, "splice <node> <kept-child>");
    a["node"] = node_ref(args[1]);
    a["keep"] = std::stoull(args[2]);
  } else if (type == "replace") {
    need(2, "replace <node> <block>");
    a["node"] = node_ref(args[1]);
    a["block"] = args[2];
  } else if (type == "rename") {
    need(2, "rename <node> <name>");
    a["node"] = node_ref(args[1]);
    a["name"] = args[2];
  } else if (type == "paste") {
    need(2, "paste <hole> <text>");
    a["hole"] = node_ref(args[1]);
    a["text"] = args[2];
  } else {
    throw Failure{kContract, "unknown action '" + type + "'"};
  }
  if (pred)
    a["pred"] = *pred;
  else if (args[1].starts_with("root"))
    a["pred"] = default_pred(engine);
  return a;
}

json target_params(const std::optional<std::string>& pred, const std::optional<std::string>& hole,
                   const std::optional<std::string>& anchor, Engine& engine) {
  json p = json::object();
  if (hole.has_value() == anchor.has_value())
    throw Failure{kContract, "give exactly one of --hole and --anchor"};
  if (hole)
    p["hole"] = node_ref(*hole);
  else
    p["anchor"] = *anchor;
  if (pred)
    p["pred"] = *pred;
  else if ((hole && hole->starts_with("root")) || (anchor && anchor->starts_with("root")))
    p["pred"] = default_pred(engine);
  return p;
}

void emit_outcome(const Options& opt, const json& result, const std::string& pred_printed) {
  if (opt.records()) {
    std::cout << json{{"outcome", result["outcome"]}, {"text", pred_printed}}.dump() << "\n";
    return;
  }
  const auto& o = result["outcome"];
  std::cout << "ok";
  if (!o["new_holes"].empty())
    std::cout << "  new holes: " << o["new_holes"].dump();
  if (!o["note"].get<std::string>().empty())
    std::cout << "  (" << o["note"].get<std::string>() << ")";
  std::cout << "\n";
  if (!pred_printed.empty())
    std::cout << pred_printed << "\n";
}

std::string printed_pred(Engine& engine, const std::string& pred) {
  if (pred.empty())
    return {};
  return result_or_fail(engine.call("print", {{"pred", pred}}))["text"];
}

} // namespace

int run(int argc, char** argv) {
  CLI::App app{"Structure editor engine for Alloy predicates"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"records", "table"}))
      ->envname("FORMAT");
  app.add_option("--max-arity", opt.max_arity, "Largest relation arity considered")
      ->check(CLI::Range(1, 8))
      ->envname("MAX_ARITY");
  app.add_option("--strict-disjoint-minus", opt.strict_disjoint_minus,
                 "Reject '-' whose operands cannot overlap")
      ->envname("STRICT_DISJOINT_MINUS");
  app.add_option("--session", opt.session_path, "Session file")->envname("ALLOYSE_SESSION");

  std::string load_path;
  auto* load = app.add_subcommand("load", "Load a model and start a new session");
  load->add_option("model", load_path, "Model file (.als)")->required();

  std::optional<std::string> pred, hole, anchor;
  auto* state = app.add_subcommand("state", "Show predicate trees with node ids");
  state->add_option("--pred", pred, "Only this predicate");

  auto* blocks = app.add_subcommand("blocks", "List palette blocks at a hole or anchor");
  blocks->add_option("--pred", pred, "Predicate (needed for path references)");
  blocks->add_option("--hole", hole, "Hole id or path such as root/1");
  blocks->add_option("--anchor", anchor, "Anchor as <node>:<left|right>");

  std::vector<std::string> action_args;
  auto* apply = app.add_subcommand("apply", "Apply one edit action");
  apply->add_option("--pred", pred, "Predicate (needed for path references)");
  apply->add_option("action", action_args, "Action JSON, or: insert|extend|delete|splice|replace|rename|paste|undo|redo args")
      ->required();
  apply->allow_extras(false);

  std::string script_path;
  std::optional<std::string> replay_model;
  bool halt = false;
  auto* replay = app.add_subcommand("replay", "Apply an edit script");
  replay->add_option("script", script_path, "Edit script (.edits)")->required();
  replay->add_option("--model", replay_model, "Load this model first");
  replay->add_flag("--halt-on-reject", halt, "Stop at the first rejected action");

  bool no_holes = false, full_parens = false;
  auto* print = app.add_subcommand("print", "Print the model");
  print->add_option("--pred", pred, "Only this predicate");
  print->add_flag("--no-holes", no_holes, "Fail if holes remain");
  print->add_flag("--full-parens", full_parens, "Parenthesize every operator");

  auto* constraints = app.add_subcommand("constraints", "Show what a hole demands");
  constraints->add_option("--pred", pred, "Predicate (needed for path references)");
  constraints->add_option("--hole", hole, "Hole id or path")->required();

  std::optional<std::string> socket_path;
  auto* serve = app.add_subcommand("serve", "Speak the JSON protocol on stdio or a unix socket");
  serve->add_option("--socket", socket_path, "Unix socket path (length-prefixed frames)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kContract;
  }

  SessionFile file(opt.session_path);
  try {
    if (*serve) {
      return socket_path ? serve_socket(opt.config(), *socket_path) : serve_stdio(opt.config(), std::cin, std::cout);
    }
    if (*load) {
      const std::string text = read_text(load_path);
      Engine engine(opt.config());
      json st = result_or_fail(engine.call("load", {{"text", text}}));
      file.create(load_path, text, opt.config());
      if (opt.records()) {
        for (const auto& p : st["preds"])
          std::cout << json{{"pred", p["name"]}, {"holes", p["holes"]}, {"complete", p["complete"]}}.dump() << "\n";
      } else {
        std::vector<std::vector<std::string>> rows{{"PRED", "HOLES", "BODY"}};
        for (const auto& p : st["preds"])
          rows.push_back({p["name"], std::to_string(p["holes"].size()), p["body"]["text"]});
        std::cout << "loaded " << load_path << "\n";
        print_table(rows);
      }
      return kOk;
    }
    if (*replay) {
      std::optional<Engine> fresh;
      if (replay_model) {
        const std::string text = read_text(*replay_model);
        fresh.emplace(opt.config());
        result_or_fail(fresh->call("load", {{"text", text}}));
        file.create(*replay_model, text, opt.config());
      }
      Engine engine = fresh ? std::move(*fresh) : file.restore();
      const std::string script_text = read_text(script_path);
      json r = result_or_fail(engine.call("replay", {{"script", script_text}, {"halt_on_reject", halt}}));
      std::vector<json> script;
      {
        std::istringstream lines(script_text);
        std::string line;
        while (std::getline(lines, line)) {
          const auto first = line.find_first_not_of(" \t\r");
          if (first == std::string::npos || line[first] == '#')
            continue;
          script.push_back(json::parse(line));
        }
      }
      bool all_ok = true;
      std::vector<std::vector<std::string>> rows{{"#", "ACTION", "RESULT", "REASON"}};
      for (const auto& res : r["results"]) {
        const auto i = res["index"].get<std::size_t>();
        const bool ok = res["ok"].get<bool>();
        if (ok)
          file.append(script[i]);
        all_ok = all_ok && ok;
        if (opt.records()) {
          std::cout << res.dump() << "\n";
        } else {
          rows.push_back({std::to_string(i + 1), script[i].value("action", std::string()),
                          ok ? "accepted" : res["error"]["code"].get<std::string>(),
                          ok ? "" : res["error"]["reason_class"].get<std::string>() + " " +
                                        res["error"]["message"].get<std::string>()});
        }
      }
      if (!opt.records()) {
        print_table(rows);
        if (r["halted"].get<bool>())
          std::cout << "halted at the first rejection\n";
      }
      return all_ok ? kOk : kContract;
    }

    Engine engine = file.restore();
    if (*state) {
      json st = result_or_fail(engine.call("state"));
      for (const auto& p : st["preds"]) {
        if (pred && p["name"] != *pred)
          continue;
        if (opt.records()) {
          std::cout << p.dump() << "\n";
        } else {
          std::cout << "pred " << p["name"].get<std::string>() << "\n";
          print_tree(p["body"], 1);
        }
      }
      return kOk;
    }
    if (*blocks) {
      json b = result_or_fail(engine.call("blocks", target_params(pred, hole, anchor, engine)));
      if (opt.records()) {
        for (const auto& e : b["entries"])
          std::cout << e.dump() << "\n";
        return kOk;
      }
      std::vector<std::vector<std::string>> rows{{"BLOCK", "CATEGORY", "STATUS", "REASON_CLASS"}};
      for (const auto& e : b["entries"])
        rows.push_back({e["id"], e["category"], e["status"], e["reason_class"]});
      print_table(rows);
      return kOk;
    }
    if (*apply) {
      json action = build_action(action_args, pred, engine);
      json r = result_or_fail(engine.call("apply", {{"action", action}}));
      file.append(action);
      emit_outcome(opt, r, printed_pred(engine, r["outcome"]["pred"].get<std::string>()));
      return kOk;
    }
    if (*print) {
      json params{{"allow_holes", !no_holes}, {"parens", full_parens ? "full" : "minimal"}};
      if (pred)
        params["pred"] = *pred;
      json r = result_or_fail(engine.call("print", params));
      if (opt.records())
        std::cout << r.dump() << "\n";
      else
        std::cout << r["text"].get<std::string>() << (r["text"].get<std::string>().ends_with("\n") ? "" : "\n");
      return kOk;
    }
    if (*constraints) {
      json p = target_params(pred, hole, std::nullopt, engine);
      json c = result_or_fail(engine.call("constraints", p));
      if (opt.records()) {
        std::cout << c.dump() << "\n";
      } else {
        std::vector<std::vector<std::string>> rows{{"FIELD", "VALUE"}};
        for (auto it = c.begin(); it != c.end(); ++it)
          rows.push_back({it.key(), it.value().is_string() ? it.value().get<std::string>() : it.value().dump()});
        print_table(rows);
      }
      return kOk;
    }
  } catch (const Failure& f) {
    std::cerr << "alloyse: " << f.message << "\n";
    return f.exit_code;
  } catch (const json::exception& e) {
    std::cerr << "alloyse: malformed input: " << e.what() << "\n";
    return kContract;
  } catch (const std::exception& e) {
    std::cerr << "alloyse: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}

} // namespace alloyse_cli

int main(int argc, char** argv) { return alloyse_cli::run(argc, argv); }
