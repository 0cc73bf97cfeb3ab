// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "alloyse/edit.hpp"
#include "alloyse/printer.hpp"
#include "fixtures.hpp"

#include <random>

using namespace alloyse;

namespace {

const char* kTrashSigs = "var sig File { var link : lone File }\nvar sig Trash in File {}\n"
                         "var sig Protected in File {}\n";

EditSession session_with(std::string_view body) {
  return EditSession(parse_model(std::string(kTrashSigs) + "pred p { " + std::string(body) + " }\n").model);
}

EditSession empty_trash() { return EditSession(parse_model(testing::read_fixture("trash_empty.als")).model); }

NodeId at(const EditSession& s, const std::string& path, const std::string& pred = "p") {
  return s.resolve(NodeRef::path(path), pred).second;
}

std::string body_text(const EditSession& s, const std::string& pred = "p") {
  return print_node(*s.model().find_pred(pred)->body);
}

std::size_t idx(const EditSession& s, const std::string& pred = "p") { return *s.model().pred_index(pred); }

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a rejection");
  return ErrorCode::BadRequest;
}

template <class F>
ReasonClass reason_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.reason();
  }
  FAIL("expected a rejection");
  return ReasonClass::None;
}

} // namespace

TEST_CASE("building inv5 from an empty body") {
  auto s = empty_trash();
  const auto p = idx(s, "inv5");
  auto o = s.insert(p, at(s, "root", "inv5"), "quant:all");
  CHECK(body_text(s, "inv5") == "all x : (?) | (?)");
  REQUIRE(o.new_holes.size() == 2);
  s.insert(p, o.new_holes[0], "File");
  CHECK(body_text(s, "inv5") == "all x : File | (?)");
  auto imp = s.insert(p, o.new_holes[1], "=>");
  auto lhs = s.insert(p, imp.new_holes[0], "!in");
  s.insert(p, lhs.new_holes[0], "x");
  s.insert(p, lhs.new_holes[1], "Protected");
  auto rhs = s.insert(p, imp.new_holes[1], "in");
  s.insert(p, rhs.new_holes[0], "x");
  s.insert(p, rhs.new_holes[1], "Trash");
  CHECK(body_text(s, "inv5") == "all x : File | x !in Protected => x in Trash");
  CHECK(s.history_size() == 9);
}

TEST_CASE("building inv10 from an empty body") {
  auto s = empty_trash();
  const auto p = idx(s, "inv10");
  auto a = s.insert(p, at(s, "root", "inv10"), "always");
  auto eq = s.insert(p, a.new_holes[0], "=");
  s.insert(p, eq.new_holes[0], "Protected");
  auto prime = s.insert(p, eq.new_holes[1], "'");
  s.insert(p, prime.new_holes[0], "Protected");
  CHECK(body_text(s, "inv10") == "always Protected = Protected'");
}

TEST_CASE("insert refuses grayed blocks with the reason") {
  auto s = empty_trash();
  const auto p = idx(s, "inv10");
  auto a = s.insert(p, at(s, "root", "inv10"), "always");
  const NodeId h = a.new_holes[0];
  CHECK(reason_of([&] { s.insert(p, h, "Protected"); }) == ReasonClass::KindMismatch);
  CHECK(code_of([&] { s.insert(p, h, "Protected"); }) == ErrorCode::BlockNotSelectable);
  CHECK(code_of([&] { s.insert(p, h, "nosuch"); }) == ErrorCode::UnknownBlock);
  CHECK(code_of([&] { s.insert(p, 4242, "always"); }) == ErrorCode::UnknownHole);
  CHECK(code_of([&] { s.insert(p, h, "set"); }) == ErrorCode::BlockNotSelectable);
  CHECK(s.history_size() == 1);
}

TEST_CASE("extension points grow a domain in either order") {
  auto right = session_with("all x : File | some x");
  auto o = right.extend(0, at(right, "root/0"), Side::Right, "&");
  right.insert(0, o.new_holes.at(0), "Trash");
  CHECK(body_text(right) == "all x : File & Trash | some x");

  auto left = session_with("all x : File | some x");
  auto o2 = left.extend(0, at(left, "root/0"), Side::Left, "&");
  left.insert(0, o2.new_holes.at(0), "Trash");
  CHECK(body_text(left) == "all x : Trash & File | some x");
}

TEST_CASE("squared anchor accepts implication") {
  auto s = session_with("all x : File | x !in Protected");
  auto o = s.extend(0, at(s, "root/1"), Side::Right, "=>");
  CHECK(body_text(s) == "all x : File | x !in Protected => (?)");
  REQUIRE(o.new_holes.size() == 1);
  CHECK(code_of([&] { s.extend(0, at(s, "root/0"), Side::Right, "=>"); }) == ErrorCode::BlockNotSelectable);
  CHECK(code_of([&] { s.extend(0, at(s, "root/0"), Side::Left, "'"); }) == ErrorCode::AnchorKindMismatch);
  CHECK(code_of([&] { s.extend(0, o.new_holes[0], Side::Left, "!"); }) == ErrorCode::AnchorKindMismatch);
}

TEST_CASE("prefix and postfix wrapping") {
  auto s = session_with("Protected = Protected");
  s.extend(0, at(s, "root/1"), Side::Right, "'");
  CHECK(body_text(s) == "Protected = Protected'");
  s.extend(0, at(s, "root"), Side::Left, "always");
  CHECK(body_text(s) == "always Protected = Protected'");
}

TEST_CASE("delete replaces a subtree with a hole of its slot class") {
  auto s = session_with("all x : File & Trash | x !in Protected => x in Trash");
  s.delete_subtree(0, at(s, "root/1/0/1"));
  CHECK(body_text(s) == "all x : File & Trash | x !in (?) => x in Trash");
  s.delete_subtree(0, at(s, "root/0"));
  CHECK(body_text(s) == "all x : (?) | x !in (?) => x in Trash");
  s.delete_subtree(0, at(s, "root"));
  CHECK(body_text(s) == "(?)");
  CHECK(s.model().find_pred("p")->body->hole_class == KindClass::Formula);
  auto t = session_with("all x : File | some x");
  CHECK(code_of([&] { t.delete_subtree(0, t.model().find_pred("p")->body->binder_id); }) ==
        ErrorCode::CannotDeleteBinder);
  CHECK(code_of([&] { t.delete_subtree(0, 4242); }) == ErrorCode::UnknownNode);
}

TEST_CASE("splice keeps one operand") {
  auto s = session_with("all x : File & Trash | some x");
  s.splice(0, at(s, "root/0"), 0);
  CHECK(body_text(s) == "all x : File | some x");

  auto t = session_with("always (some File since (?))");
  t.splice(0, at(t, "root"), 0);
  CHECK(body_text(t) == "some File since (?)");

  auto u = session_with("some File");
  CHECK(code_of([&] { u.splice(0, at(u, "root"), 0); }) == ErrorCode::KindMismatch);
  auto v = session_with("all x : File | some x");
  CHECK(code_of([&] { v.splice(0, at(v, "root"), 1); }) == ErrorCode::BinderEscape);
  auto w = session_with("all x : File | some x & (Protected.link)");
  CHECK(code_of([&] { w.splice(0, at(w, "root/1/0/1"), 1); }) == ErrorCode::Untypable);
}

TEST_CASE("replace swaps operators or leaves") {
  auto s = session_with("some File & Trash");
  auto o = s.replace(0, at(s, "root/0"), "+");
  CHECK(body_text(s) == "some File + Trash");
  CHECK(o.note == "operands kept");

  auto t = session_with("all x : File | x in Trash");
  t.replace(0, at(t, "root/1/1"), "Protected");
  CHECK(body_text(t) == "all x : File | x in Protected");
  CHECK(reason_of([&] { t.replace(0, at(t, "root/1/1"), "->"); }) == ReasonClass::ArityMismatch);
  CHECK(body_text(t) == "all x : File | x in Protected");

  auto u = session_with("some File & Trash");
  auto swapped = u.replace(0, at(u, "root/0"), "->");
  CHECK(body_text(u) == "some File -> Trash");
  CHECK(swapped.note == "operands kept");
  auto dropped = u.replace(0, at(u, "root/0"), "~");
  CHECK(body_text(u) == "some ~(?)");
  CHECK(dropped.note == "operands dropped");
}

TEST_CASE("rename binders") {
  auto s = session_with("all x : File | x !in Protected => x in Trash");
  s.rename(0, at(s, "root"), "f");
  CHECK(body_text(s) == "all f : File | f !in Protected => f in Trash");
  CHECK(code_of([&] { s.rename(0, at(s, "root"), "File"); }) == ErrorCode::NameClash);
  CHECK(code_of([&] { s.rename(0, at(s, "root"), "link"); }) == ErrorCode::NameClash);
  CHECK(code_of([&] { s.rename(0, at(s, "root"), "all"); }) == ErrorCode::InvalidIdentifier);
  CHECK(code_of([&] { s.rename(0, at(s, "root"), "9x"); }) == ErrorCode::InvalidIdentifier);

  auto n = session_with("all x : File | some x and (all x : Trash | x in File)");
  n.rename(0, at(n, "root/1/1"), "t");
  CHECK(body_text(n) == "all x : File | some x and all t : Trash | t in File");
  auto c = session_with("all x : File | all y : Trash | x in y");
  CHECK(code_of([&] { c.rename(0, at(c, "root/1"), "x"); }) == ErrorCode::NameClash);
  CHECK(code_of([&] { c.rename(0, at(c, "root"), "y"); }) == ErrorCode::NameClash);
}

TEST_CASE("undo and redo restore snapshots without reusing ids") {
  auto s = session_with("(?)");
  const std::string before = body_text(s);
  const NodeId next_before = s.model().next_node_id();
  s.insert(0, at(s, "root"), "quant:some");
  const std::string after = body_text(s);
  const NodeId next_after = s.model().next_node_id();
  s.undo();
  CHECK(body_text(s) == before);
  CHECK(s.model().next_node_id() >= next_after);
  CHECK(next_after > next_before);
  s.redo();
  CHECK(body_text(s) == after);
  CHECK(code_of([&] { s.redo(); }) == ErrorCode::NothingToRedo);
  s.undo();
  auto o = s.insert(0, at(s, "root"), "quant:all");
  CHECK(*o.created >= next_after);
  CHECK_FALSE(s.can_redo());
  s.undo();
  CHECK(code_of([&] { s.undo(); }) == ErrorCode::NothingToUndo);
}

TEST_CASE("paste parses a fragment into a hole") {
  auto s = session_with("all x : File | x !in (?)");
  s.paste(0, at(s, "root/1/1"), "File.link");
  CHECK(body_text(s) == "all x : File | x !in File.link");
  auto t = session_with("all x : File | x !in (?)");
  CHECK(reason_of([&] { t.paste(0, at(t, "root/1/1"), "link"); }) == ReasonClass::ArityMismatch);
  CHECK(code_of([&] { t.paste(0, at(t, "root/1/1"), "some File"); }) == ErrorCode::KindMismatch);
  CHECK(code_of([&] { t.paste(0, at(t, "root/1/1"), "File +"); }) == ErrorCode::ParseError);
}

TEST_CASE("action JSON round-trips") {
  const char* lines[] = {
      R"({"action":"insert","pred":"inv5","hole":"root","block":"quant:all"})",
      R"({"action":"insert","hole":12,"block":"File"})",
      R"({"action":"extend","anchor":"7:left","block":"&"})",
      R"({"action":"delete","node":3})",
      R"({"action":"splice","node":3,"keep":1})",
      R"({"action":"replace","node":3,"block":"+"})",
      R"({"action":"rename","node":3,"name":"f"})",
      R"({"action":"paste","hole":4,"text":"File.link"})",
      R"({"action":"undo"})",
      R"({"action":"redo"})",
  };
  for (const char* l : lines) {
    CAPTURE(l);
    EditAction a = action_from_json(l);
    EditAction b = action_from_json(action_to_json(a));
    CHECK(action_to_json(a) == action_to_json(b));
  }
  EditAction e = action_from_json(R"({"action":"extend","anchor":{"node":7,"side":"left"},"block":"&"})");
  CHECK(e.side == Side::Left);
  CHECK(std::get<NodeId>(e.node.ref) == 7);
  for (const char* bad : {"[]", "{}", R"({"action":"fly"})", R"({"action":"insert","hole":1})",
                          R"({"action":"extend","anchor":"7:up","block":"&"})", "{", R"({"action":"splice","node":1,"keep":-1})"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { action_from_json(bad); }) == ErrorCode::BadRequest);
  }
}

TEST_CASE("edit scripts skip comments and name failing lines") {
  auto actions = parse_edit_script("# build\n\n{\"action\":\"undo\"}\n  # indented\n{\"action\":\"redo\"}\n");
  CHECK(actions.size() == 2);
  try {
    parse_edit_script("{\"action\":\"undo\"}\n{oops}\n");
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).rfind("line 2:", 0) == 0);
  }
}

TEST_CASE("replay records rejections and optionally halts") {
  const std::string text = testing::read_fixture("trash_empty.als");
  auto none = replay(text, {});
  CHECK(print_model(none.model) == print_model(parse_model(text).model));

  auto script = parse_edit_script(R"({"action":"insert","pred":"inv10","hole":"root","block":"always"}
{"action":"insert","pred":"inv10","hole":"root/0","block":"Protected"}
{"action":"insert","pred":"inv10","hole":"root/0","block":"="}
)");
  auto r = replay(text, script);
  REQUIRE(r.results.size() == 3);
  CHECK(r.results[0].ok);
  CHECK_FALSE(r.results[1].ok);
  CHECK(r.results[1].code == ErrorCode::BlockNotSelectable);
  CHECK(r.results[1].reason == ReasonClass::KindMismatch);
  CHECK(r.results[2].ok);
  CHECK_FALSE(r.halted);

  auto h = replay(text, script, true);
  CHECK(h.results.size() == 2);
  CHECK(h.halted);
  CHECK(print_model(replay(text, script).model) == print_model(r.model));
}

TEST_CASE("random accepted actions keep bodies typable") {
  std::mt19937 rng(7);
  for (int round = 0; round < 40; ++round) {
    auto s = empty_trash();
    for (int step = 0; step < 12; ++step) {
      const auto p = static_cast<std::size_t>(rng() % s.model().preds().size());
      std::vector<const Node*> holes;
      collect_holes(*s.model().preds()[p].body, holes);
      if (holes.empty())
        continue;
      const NodeId h = holes[rng() % holes.size()]->id;
      std::vector<std::string> ok;
      for (const auto& e : enumerate_blocks(s.model(), p, Target::hole(h)))
        if (e.verdict.selectable)
          ok.push_back(e.block.id);
      REQUIRE_FALSE(ok.empty());
      s.insert(p, h, ok[rng() % ok.size()]);
      for (const auto& pd : s.model().preds()) {
        CHECK(body_typable(s.model(), *pd.body));
        if (count_holes(*pd.body) == 0)
          CHECK(check_pred(s.model(), pd).ok());
      }
    }
  }
}
