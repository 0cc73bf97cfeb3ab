// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "alloyse/palette.hpp"
#include "alloyse/parser.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <set>

using namespace alloyse;

namespace {

const char* kTrashSigs = "var sig File { var link : lone File }\nvar sig Trash in File {}\n"
                         "var sig Protected in File {}\n";

Model with_body(std::string_view body, std::string_view sigs = kTrashSigs) {
  return parse_model(std::string(sigs) + "pred p { " + std::string(body) + " }\npred q { some univ }\n").model;
}

const PaletteEntry& entry(const std::vector<PaletteEntry>& es, std::string_view id) {
  auto it = std::find_if(es.begin(), es.end(), [&](const PaletteEntry& e) { return e.block.id == id; });
  REQUIRE_MESSAGE(it != es.end(), "missing block " << id);
  return *it;
}

NodeId first_hole(const Model& m) {
  std::vector<const Node*> holes;
  collect_holes(*m.preds()[0].body, holes);
  REQUIRE_FALSE(holes.empty());
  return holes.front()->id;
}

} // namespace

TEST_CASE("root formula hole: quantifiers and comparisons yes, basic sets no") {
  auto m = parse_model(testing::read_fixture("trash_empty.als")).model;
  const auto pred = *m.pred_index("inv10");
  const auto es = enumerate_blocks(m, pred, Target::hole(m.preds()[pred].body->id));
  for (const char* q : {"quant:all", "quant:some", "quant:no", "quant:lone", "quant:one"})
    CHECK(entry(es, q).verdict.selectable);
  for (const char* s : {"File", "Trash", "Protected", "link"}) {
    CHECK_FALSE(entry(es, s).verdict.selectable);
    CHECK(entry(es, s).verdict.reason == ReasonClass::KindMismatch);
  }
  CHECK(entry(es, "=").verdict.selectable);
  CHECK(entry(es, "always").verdict.selectable);
  CHECK(entry(es, "0").verdict.reason == ReasonClass::KindMismatch);
  CHECK(entry(es, "set").verdict.reason == ReasonClass::DeclarationOnly);
  CHECK(entry(es, "pred:inv5").verdict.selectable);
}

TEST_CASE("hole on the right of a negated membership") {
  auto m = with_body("all x : File | x !in (?)");
  const auto es = enumerate_blocks(m, 0, Target::hole(first_hole(m)));
  CHECK(entry(es, "Protected").verdict.selectable);
  CHECK(entry(es, "x").verdict.selectable);
  CHECK(entry(es, "link").verdict.reason == ReasonClass::ArityMismatch);
  CHECK(entry(es, "->").verdict.reason == ReasonClass::ArityMismatch);
  CHECK(entry(es, "&").verdict.selectable);
  CHECK(entry(es, ".").verdict.selectable);
  CHECK(entry(es, "always").verdict.reason == ReasonClass::KindMismatch);
}

TEST_CASE("basic sets are grayed under always") {
  auto m = with_body("always (?)");
  const auto es = enumerate_blocks(m, 0, Target::hole(first_hole(m)));
  for (const char* s : {"File", "Trash", "Protected", "link", "univ", "none", "iden"})
    CHECK(entry(es, s).verdict.reason == ReasonClass::KindMismatch);
  CHECK(entry(es, "=").verdict.selectable);
}

TEST_CASE("disjoint sigs make an intersection operand grayed") {
  auto m = with_body("some A & (?)", "sig A {}\nsig B {}\n");
  const auto es = enumerate_blocks(m, 0, Target::hole(first_hole(m)));
  CHECK(entry(es, "A").verdict.selectable);
  CHECK(entry(es, "B").verdict.reason == ReasonClass::TypeDisjoint);
  CHECK(entry(es, "univ").verdict.selectable);
}

TEST_CASE("palette order and uniqueness") {
  auto m = with_body("(?)");
  const auto blocks = palette(m, 0, Target::hole(first_hole(m)));
  std::set<std::string> ids;
  for (const auto& b : blocks)
    CHECK_MESSAGE(ids.insert(b.id).second, "duplicate " << b.id);
  for (Op op : palette_operators()) {
    const auto n = std::count_if(blocks.begin(), blocks.end(), [&](const Block& b) {
      return (b.payload == Block::Payload::Operator || b.payload == Block::Payload::Quantifier) && b.op == op;
    });
    CHECK(n == 1);
  }
  for (std::size_t i = 1; i < blocks.size(); ++i)
    CHECK(static_cast<int>(blocks[i - 1].category) <= static_cast<int>(blocks[i].category));
  CHECK(std::none_of(blocks.begin(), blocks.end(), [](const Block& b) { return b.id == "pred:p"; }));
}

TEST_CASE("scope variables are offered innermost binding once") {
  auto m = with_body("all x : File | all y : Trash | all x : Protected | (?)");
  const auto blocks = palette(m, 0, Target::hole(first_hole(m)));
  std::vector<std::string> vars;
  for (const auto& b : blocks)
    if (b.payload == Block::Payload::BasicSet && b.leaf == LeafRef::Var)
      vars.push_back(b.name);
  CHECK(vars == std::vector<std::string>{"y", "x"});
}

TEST_CASE("anchors offer only operators that fit the side") {
  auto m = with_body("all x : File | x !in Protected");
  const Node& cmp = *m.preds()[0].body->kids[1];
  const auto right = enumerate_blocks(m, 0, Target::anchor(cmp.id, Side::Right));
  CHECK(entry(right, "=>").verdict.selectable);
  CHECK(entry(right, "and").verdict.selectable);
  CHECK(std::none_of(right.begin(), right.end(), [](const PaletteEntry& e) { return e.block.id == "quant:all"; }));
  CHECK(std::none_of(right.begin(), right.end(), [](const PaletteEntry& e) { return e.block.id == "File"; }));
  const auto left = enumerate_blocks(m, 0, Target::anchor(cmp.id, Side::Left));
  CHECK(entry(left, "!").verdict.selectable);
  CHECK(entry(left, "always").verdict.selectable);
  CHECK(std::none_of(left.begin(), left.end(), [](const PaletteEntry& e) { return e.block.id == "'"; }));

  const Node& prot = *cmp.kids[1];
  const auto set_right = enumerate_blocks(m, 0, Target::anchor(prot.id, Side::Right));
  CHECK(entry(set_right, "&").verdict.selectable);
  CHECK(entry(set_right, "'").verdict.selectable);
  CHECK(entry(set_right, "->").verdict.reason == ReasonClass::ArityMismatch);
  CHECK(entry(set_right, "=>").verdict.reason == ReasonClass::KindMismatch);
}

TEST_CASE("target resolution errors") {
  auto m = with_body("all x : File | x !in Protected");
  const Node& body = *m.preds()[0].body;
  CHECK_THROWS_AS(palette(m, 0, Target::hole(body.id)), Error);
  try {
    palette(m, 0, Target::hole(body.id));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownHole);
  }
  try {
    palette(m, 0, Target::anchor(body.binder_id, Side::Left));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AnchorKindMismatch);
  }
  try {
    palette(m, 0, Target::anchor(99999, Side::Left));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownTarget);
  }
  try {
    find_block(m, 0, Target::anchor(body.id, Side::Left), "File");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownBlock);
  }
}

TEST_CASE("quantifier templates name binders freshly") {
  CHECK(fresh_var_name({}) == "x");
  CHECK(fresh_var_name({"x"}) == "y");
  CHECK(fresh_var_name({"x", "y", "z"}) == "x1");
  CHECK(fresh_var_name({"x", "y", "z", "x1"}) == "y1");
  auto m = with_body("all x : File | (?)");
  IdCounter ids{m.next_node_id()};
  const Block b = find_block(m, 0, Target::hole(first_hole(m)), "quant:some");
  NodePtr body = place_block(m, 0, Target::hole(first_hole(m)), b, ids);
  CHECK(body->kids[1]->name == "y");
  CHECK(b.slots == std::vector<std::string>{"var", "domain", "subformula"});
}

TEST_CASE("hole constraints") {
  auto m = with_body("all x : (?) | x in (?).link");
  std::vector<const Node*> holes;
  collect_holes(*m.preds()[0].body, holes);
  REQUIRE(holes.size() == 2);
  auto dom = hole_constraint(m, 0, holes[0]->id);
  CHECK(dom.label == "domain");
  CHECK(dom.allowed_arities == std::vector<int>{1});
  auto join_left = hole_constraint(m, 0, holes[1]->id);
  CHECK(join_left.label == "lhs");
  CHECK(join_left.allowed_arities == std::vector<int>{1});
  REQUIRE(join_left.last_col);
  CHECK(*join_left.last_col == m.table().sig_type("File"));

  auto m2 = with_body("all x : File | x !in (?)");
  auto rhs = hole_constraint(m2, 0, first_hole(m2));
  CHECK(rhs.allowed_arities == std::vector<int>{1});
  REQUIRE(rhs.must_overlap.count(1));
  CHECK(rhs.must_overlap.at(1) == m2.table().sig_type("File"));
}

TEST_CASE("verdicts agree with the oracle on small holes") {
  const char* bodies[] = {"all x : File | x !in (?)", "always (?)", "some (?) & Trash", "(?)",
                          "all x : File | x.link = (?)", "some A & (?)"};
  for (const char* text : bodies) {
    CAPTURE(text);
    auto m = std::string(text) == "some A & (?)" ? with_body(text, "sig A {}\nsig B {}\n") : with_body(text);
    oracle::Oracle o(m, 2, "p");
    const NodeId hole = first_hole(m);
    for (const auto& e : enumerate_blocks(m, 0, Target::hole(hole))) {
      CAPTURE(e.block.id);
      CHECK(e.verdict.selectable == o.selectable_at_hole(m.preds()[0].body, hole, e.block.id));
    }
  }
}
