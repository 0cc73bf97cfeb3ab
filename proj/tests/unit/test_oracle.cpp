// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "alloyse/parser.hpp"
#include "alloyse/printer.hpp"
#include "oracle.hpp"

using namespace alloyse;

namespace {

const char* kTrashSigs = "var sig File { var link : lone File }\nvar sig Trash in File {}\n"
                         "var sig Protected in File {}\n";

Model with_body(std::string_view body) {
  return parse_model(std::string(kTrashSigs) + "pred p { " + std::string(body) + " }\n").model;
}

} // namespace

TEST_CASE("exhaustive completions of a single hole") {
  auto m = with_body("all x : File | x !in (?)");
  const NodePtr body = m.preds()[0].body;
  auto all = oracle::enumerate_completions(m, {}, body, 0, 2'000'000, "p");
  std::vector<std::string> printed;
  for (const auto& c : all)
    printed.push_back(print_node(*c));
  CHECK(printed == std::vector<std::string>{"all x : File | x !in File", "all x : File | x !in Trash",
                                            "all x : File | x !in Protected", "all x : File | x !in x",
                                            "all x : File | x !in univ"});
}

TEST_CASE("no completion under always for a basic set") {
  auto m = with_body("always (?)");
  const NodePtr body = m.preds()[0].body;
  oracle::Oracle o(m, 2, "p");
  CHECK(o.completion_exists(body));
  CHECK_FALSE(o.selectable_at_hole(body, body->kids[0]->id, "File"));
  CHECK(o.selectable_at_hole(body, body->kids[0]->id, "="));
  CHECK(o.selectable_at_hole(body, body->kids[0]->id, "quant:all"));
  CHECK_FALSE(o.selectable_at_hole(body, body->kids[0]->id, "set"));
}

TEST_CASE("kind quotient agrees with exhaustive enumeration") {
  const char* bodies[] = {
      "all x : File | x !in (?)", "some (?) & Trash", "(?) = (?)'", "some ~(?)", "always (?)",
      "all x : (?) | some x.link", "#(?) < 0", "some (?).link",
  };
  for (const char* text : bodies) {
    CAPTURE(text);
    auto m = with_body(text);
    const NodePtr body = m.preds()[0].body;
    oracle::Oracle o(m, 1, "p");
    const bool quotient = o.completion_exists(body);
    const bool exhaustive = !oracle::enumerate_completions(m, {}, body, 1, 5'000'000, "p").empty();
    CHECK(quotient == exhaustive);
  }
}

TEST_CASE("budget is enforced") {
  auto m = with_body("(?) and (?) and (?)");
  CHECK_THROWS_AS(oracle::enumerate_completions(m, {}, m.preds()[0].body, 2, 1000, "p"), Error);
}

TEST_CASE("anchored blocks wrap the anchored node") {
  auto m = with_body("all x : File | x !in Protected");
  const NodePtr body = m.preds()[0].body;
  oracle::Oracle o(m, 1, "p");
  const NodeId cmp = body->kids[1]->id;
  const NodeId prot = body->kids[1]->kids[1]->id;
  auto wrapped = o.with_block_at_anchor(body, cmp, false, "=>");
  REQUIRE(wrapped);
  CHECK(print_node(*wrapped) == "all x : File | x !in Protected => (?)");
  CHECK(o.selectable_at_anchor(body, cmp, false, "=>"));
  CHECK_FALSE(o.selectable_at_anchor(body, prot, false, "->"));
  CHECK(o.selectable_at_anchor(body, prot, true, "&"));
  CHECK_FALSE(o.with_block_at_anchor(body, prot, true, "'"));
}
