// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "alloyse/parser.hpp"
#include "alloyse/possible_type.hpp"
#include "oracle.hpp"

#include <algorithm>

using namespace alloyse;

namespace {

const char* kTrashSigs = "var sig File { var link : lone File }\nvar sig Trash in File {}\n"
                         "var sig Protected in File {}\n";

struct Fixture {
  ParsedModel pm;
  NodePtr body;
};

Fixture with_body(std::string_view body, std::string_view sigs = kTrashSigs) {
  auto pm = parse_model(std::string(sigs) + "pred p { " + std::string(body) + " }\n");
  NodePtr b = pm.model.find_pred("p")->body;
  return {std::move(pm), b};
}

bool subset_of(const RelType& t, const RelType& bound) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!bound.contains(t.tuple(i)))
      return false;
  return true;
}

bool represents(const PossibleType& pt, const Kind& k) {
  if (k.cls == KindClass::Formula)
    return pt.formula;
  if (k.cls == KindClass::Int)
    return pt.integer;
  return std::any_of(pt.exprs.begin(), pt.exprs.end(), [&](const AbsRel& a) {
    if (a.arity != k.type.arity())
      return false;
    if (a.bound && !subset_of(k.type, *a.bound))
      return false;
    return k.type.empty() ? a.may_empty : a.may_nonempty;
  });
}

} // namespace

TEST_CASE("a bare hole is maximal for its class") {
  auto f = with_body("(?)");
  auto pt = possible_type(f.pm.model, *f.body);
  CHECK(pt.formula);
  CHECK_FALSE(pt.integer);
  CHECK(pt.exprs.empty());
  auto e = PossibleType::maximal(KindClass::Expr, 4);
  CHECK(e.arities() == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("hole-free subtrees are analysed exactly") {
  for (const char* text : {"File & Trash", "link.File", "~link", "^link", "*link", "Trash - Protected",
                           "File <: link", "link :> Trash", "File -> File", "link ++ link", "none"}) {
    auto f = with_body("some (?)");
    NodePtr e = parse_fragment(text, KindClass::Expr, f.pm.model);
    auto k = type_of(f.pm.model, *e);
    REQUIRE(k.ok());
    auto pt = possible_type(f.pm.model, *e);
    REQUIRE(pt.exprs.size() == 1);
    CHECK(pt.exprs[0].arity == k.kind->type.arity());
    REQUIRE(pt.exprs[0].bound);
    CHECK(*pt.exprs[0].bound == k.kind->type);
    CHECK(pt.exprs[0].may_empty == k.kind->type.empty());
    CHECK(pt.exprs[0].may_nonempty == !k.kind->type.empty());
  }
}

TEST_CASE("ill-typed hole-free subtree is untypable") {
  auto f = with_body("some (?)");
  NodePtr e = parse_fragment("File.File", KindClass::Expr, f.pm.model);
  CHECK(possible_type(f.pm.model, *e).untypable());
}

TEST_CASE("a comparison against a unary set demands a unary hole") {
  auto f = with_body("all x : File | x !in (?)");
  CHECK(body_typable(f.pm.model, *f.body));
  const Node& cmp = *f.body->kids[1];
  const NodeId hole = cmp.kids[1]->id;
  HoleOverrides ov{{hole, PossibleType::of_kind({KindClass::Expr, f.pm.model.table().field_type("link")})}};
  CHECK_FALSE(body_typable(f.pm.model, *f.body, {Precision::Full, &ov}));
  CHECK_FALSE(body_typable(f.pm.model, *f.body, {Precision::ArityOnly, &ov}));
  CHECK(body_typable(f.pm.model, *f.body, {Precision::KindOnly, &ov}));
}

TEST_CASE("a basic set under always is a kind error at every precision") {
  auto f = with_body("always (?)");
  const NodeId hole = f.body->kids[0]->id;
  HoleOverrides ov{{hole, PossibleType::of_kind({KindClass::Expr, f.pm.model.table().sig_type("File")})}};
  for (auto p : {Precision::KindOnly, Precision::ArityOnly, Precision::Full})
    CHECK_FALSE(body_typable(f.pm.model, *f.body, {p, &ov}));
}

TEST_CASE("intersection with a disjoint sibling is flagged") {
  auto f = with_body("some A & (?)", "sig A {}\nsig B {}\n");
  const NodeId hole = f.body->kids[0]->kids[1]->id;
  HoleOverrides ov{{hole, PossibleType::of_kind({KindClass::Expr, f.pm.model.table().sig_type("B")})}};
  CHECK_FALSE(body_typable(f.pm.model, *f.body, {Precision::Full, &ov}));
  CHECK(body_typable(f.pm.model, *f.body, {Precision::ArityOnly, &ov}));
}

TEST_CASE("possible types over-approximate the oracle on partial trees") {
  const char* bodies[] = {
      "all x : (?) | (?)",
      "all x : File | x !in (?)",
      "some (?) & Trash",
      "(?).link = (?)",
      "always (?) = (?)'",
      "#(?) < #(?)",
      "some ~(?)",
      "some (?) -> (?)",
      "some (?) <: link",
      "some ^(?)",
      "(?) in link.(?)",
      "some (?) - Protected",
  };
  for (const char* text : bodies) {
    CAPTURE(text);
    auto f = with_body(text);
    oracle::Oracle o(f.pm.model, 1, "p");
    auto pt = possible_type(f.pm.model, *f.body);
    for (const auto& [k, witness] : o.kinds(f.body, {}))
      CHECK(represents(pt, k));
    CHECK(body_typable(f.pm.model, *f.body) == o.completion_exists(f.body));
  }
}
