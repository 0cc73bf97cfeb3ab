// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "alloyse/parser.hpp"
#include "alloyse/printer.hpp"
#include "fixtures.hpp"

using namespace alloyse;

namespace {

const Node& body_of(const Model& m, std::string_view pred) { return *m.find_pred(pred)->body; }

std::string reprint(std::string_view text) { return print_model(parse_model(text).model); }

std::string print_body(std::string_view text) {
  auto pm = parse_model(std::string("var sig File { var link : lone File }\nvar sig Trash in File {}\n"
                                    "var sig Protected in File {}\npred p { ") +
                        std::string(text) + " }\n");
  return print_node(body_of(pm.model, "p"));
}

} // namespace

TEST_CASE("trash model parses into the expected shape") {
  auto pm = parse_model(testing::read_fixture("trash.als"));
  const Model& m = pm.model;
  CHECK(m.sigs().size() == 3);
  CHECK(m.sigs()[0].fields.size() == 1);
  CHECK(m.sigs()[0].fields[0].mult == Mult::Lone);
  CHECK(m.sigs()[1].parentage.kind == Parentage::Kind::SubsetOf);
  const Node& b = body_of(m, "inv5");
  REQUIRE(b.op == Op::All);
  CHECK(b.name == "x");
  CHECK(b.kids[0]->name == "File");
  const Node& imp = *b.kids[1];
  REQUIRE(imp.op == Op::Implies);
  CHECK(imp.kids[0]->op == Op::NotIn);
  CHECK(imp.kids[0]->kids[0]->leaf == LeafRef::Var);
  CHECK(imp.kids[1]->op == Op::In);
  CHECK(m.preds()[0].trivia == "/* All unprotected files are deleted.*/");
}

TEST_CASE("bare hole body") {
  auto pm = parse_model("pred p { (?) }");
  const Node& b = body_of(pm.model, "p");
  CHECK(b.is_hole());
  CHECK(b.hole_class == KindClass::Formula);
  auto empty = parse_model("pred q {}");
  CHECK(body_of(empty.model, "q").is_hole());
}

TEST_CASE("hole classes follow position") {
  auto pm = parse_model("sig A {}\npred p { all x : (?) | (?) in A and #(?) < (?) }");
  std::vector<const Node*> holes;
  collect_holes(body_of(pm.model, "p"), holes);
  REQUIRE(holes.size() == 4);
  CHECK(holes[0]->hole_class == KindClass::Expr);
  CHECK(holes[1]->hole_class == KindClass::Expr);
  CHECK(holes[2]->hole_class == KindClass::Expr);
  CHECK(holes[3]->hole_class == KindClass::Int);
}

TEST_CASE("missing domain is a parse error at the comparison") {
  const std::string text = "var sig File {}\nvar sig Trash in File {}\nvar sig Protected in File {}\n"
                           "pred inv5 { all x : !in Protected | x in Trash }\n";
  try {
    parse_model(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(text.substr(e.span().start.offset, 3) == "!in");
    CHECK(std::find(e.expected().begin(), e.expected().end(), "expression") != e.expected().end());
    CHECK(e.expected().size() <= 8);
  }
}

TEST_CASE("unresolved names") {
  CHECK_THROWS_AS(parse_model("pred p { some Nope }"), ParseError);
  try {
    parse_model("pred p { some Nope }");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::UnknownRef);
  }
  CHECK_THROWS_AS(parse_model("sig A { f : B }"), Error);
}

TEST_CASE("unsupported paragraphs are rejected") {
  CHECK_THROWS_AS(parse_model("fact { }"), ParseError);
  CHECK_THROWS_AS(parse_model("sig A {}\nfun f : A { A }"), ParseError);
}

TEST_CASE("commands are opaque") {
  auto pm = parse_model("sig A {}\npred p { some A }\nrun p for 3 but 2 A\ncheck { some A } for 4\n");
  REQUIRE(pm.model.commands().size() == 2);
  CHECK(pm.model.commands()[0].text == "run p for 3 but 2 A");
  CHECK(pm.model.commands()[1].text == "check { some A } for 4");
}

TEST_CASE("minimal parentheses") {
  CHECK(print_body("all x : File | x not in Protected => x in Trash") ==
        "all x : File | x !in Protected => x in Trash");
  CHECK(print_body("always ((?) since (?))") == "always ((?) since (?))");
  CHECK(print_body("always (Protected = Protected')") == "always Protected = Protected'");
  CHECK(print_body("(some File and no Trash) or some Protected") == "some File and no Trash or some Protected");
  CHECK(print_body("some File and (no Trash or some Protected)") == "some File and (no Trash or some Protected)");
  CHECK(print_body("(some File => some Trash) => some File") == "(some File => some Trash) => some File");
  CHECK(print_body("some File => some Trash => some File") == "some File => some Trash => some File");
  CHECK(print_body("some (File.link).link") == "some File.link.link");
  CHECK(print_body("some File.(link.link)") == "some File.(link.link)");
  CHECK(print_body("some ~(link.link)") == "some ~(link.link)");
  CHECK(print_body("some (File - Trash) - Protected") == "some File - Trash - Protected");
  CHECK(print_body("some File - (Trash - Protected)") == "some File - (Trash - Protected)");
  CHECK(print_body("(all x : File | some x) and some File") == "(all x : File | some x) and some File");
  CHECK(print_body("some File and (all x : File | some x)") == "some File and all x : File | some x");
  CHECK(print_body("some (File.link)'") == "some (File.link)'");
  CHECK(print_body("some File.link'") == "some File.link'");
  CHECK(print_body("#File < #(Trash + Protected)") == "#File < #(Trash + Protected)");
}

TEST_CASE("full parentheses") {
  auto pm = parse_model("sig A {}\npred p { some A and no A }");
  CHECK(print_node(body_of(pm.model, "p"), {true, ParenPolicy::Full}) == "(some A) and (no A)");
}

TEST_CASE("comparison chains associate to the left") {
  auto pm = parse_model("var sig File {}\nvar sig Trash in File {}\nvar sig Protected in File {}\n"
                        "pred p { all x : File | x !in Protected -> x in Trash }");
  const Node& b = body_of(pm.model, "p");
  const Node& cmp = *b.kids[1];
  REQUIRE(cmp.op == Op::In);
  CHECK(cmp.kids[0]->op == Op::NotIn);
  CHECK(cmp.kids[0]->kids[1]->op == Op::Product);
}

TEST_CASE("juxtaposed formulas are conjoined") {
  auto pm = parse_model("sig A {}\npred p { some A no A }");
  CHECK(body_of(pm.model, "p").op == Op::And);
}

TEST_CASE("holes refuse printing when disallowed") {
  auto pm = parse_model("sig A {}\npred p { some (?) }");
  CHECK_THROWS_AS(print_model(pm.model, {false, ParenPolicy::Minimal}), Error);
  CHECK(print_model(pm.model).find("some (?)") != std::string::npos);
}

TEST_CASE("fragments") {
  auto pm = parse_model(testing::read_fixture("trash.als"));
  Model& m = pm.model;
  NodePtr f = parse_fragment("File & Trash", KindClass::Expr, m);
  CHECK(f->op == Op::Inter);
  NodePtr p = parse_fragment("Protected'", KindClass::Expr, m);
  CHECK(p->op == Op::Prime);
  CHECK_THROWS_AS(parse_fragment("x", KindClass::Expr, m), ParseError);
  std::vector<std::string> vars{"x"};
  CHECK(parse_fragment("x", KindClass::Expr, m, vars)->leaf == LeafRef::Var);
  try {
    parse_fragment("some File", KindClass::Expr, m);
    FAIL("expected kind mismatch");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::KindMismatch);
  }
}

TEST_CASE("round trip and idempotence on the trash model") {
  const std::string text = testing::read_fixture("trash.als");
  auto first = parse_model(text);
  const std::string printed = print_model(first.model);
  auto second = parse_model(printed);
  for (std::size_t i = 0; i < first.model.preds().size(); ++i)
    CHECK(same_shape(*first.model.preds()[i].body, *second.model.preds()[i].body));
  CHECK(print_model(second.model) == printed);
  CHECK(printed.find("var sig File { var link : lone File }") != std::string::npos);
  CHECK(printed.find("/* All unprotected files are deleted.*/\npred inv5") != std::string::npos);
}

TEST_CASE("sigs with several fields print on several lines") {
  const std::string text = "abstract sig A {\n  f : A,\n  var g : A -> set A\n}\none sig B extends A {}\n";
  CHECK(reprint(text) == text);
}
