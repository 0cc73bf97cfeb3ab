// SPDX-License-Identifier: Apache-2.0
#include "alloyse/ast.hpp"

#include <algorithm>
#include <cassert>

namespace alloyse {

namespace {

constexpr KindClass E = KindClass::Expr;
constexpr KindClass F = KindClass::Formula;
constexpr KindClass I = KindClass::Int;

// clang-format off
constexpr OpInfo kOps[] = {
  {Op::Hole,        "(?)",  Form::Hole,        Category::BasicSet,      Fixity::Atom,    0, {E, E}, E, tier::Atom,         Assoc::None},
  {Op::Leaf,        "",     Form::SetLeaf,     Category::BasicSet,      Fixity::Atom,    0, {E, E}, E, tier::Atom,         Assoc::None},
  {Op::Transpose,   "~",    Form::UnRel,       Category::Relational,    Fixity::Prefix,  1, {E, E}, E, tier::UnaryRel,     Assoc::None},
  {Op::Closure,     "^",    Form::UnRel,       Category::Relational,    Fixity::Prefix,  1, {E, E}, E, tier::UnaryRel,     Assoc::None},
  {Op::ReflClosure, "*",    Form::UnRel,       Category::Relational,    Fixity::Prefix,  1, {E, E}, E, tier::UnaryRel,     Assoc::None},
  {Op::MultNo,      "no",   Form::MultFormula, Category::Relational,    Fixity::Prefix,  1, {E, E}, F, tier::Mult,         Assoc::None},
  {Op::MultLone,    "lone", Form::MultFormula, Category::Relational,    Fixity::Prefix,  1, {E, E}, F, tier::Mult,         Assoc::None},
  {Op::MultSome,    "some", Form::MultFormula, Category::Relational,    Fixity::Prefix,  1, {E, E}, F, tier::Mult,         Assoc::None},
  {Op::MultOne,     "one",  Form::MultFormula, Category::Relational,    Fixity::Prefix,  1, {E, E}, F, tier::Mult,         Assoc::None},
  {Op::Not,         "!",    Form::Not,         Category::Relational,    Fixity::Prefix,  1, {F, F}, F, tier::UnaryFormula, Assoc::None},
  {Op::Inter,       "&",    Form::BinRel,      Category::Relational,    Fixity::Infix,   2, {E, E}, E, tier::Inter,        Assoc::Left},
  {Op::Union,       "+",    Form::BinRel,      Category::Relational,    Fixity::Infix,   2, {E, E}, E, tier::Plus,         Assoc::Left},
  {Op::Diff,        "-",    Form::BinRel,      Category::Relational,    Fixity::Infix,   2, {E, E}, E, tier::Plus,         Assoc::Left},
  {Op::Override,    "++",   Form::BinRel,      Category::Relational,    Fixity::Infix,   2, {E, E}, E, tier::Override,     Assoc::Left},
  {Op::DomRestrict, "<:",   Form::BinRel,      Category::Relational,    Fixity::Infix,   2, {E, E}, E, tier::DomRestrict,  Assoc::Left},
  {Op::RanRestrict, ":>",   Form::BinRel,      Category::Relational,    Fixity::Infix,   2, {E, E}, E, tier::RanRestrict,  Assoc::Left},
  {Op::Join,        ".",    Form::BinRel,      Category::Relational,    Fixity::Infix,   2, {E, E}, E, tier::Join,         Assoc::Left},
  {Op::Product,     "->",   Form::BinRel,      Category::Relational,    Fixity::Infix,   2, {E, E}, E, tier::Product,      Assoc::Left},
  {Op::In,          "in",   Form::Compare,     Category::Relational,    Fixity::Infix,   2, {E, E}, F, tier::Compare,      Assoc::Left},
  {Op::Eq,          "=",    Form::Compare,     Category::Relational,    Fixity::Infix,   2, {E, E}, F, tier::Compare,      Assoc::Left},
  {Op::NotIn,       "!in",  Form::Compare,     Category::Relational,    Fixity::Infix,   2, {E, E}, F, tier::Compare,      Assoc::Left},
  {Op::NotEq,       "!=",   Form::Compare,     Category::Relational,    Fixity::Infix,   2, {E, E}, F, tier::Compare,      Assoc::Left},
  {Op::Lt,          "<",    Form::IntCompare,  Category::Relational,    Fixity::Infix,   2, {I, I}, F, tier::Compare,      Assoc::Left},
  {Op::Gt,          ">",    Form::IntCompare,  Category::Relational,    Fixity::Infix,   2, {I, I}, F, tier::Compare,      Assoc::Left},
  {Op::Le,          "=<",   Form::IntCompare,  Category::Relational,    Fixity::Infix,   2, {I, I}, F, tier::Compare,      Assoc::Left},
  {Op::Ge,          ">=",   Form::IntCompare,  Category::Relational,    Fixity::Infix,   2, {I, I}, F, tier::Compare,      Assoc::Left},
  {Op::Card,        "#",    Form::Card,        Category::Integer,       Fixity::Prefix,  1, {E, E}, I, tier::Card,         Assoc::None},
  {Op::IntLit,      "",     Form::IntLit,      Category::Integer,       Fixity::Atom,    0, {E, E}, I, tier::Atom,         Assoc::None},
  {Op::Or,          "or",   Form::Prop,        Category::Propositional, Fixity::Infix,   2, {F, F}, F, tier::Or,           Assoc::Left},
  {Op::And,         "and",  Form::Prop,        Category::Propositional, Fixity::Infix,   2, {F, F}, F, tier::And,          Assoc::Left},
  {Op::Iff,         "iff",  Form::Prop,        Category::Propositional, Fixity::Infix,   2, {F, F}, F, tier::Iff,          Assoc::Left},
  {Op::Implies,     "=>",   Form::Prop,        Category::Propositional, Fixity::Infix,   2, {F, F}, F, tier::Implies,      Assoc::Right},
  {Op::All,         "all",  Form::Quant,       Category::FirstOrder,    Fixity::Binder,  2, {E, F}, F, tier::Binder,       Assoc::None},
  {Op::No,          "no",   Form::Quant,       Category::FirstOrder,    Fixity::Binder,  2, {E, F}, F, tier::Binder,       Assoc::None},
  {Op::Some,        "some", Form::Quant,       Category::FirstOrder,    Fixity::Binder,  2, {E, F}, F, tier::Binder,       Assoc::None},
  {Op::Lone,        "lone", Form::Quant,       Category::FirstOrder,    Fixity::Binder,  2, {E, F}, F, tier::Binder,       Assoc::None},
  {Op::One,         "one",  Form::Quant,       Category::FirstOrder,    Fixity::Binder,  2, {E, F}, F, tier::Binder,       Assoc::None},
  {Op::Always,      "always",       Form::TempUn,  Category::LTL,     Fixity::Prefix,  1, {F, F}, F, tier::UnaryFormula, Assoc::None},
  {Op::Eventually,  "eventually",   Form::TempUn,  Category::LTL,     Fixity::Prefix,  1, {F, F}, F, tier::UnaryFormula, Assoc::None},
  {Op::After,       "after",        Form::TempUn,  Category::LTL,     Fixity::Prefix,  1, {F, F}, F, tier::UnaryFormula, Assoc::None},
  {Op::Before,      "before",       Form::TempUn,  Category::LTL,     Fixity::Prefix,  1, {F, F}, F, tier::UnaryFormula, Assoc::None},
  {Op::Historically,"historically", Form::TempUn,  Category::LTL,     Fixity::Prefix,  1, {F, F}, F, tier::UnaryFormula, Assoc::None},
  {Op::Once,        "once",         Form::TempUn,  Category::LTL,     Fixity::Prefix,  1, {F, F}, F, tier::UnaryFormula, Assoc::None},
  {Op::Prime,       "'",            Form::Prime,   Category::LTL,     Fixity::Postfix, 1, {E, E}, E, tier::Postfix,      Assoc::None},
  {Op::Since,       "since",        Form::TempBin, Category::LTL,     Fixity::Infix,   2, {F, F}, F, tier::TempBin,      Assoc::Right},
  {Op::Triggered,   "triggered",    Form::TempBin, Category::LTL,     Fixity::Infix,   2, {F, F}, F, tier::TempBin,      Assoc::Right},
  {Op::Until,       "until",        Form::TempBin, Category::LTL,     Fixity::Infix,   2, {F, F}, F, tier::TempBin,      Assoc::Right},
  {Op::Releases,    "releases",     Form::TempBin, Category::LTL,     Fixity::Infix,   2, {F, F}, F, tier::TempBin,      Assoc::Right},
  {Op::Seq,         ";",            Form::TempBin, Category::LTL,     Fixity::Infix,   2, {F, F}, F, tier::Seq,          Assoc::Left},
  {Op::PredCall,    "",     Form::PredCall,    Category::Predicate,     Fixity::Atom,    0, {E, E}, F, tier::Atom,         Assoc::None},
};
// clang-format on

constexpr Op kPalette[] = {
    Op::Transpose, Op::ReflClosure, Op::Closure, Op::Not, Op::MultNo, Op::MultLone, Op::MultSome, Op::MultOne,
    Op::Inter, Op::Union, Op::Diff, Op::Override, Op::DomRestrict, Op::RanRestrict, Op::Join, Op::Product,
    Op::In, Op::NotIn, Op::Eq, Op::NotEq, Op::Lt, Op::Gt, Op::Le, Op::Ge,
    Op::Or, Op::And, Op::Iff, Op::Implies,
    Op::All, Op::No, Op::Some, Op::Lone, Op::One,
    Op::Always, Op::Eventually, Op::After, Op::Before, Op::Historically, Op::Once, Op::Prime,
    Op::Since, Op::Triggered, Op::Until, Op::Releases, Op::Seq,
    Op::Card,
};

} // namespace

const OpInfo& info(Op op) {
  const auto& entry = kOps[static_cast<std::size_t>(op)];
  assert(entry.op == op);
  return entry;
}

std::span<const Op> palette_operators() { return kPalette; }

std::string_view to_string(KindClass k) {
  switch (k) {
  case KindClass::Expr: return "expr";
  case KindClass::Formula: return "formula";
  case KindClass::Int: return "int";
  }
  return "?";
}

std::string_view shape_name(KindClass k) {
  switch (k) {
  case KindClass::Expr: return "rounded";
  case KindClass::Formula: return "squared";
  case KindClass::Int: return "int";
  }
  return "?";
}

std::string_view to_string(Form f) {
  switch (f) {
  case Form::Hole: return "Hole";
  case Form::SetLeaf: return "SetLeaf";
  case Form::UnRel: return "UnRel";
  case Form::MultFormula: return "MultFormula";
  case Form::Not: return "Not";
  case Form::BinRel: return "BinRel";
  case Form::Compare: return "Compare";
  case Form::IntCompare: return "IntCompare";
  case Form::Card: return "Card";
  case Form::IntLit: return "IntLit";
  case Form::Prop: return "Prop";
  case Form::Quant: return "Quant";
  case Form::TempUn: return "TempUn";
  case Form::Prime: return "Prime";
  case Form::TempBin: return "TempBin";
  case Form::PredCall: return "PredCall";
  }
  return "?";
}

std::string_view to_string(Category c) {
  switch (c) {
  case Category::Relational: return "Relational";
  case Category::Propositional: return "Propositional";
  case Category::FirstOrder: return "FirstOrder";
  case Category::LTL: return "LTL";
  case Category::BasicSet: return "BasicSet";
  case Category::Integer: return "Integer";
  case Category::Predicate: return "Predicate";
  }
  return "?";
}

std::string_view to_string(LeafRef r) {
  switch (r) {
  case LeafRef::Sig: return "sig";
  case LeafRef::Field: return "field";
  case LeafRef::Var: return "var";
  case LeafRef::Univ: return "univ";
  case LeafRef::None: return "none";
  case LeafRef::Iden: return "iden";
  }
  return "?";
}

NodePtr make_hole(NodeId id, KindClass k) {
  auto n = std::make_shared<Node>();
  n->id = id;
  n->op = Op::Hole;
  n->hole_class = k;
  return n;
}

NodePtr make_leaf(NodeId id, LeafRef ref, std::string name) {
  auto n = std::make_shared<Node>();
  n->id = id;
  n->op = Op::Leaf;
  n->leaf = ref;
  n->name = std::move(name);
  return n;
}

NodePtr make_int(NodeId id, std::int64_t value) {
  auto n = std::make_shared<Node>();
  n->id = id;
  n->op = Op::IntLit;
  n->value = value;
  return n;
}

NodePtr make_pred_call(NodeId id, std::string name) {
  auto n = std::make_shared<Node>();
  n->id = id;
  n->op = Op::PredCall;
  n->name = std::move(name);
  return n;
}

NodePtr make_unary(NodeId id, Op op, NodePtr operand) {
  assert(info(op).operands == 1);
  auto n = std::make_shared<Node>();
  n->id = id;
  n->op = op;
  n->kids.push_back(std::move(operand));
  return n;
}

NodePtr make_binary(NodeId id, Op op, NodePtr lhs, NodePtr rhs) {
  assert(info(op).operands == 2 && info(op).form != Form::Quant);
  auto n = std::make_shared<Node>();
  n->id = id;
  n->op = op;
  n->kids.push_back(std::move(lhs));
  n->kids.push_back(std::move(rhs));
  return n;
}

NodePtr make_quant(NodeId id, Op q, std::string var, NodeId binder_id, NodePtr domain, NodePtr body) {
  assert(info(q).form == Form::Quant);
  auto n = std::make_shared<Node>();
  n->id = id;
  n->op = q;
  n->name = std::move(var);
  n->binder_id = binder_id;
  n->kids.push_back(std::move(domain));
  n->kids.push_back(std::move(body));
  return n;
}

NodePtr with_kids(const Node& n, std::vector<NodePtr> kids) {
  auto copy = std::make_shared<Node>(n);
  copy->kids = std::move(kids);
  return copy;
}

bool same_shape(const Node& a, const Node& b) {
  if (a.op != b.op || a.kids.size() != b.kids.size())
    return false;
  switch (a.op) {
  case Op::Hole:
    if (a.hole_class != b.hole_class)
      return false;
    break;
  case Op::Leaf:
    if (a.leaf != b.leaf || a.name != b.name)
      return false;
    break;
  case Op::IntLit:
    if (a.value != b.value)
      return false;
    break;
  case Op::PredCall:
    if (a.name != b.name)
      return false;
    break;
  default:
    if (a.is_quant() && a.name != b.name)
      return false;
    break;
  }
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!same_shape(*a.kids[i], *b.kids[i]))
      return false;
  return true;
}

std::size_t count_nodes(const Node& n) {
  std::size_t total = 1;
  for (const auto& k : n.kids)
    total += count_nodes(*k);
  return total;
}

std::size_t count_holes(const Node& n) {
  std::size_t total = n.is_hole() ? 1 : 0;
  for (const auto& k : n.kids)
    total += count_holes(*k);
  return total;
}

int height(const Node& n) {
  int h = -1;
  for (const auto& k : n.kids)
    h = std::max(h, height(*k));
  return h + 1;
}

namespace {

bool locate_rec(const Node& n, NodeId id, Located& out) {
  if (n.id == id) {
    out.node = &n;
    return true;
  }
  if (n.is_quant() && n.binder_id == id) {
    out.node = &n;
    out.binder = true;
    return true;
  }
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    out.path.push_back({&n, i});
    if (locate_rec(*n.kids[i], id, out))
      return true;
    out.path.pop_back();
  }
  return false;
}

NodePtr replace_rec(const Node& n, std::span<const PathStep> path, std::size_t depth, NodePtr& replacement) {
  const auto& step = path[depth];
  assert(step.node == &n);
  std::vector<NodePtr> kids = n.kids;
  if (depth + 1 == path.size())
    kids[step.child] = std::move(replacement);
  else
    kids[step.child] = replace_rec(*n.kids[step.child], path, depth + 1, replacement);
  return with_kids(n, std::move(kids));
}

} // namespace

std::optional<Located> locate(const Node& root, NodeId id) {
  Located out;
  if (locate_rec(root, id, out))
    return out;
  return std::nullopt;
}

NodePtr replace_at(const NodePtr& root, std::span<const PathStep> path, NodePtr replacement) {
  if (path.empty())
    return replacement;
  return replace_rec(*root, path, 0, replacement);
}

KindClass slot_class(std::span<const PathStep> path) {
  if (path.empty())
    return KindClass::Formula;
  const auto& last = path.back();
  return info(last.node->op).slot[last.child];
}

std::string_view slot_label(std::span<const PathStep> path) {
  if (path.empty())
    return "formula";
  const auto& last = path.back();
  const auto& oi = info(last.node->op);
  if (oi.form == Form::Quant)
    return last.child == 0 ? "domain" : "subformula";
  if (oi.operands == 1)
    return "operand";
  return last.child == 0 ? "lhs" : "rhs";
}

std::vector<std::string> vars_in_scope(std::span<const PathStep> path) {
  std::vector<std::string> vars;
  for (const auto& step : path)
    if (step.node->is_quant() && step.child == 1)
      vars.push_back(step.node->name);
  return vars;
}

void collect_holes(const Node& n, std::vector<const Node*>& out) {
  if (n.is_hole())
    out.push_back(&n);
  for (const auto& k : n.kids)
    collect_holes(*k, out);
}

} // namespace alloyse
