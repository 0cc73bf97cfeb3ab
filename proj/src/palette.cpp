// SPDX-License-Identifier: Apache-2.0
#include "alloyse/palette.hpp"

#include <algorithm>
#include <cctype>

namespace alloyse {

std::string_view to_string(Side s) { return s == Side::Left ? "left" : "right"; }

namespace {

constexpr Category kCategoryOrder[] = {Category::Relational, Category::Propositional, Category::FirstOrder,
                                       Category::LTL,        Category::BasicSet,      Category::Integer,
                                       Category::Predicate};

Block operator_block(Op op) {
  const auto& oi = info(op);
  Block b;
  b.label = std::string(oi.symbol);
  b.category = oi.category;
  b.op = op;
  b.result = oi.result;
  if (oi.fixity == Fixity::Binder) {
    b.payload = Block::Payload::Quantifier;
    b.id = "quant:" + b.label;
    b.slots = {"var", "domain", "subformula"};
  } else {
    b.payload = Block::Payload::Operator;
    b.id = b.label;
    if (oi.operands == 1)
      b.slots = {"operand"};
    else
      b.slots = {"lhs", "rhs"};
  }
  return b;
}

Block set_block() {
  Block b;
  b.id = b.label = "set";
  b.category = Category::Relational;
  b.payload = Block::Payload::Declaration;
  b.result = KindClass::Expr;
  return b;
}

Block leaf_block(LeafRef ref, const std::string& name) {
  Block b;
  b.id = b.label = b.name = name;
  b.category = Category::BasicSet;
  b.payload = Block::Payload::BasicSet;
  b.leaf = ref;
  b.result = KindClass::Expr;
  return b;
}

Block int_block(std::int64_t v) {
  Block b;
  b.id = b.label = std::to_string(v);
  b.category = Category::Integer;
  b.payload = Block::Payload::IntLit;
  b.value = v;
  b.result = KindClass::Int;
  return b;
}

Block pred_block(const std::string& name) {
  Block b;
  b.id = "pred:" + name;
  b.label = b.name = name;
  b.category = Category::Predicate;
  b.payload = Block::Payload::PredCall;
  b.result = KindClass::Formula;
  return b;
}

NodePtr node_at(const NodePtr& body, const Located& loc) {
  if (loc.path.empty())
    return body;
  const auto& last = loc.path.back();
  return last.node->kids[last.child];
}

void collect_var_names(const Node& n, std::vector<std::string>& out) {
  if (n.is_quant() || (n.op == Op::Leaf && n.leaf == LeafRef::Var))
    out.push_back(n.name);
  for (const auto& k : n.kids)
    collect_var_names(*k, out);
}

std::vector<std::string> scope_names(std::span<const PathStep> path) {
  // Innermost binding of each name, listed outer to inner.
  std::vector<std::string> vars = vars_in_scope(path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (std::find(vars.begin() + static_cast<std::ptrdiff_t>(i) + 1, vars.end(), vars[i]) == vars.end())
      out.push_back(vars[i]);
  return out;
}

AbsScope scope_at(const Model& m, std::span<const PathStep> path) {
  AbsScope scope;
  for (const auto& step : path) {
    if (!step.node->is_quant() || step.child != 1)
      continue;
    PossibleType dom = possible_type(m, *step.node->kids[0], scope);
    std::vector<AbsRel> sets;
    for (const auto& e : dom.exprs)
      if (e.arity == 1)
        sets.push_back(e);
    scope.emplace_back(step.node->name, sets.size() == 1 ? sets[0] : AbsRel{});
  }
  return scope;
}

std::optional<RelType> known_union(const PossibleType& pt, int arity) {
  std::optional<RelType> acc;
  for (const auto& e : pt.exprs) {
    if (e.arity != arity || !e.may_nonempty)
      continue;
    if (e.is_top())
      return std::nullopt;
    acc = acc ? unite(*acc, *e.bound) : *e.bound;
  }
  return acc;
}

std::optional<RelType> known_column(const PossibleType& pt, bool last) {
  std::vector<PrimId> prims;
  bool any = false;
  for (const auto& e : pt.exprs) {
    if (!e.may_nonempty)
      continue;
    if (e.is_top())
      return std::nullopt;
    auto col = e.bound->column(last ? e.arity - 1 : 0);
    prims.insert(prims.end(), col.begin(), col.end());
    any = true;
  }
  if (!any)
    return std::nullopt;
  std::sort(prims.begin(), prims.end());
  prims.erase(std::unique(prims.begin(), prims.end()), prims.end());
  return RelType::unary(prims);
}

std::string shape_phrase(KindClass k) {
  return std::string(shape_name(k)) + " (" + std::string(to_string(k)) + ")";
}

} // namespace

Located resolve_target(const Model& m, std::size_t pred, const Target& target) {
  if (pred >= m.preds().size())
    throw Error(ErrorCode::UnknownPred, "unknown predicate");
  const auto& body = m.preds()[pred].body;
  auto loc = locate(*body, target.node);
  if (target.kind == Target::Kind::Hole) {
    if (!loc || loc->binder || !loc->node->is_hole())
      throw Error(ErrorCode::UnknownHole, "no hole with id " + std::to_string(target.node));
    return *loc;
  }
  if (!loc)
    throw Error(ErrorCode::UnknownTarget, "no node with id " + std::to_string(target.node));
  if (loc->binder || loc->node->is_hole())
    throw Error(ErrorCode::AnchorKindMismatch,
                "node " + std::to_string(target.node) + " has no extension points");
  return *loc;
}

bool fits_anchor(const Block& b, Side side) {
  if (b.payload == Block::Payload::Quantifier)
    return side == Side::Left;
  if (b.payload != Block::Payload::Operator)
    return false;
  switch (info(b.op).fixity) {
  case Fixity::Infix: return true;
  case Fixity::Prefix: return side == Side::Left;
  case Fixity::Postfix: return side == Side::Right;
  default: return false;
  }
}

std::vector<Block> palette(const Model& m, std::size_t pred, const Target& target) {
  const Located loc = resolve_target(m, pred, target);
  const bool at_anchor = target.kind == Target::Kind::Anchor;
  std::vector<Block> out;
  for (Category cat : kCategoryOrder) {
    for (Op op : palette_operators()) {
      if (info(op).category != cat)
        continue;
      Block b = operator_block(op);
      if (!at_anchor || fits_anchor(b, target.side))
        out.push_back(std::move(b));
      if (op == Op::MultOne && !at_anchor)
        out.push_back(set_block());
    }
    if (at_anchor)
      continue;
    if (cat == Category::BasicSet) {
      for (const auto& s : m.sigs())
        out.push_back(leaf_block(LeafRef::Sig, s.name));
      for (const auto& s : m.sigs())
        for (const auto& f : s.fields)
          out.push_back(leaf_block(LeafRef::Field, f.name));
      for (const auto& v : scope_names(loc.path))
        out.push_back(leaf_block(LeafRef::Var, v));
      out.push_back(leaf_block(LeafRef::Univ, "univ"));
      out.push_back(leaf_block(LeafRef::None, "none"));
      out.push_back(leaf_block(LeafRef::Iden, "iden"));
    } else if (cat == Category::Integer) {
      out.push_back(int_block(0));
    } else if (cat == Category::Predicate) {
      for (std::size_t i = 0; i < m.preds().size(); ++i)
        if (i != pred)
          out.push_back(pred_block(m.preds()[i].name));
    }
  }
  return out;
}

Block find_block(const Model& m, std::size_t pred, const Target& target, std::string_view id) {
  const Located loc = resolve_target(m, pred, target);
  auto unknown = [&] { return Error(ErrorCode::UnknownBlock, "unknown block '" + std::string(id) + "'"); };
  if (id.empty())
    throw unknown();
  if (id == "set")
    return set_block();
  if (id.starts_with("quant:")) {
    for (Op op : palette_operators())
      if (info(op).fixity == Fixity::Binder && info(op).symbol == id.substr(6))
        return operator_block(op);
    throw unknown();
  }
  if (id.starts_with("pred:")) {
    auto idx = m.pred_index(id.substr(5));
    if (!idx || *idx == pred)
      throw unknown();
    return pred_block(m.preds()[*idx].name);
  }
  if (std::all_of(id.begin(), id.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    if (id.size() > 18)
      throw unknown();
    return int_block(std::stoll(std::string(id)));
  }
  for (Op op : palette_operators())
    if (info(op).fixity != Fixity::Binder && info(op).symbol == id)
      return operator_block(op);
  if (target.kind == Target::Kind::Anchor)
    throw unknown();
  const std::string name(id);
  for (const auto& v : vars_in_scope(loc.path))
    if (v == name)
      return leaf_block(LeafRef::Var, name);
  if (m.table().has_sig(name))
    return leaf_block(LeafRef::Sig, name);
  for (const auto& s : m.sigs())
    for (const auto& f : s.fields)
      if (f.name == name)
        return leaf_block(LeafRef::Field, name);
  if (name == "univ")
    return leaf_block(LeafRef::Univ, name);
  if (name == "none")
    return leaf_block(LeafRef::None, name);
  if (name == "iden")
    return leaf_block(LeafRef::Iden, name);
  throw unknown();
}

std::string fresh_var_name(const std::vector<std::string>& taken) {
  for (int i = 0;; ++i) {
    const std::string suffix = i == 0 ? "" : std::to_string(i);
    for (const char* base : {"x", "y", "z"}) {
      std::string name = base + suffix;
      if (std::find(taken.begin(), taken.end(), name) == taken.end())
        return name;
    }
  }
}

std::vector<std::string> binder_names_to_avoid(const Model& m, std::span<const PathStep> path,
                                               const Node* subtree) {
  std::vector<std::string> out = vars_in_scope(path);
  for (const auto& s : m.sigs()) {
    out.push_back(s.name);
    for (const auto& f : s.fields)
      out.push_back(f.name);
  }
  for (const auto& p : m.preds())
    out.push_back(p.name);
  if (subtree)
    collect_var_names(*subtree, out);
  return out;
}

NodePtr instantiate(const Block& b, IdCounter& ids, const std::vector<std::string>& avoid_names, NodePtr wrapped,
                    Side side) {
  switch (b.payload) {
  case Block::Payload::BasicSet:
    return make_leaf(ids(), b.leaf, b.name);
  case Block::Payload::PredCall:
    return make_pred_call(ids(), b.name);
  case Block::Payload::IntLit:
    return make_int(ids(), b.value);
  case Block::Payload::Declaration:
    throw Error(ErrorCode::BlockNotSelectable, "'set' is declaration-only", ReasonClass::DeclarationOnly);
  case Block::Payload::Quantifier: {
    const NodeId id = ids();
    const NodeId binder = ids();
    NodePtr domain = make_hole(ids(), KindClass::Expr);
    NodePtr body = wrapped ? wrapped : make_hole(ids(), KindClass::Formula);
    return make_quant(id, b.op, fresh_var_name(avoid_names), binder, std::move(domain), std::move(body));
  }
  case Block::Payload::Operator:
    break;
  }
  const auto& oi = info(b.op);
  const NodeId id = ids();
  if (oi.operands == 1)
    return make_unary(id, b.op, wrapped ? wrapped : make_hole(ids(), oi.slot[0]));
  NodePtr lhs, rhs;
  if (wrapped && side == Side::Right) {
    lhs = wrapped;
    rhs = make_hole(ids(), oi.slot[1]);
  } else if (wrapped) {
    lhs = make_hole(ids(), oi.slot[0]);
    rhs = wrapped;
  } else {
    lhs = make_hole(ids(), oi.slot[0]);
    rhs = make_hole(ids(), oi.slot[1]);
  }
  return make_binary(id, b.op, std::move(lhs), std::move(rhs));
}

NodePtr place_block(const Model& m, std::size_t pred, const Target& target, const Block& b, IdCounter& ids) {
  const Located loc = resolve_target(m, pred, target);
  const NodePtr& body = m.preds()[pred].body;
  if (target.kind == Target::Kind::Hole) {
    auto avoid = binder_names_to_avoid(m, loc.path, nullptr);
    return replace_at(body, loc.path, instantiate(b, ids, avoid));
  }
  if (!fits_anchor(b, target.side))
    throw Error(ErrorCode::AnchorKindMismatch,
                "'" + b.label + "' does not fit the " + std::string(to_string(target.side)) + " extension point");
  NodePtr anchored = node_at(body, loc);
  auto avoid = binder_names_to_avoid(m, loc.path, anchored.get());
  return replace_at(body, loc.path, instantiate(b, ids, avoid, anchored, target.side));
}

ReasonClass classify(const Model& m, const Node& body) {
  if (body_typable(m, body))
    return ReasonClass::None;
  if (!body_typable(m, body, {Precision::KindOnly, nullptr}))
    return ReasonClass::KindMismatch;
  if (!body_typable(m, body, {Precision::ArityOnly, nullptr}))
    return ReasonClass::ArityMismatch;
  return ReasonClass::TypeDisjoint;
}

Verdict check_block(const Model& m, std::size_t pred, const Target& target, const Block& b) {
  Verdict v;
  if (b.payload == Block::Payload::Declaration) {
    v.selectable = false;
    v.reason = ReasonClass::DeclarationOnly;
    v.human_reason = "'set' is a declaration multiplicity, not an expression operator";
    return v;
  }
  if (target.kind == Target::Kind::Anchor && !fits_anchor(b, target.side)) {
    v.selectable = false;
    v.reason = ReasonClass::KindMismatch;
    v.human_reason = "'" + b.label + "' does not fit the " + std::string(to_string(target.side)) +
                     " extension point";
    return v;
  }
  IdCounter ids{m.next_node_id()};
  NodePtr body = place_block(m, pred, target, b, ids);
  v.reason = classify(m, *body);
  if (v.reason == ReasonClass::None)
    return v;
  v.selectable = false;
  switch (v.reason) {
  case ReasonClass::KindMismatch: {
    if (target.kind == Target::Kind::Hole) {
      const Located loc = resolve_target(m, pred, target);
      const KindClass want = loc.node->hole_class;
      if (b.result != want) {
        v.human_reason = "'" + b.label + "' is " + shape_phrase(b.result) + " but the hole needs " +
                         shape_phrase(want);
        break;
      }
    }
    v.human_reason = "no completion with '" + b.label + "' fits the shapes required here";
    break;
  }
  case ReasonClass::ArityMismatch:
    v.human_reason = "no completion with '" + b.label + "' has an arity this position accepts";
    break;
  default:
    v.human_reason = "every completion with '" + b.label + "' combines disjoint types";
    break;
  }
  return v;
}

HoleConstraint hole_constraint(const Model& m, std::size_t pred, NodeId hole) {
  const Located loc = resolve_target(m, pred, Target::hole(hole));
  HoleConstraint c;
  c.kind = loc.node->hole_class;
  c.label = std::string(slot_label(loc.path));
  if (c.kind != KindClass::Expr)
    return c;
  const Node& body = *m.preds()[pred].body;
  const int max_arity = m.config().max_arity;
  for (int a = 1; a <= max_arity; ++a) {
    HoleOverrides probe;
    PossibleType t;
    t.exprs.push_back(AbsRel{a, std::nullopt, true, true});
    probe.emplace(hole, std::move(t));
    if (body_typable(m, body, {Precision::Full, &probe}))
      c.allowed_arities.push_back(a);
  }
  if (loc.path.empty())
    return c;
  const auto& parent = loc.path.back();
  const Node& p = *parent.node;
  if (p.kids.size() != 2 || p.is_quant())
    return c;
  const Node& sibling = *p.kids[1 - parent.child];
  const AbsScope scope = scope_at(m, std::span(loc.path).first(loc.path.size() - 1));
  const PossibleType sib = possible_type(m, sibling, scope);
  if (p.form() == Form::Compare || p.op == Op::Inter) {
    for (int a : c.allowed_arities)
      if (auto u = known_union(sib, a))
        c.must_overlap.emplace(a, std::move(*u));
  } else if (p.op == Op::Join) {
    if (parent.child == 1)
      c.first_col = known_column(sib, true);
    else
      c.last_col = known_column(sib, false);
  } else if (p.op == Op::DomRestrict && parent.child == 1) {
    c.first_col = known_column(sib, false);
  } else if (p.op == Op::RanRestrict && parent.child == 0) {
    c.last_col = known_column(sib, false);
  }
  return c;
}

std::vector<PaletteEntry> enumerate_blocks(const Model& m, std::size_t pred, const Target& target) {
  std::vector<PaletteEntry> out;
  for (auto& b : palette(m, pred, target)) {
    Verdict v = check_block(m, pred, target, b);
    out.push_back({std::move(b), std::move(v)});
  }
  return out;
}

} // namespace alloyse
