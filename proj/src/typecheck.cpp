// SPDX-License-Identifier: Apache-2.0
#include "alloyse/typecheck.hpp"

#include "alloyse/error.hpp"

namespace alloyse {

std::string_view to_string(TypeErrorClass c) {
  switch (c) {
  case TypeErrorClass::KindMismatch: return "KindMismatch";
  case TypeErrorClass::ArityMismatch: return "ArityMismatch";
  case TypeErrorClass::DisjointOperands: return "DisjointOperands";
  case TypeErrorClass::EmptyJoin: return "EmptyJoin";
  case TypeErrorClass::ClosureArity: return "ClosureArity";
  case TypeErrorClass::TransposeArity: return "TransposeArity";
  }
  return "?";
}

namespace {

class Checker {
public:
  Checker(const Model& m, Scope scope) : m_(m), table_(m.table()), scope_(std::move(scope)) {}

  TypeResult run(const Node& n) {
    TypeResult r;
    Kind k;
    if (check(n, k))
      r.kind = std::move(k);
    else
      r.error = std::move(error_);
    return r;
  }

private:
  bool fail(const Node& n, TypeErrorClass cls, std::string message, std::optional<NodeId> operand = {},
            std::string detail = {}) {
    error_.node = n.id;
    error_.cls = cls;
    error_.operand = operand;
    error_.detail = std::move(detail);
    error_.message = detail_suffix(std::move(message), error_.detail);
    return false;
  }

  static std::string detail_suffix(std::string message, const std::string& detail) {
    return detail.empty() ? message : message + ". " + detail;
  }

  std::string lr(const RelType& l, const RelType& r) const {
    return "Left type = " + table_.format(l) + ". Right type = " + table_.format(r);
  }

  bool want(const Node& parent, const Node& operand, const Kind& k, KindClass cls) {
    if (k.cls == cls)
      return true;
    return fail(parent, TypeErrorClass::KindMismatch,
                "'" + std::string(info(parent.op).symbol) + "' expects " + std::string(to_string(cls)) +
                    " operands, found " + std::string(to_string(k.cls)),
                operand.id);
  }

  bool check(const Node& n, Kind& out) {
    const auto& oi = info(n.op);
    switch (n.form()) {
    case Form::Hole:
      throw Error(ErrorCode::HolesPresent, "cannot typecheck a subtree with holes");
    case Form::SetLeaf:
      out.cls = KindClass::Expr;
      out.type = leaf_type(n);
      return true;
    case Form::IntLit:
      out.cls = KindClass::Int;
      return true;
    case Form::PredCall:
      out.cls = KindClass::Formula;
      return true;
    case Form::Quant: {
      Kind dom;
      if (!check(*n.kids[0], dom) || !want(n, *n.kids[0], dom, KindClass::Expr))
        return false;
      if (dom.type.arity() != 1)
        return fail(n, TypeErrorClass::ArityMismatch,
                    "quantifier domain must be a set, found arity " + std::to_string(dom.type.arity()),
                    n.kids[0]->id);
      scope_.emplace_back(n.name, dom.type);
      Kind body;
      const bool ok = check(*n.kids[1], body) && want(n, *n.kids[1], body, KindClass::Formula);
      scope_.pop_back();
      if (!ok)
        return false;
      out.cls = KindClass::Formula;
      return true;
    }
    default:
      break;
    }

    if (oi.operands == 1) {
      Kind a;
      if (!check(*n.kids[0], a) || !want(n, *n.kids[0], a, oi.slot[0]))
        return false;
      return unary(n, a, out);
    }
    Kind a, b;
    if (!check(*n.kids[0], a))
      return false;
    if (!check(*n.kids[1], b))
      return false;
    if (!want(n, *n.kids[0], a, oi.slot[0]) || !want(n, *n.kids[1], b, oi.slot[1]))
      return false;
    return binary(n, a, b, out);
  }

  RelType leaf_type(const Node& n) const {
    if (n.leaf == LeafRef::Var) {
      for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
        if (it->first == n.name)
          return it->second;
      throw Error(ErrorCode::UnknownRef, "variable '" + n.name + "' is not in scope");
    }
    return declared_type(m_, n.leaf, n.name);
  }

  bool unary(const Node& n, const Kind& a, Kind& out) {
    out.cls = info(n.op).result;
    switch (n.op) {
    case Op::Transpose:
      if (a.type.arity() != 2)
        return fail(n, TypeErrorClass::TransposeArity,
                    "'~' needs a binary relation, found arity " + std::to_string(a.type.arity()), n.kids[0]->id);
      out.type = transpose(a.type);
      return true;
    case Op::Closure:
    case Op::ReflClosure:
      if (a.type.arity() != 2)
        return fail(n, TypeErrorClass::ClosureArity,
                    "'" + std::string(info(n.op).symbol) + "' needs a binary relation, found arity " +
                        std::to_string(a.type.arity()),
                    n.kids[0]->id);
      out.type = closure(a.type);
      if (n.op == Op::ReflClosure)
        out.type = unite(out.type, table_.iden());
      return true;
    case Op::Prime:
      out.type = a.type;
      return true;
    default: // multiplicity tests, negation, temporal prefixes, cardinality
      return true;
    }
  }

  bool binary(const Node& n, const Kind& a, const Kind& b, Kind& out) {
    out.cls = info(n.op).result;
    if (n.form() != Form::BinRel && n.form() != Form::Compare)
      return true;
    const RelType& l = a.type;
    const RelType& r = b.type;
    const std::string sym(info(n.op).symbol);
    const int max_arity = m_.config().max_arity;
    auto same_arity = [&] {
      if (l.arity() == r.arity())
        return true;
      return fail(n, TypeErrorClass::ArityMismatch, "'" + sym + "' operands have different arities", {}, lr(l, r));
    };
    switch (n.op) {
    case Op::Inter:
      if (!same_arity())
        return false;
      out.type = intersect(l, r);
      if (out.type.empty())
        return fail(n, TypeErrorClass::DisjointOperands, "'&' operands are disjoint", {}, lr(l, r));
      return true;
    case Op::Union:
      if (!same_arity())
        return false;
      out.type = unite(l, r);
      return true;
    case Op::Override:
      if (!same_arity())
        return false;
      if (l.arity() < 2)
        return fail(n, TypeErrorClass::ArityMismatch, "'++' needs relations of arity 2 or more", {}, lr(l, r));
      out.type = unite(l, r);
      return true;
    case Op::Diff:
      if (!same_arity())
        return false;
      if (m_.config().strict_disjoint_minus && !r.empty() && !overlaps(l, r))
        return fail(n, TypeErrorClass::DisjointOperands, "'-' operands are disjoint", {}, lr(l, r));
      out.type = l;
      return true;
    case Op::Product:
      if (l.arity() + r.arity() > max_arity)
        return fail(n, TypeErrorClass::ArityMismatch,
                    "'->' result arity " + std::to_string(l.arity() + r.arity()) + " exceeds " +
                        std::to_string(max_arity),
                    {}, lr(l, r));
      out.type = product(l, r);
      return true;
    case Op::Join: {
      const int arity = l.arity() + r.arity() - 2;
      if (arity == 0)
        return fail(n, TypeErrorClass::EmptyJoin, "'.' of two sets has arity 0", {}, lr(l, r));
      if (arity > max_arity)
        return fail(n, TypeErrorClass::ArityMismatch,
                    "'.' result arity " + std::to_string(arity) + " exceeds " + std::to_string(max_arity), {},
                    lr(l, r));
      out.type = join(l, r);
      if (out.type.empty())
        return fail(n, TypeErrorClass::EmptyJoin, "'.' always yields the empty set", {}, lr(l, r));
      return true;
    }
    case Op::DomRestrict:
      if (l.arity() != 1)
        return fail(n, TypeErrorClass::ArityMismatch, "left operand of '<:' must be a set", {}, lr(l, r));
      out.type = domain_restrict(l, r);
      if (out.type.empty())
        return fail(n, TypeErrorClass::EmptyJoin, "'<:' always yields the empty set", {}, lr(l, r));
      return true;
    case Op::RanRestrict:
      if (r.arity() != 1)
        return fail(n, TypeErrorClass::ArityMismatch, "right operand of ':>' must be a set", {}, lr(l, r));
      out.type = range_restrict(l, r);
      if (out.type.empty())
        return fail(n, TypeErrorClass::EmptyJoin, "':>' always yields the empty set", {}, lr(l, r));
      return true;
    default: // in, =, !in, !=
      if (!same_arity())
        return false;
      if (!overlaps(l, r))
        return fail(n, TypeErrorClass::DisjointOperands, "'" + sym + "' compares disjoint expressions", {},
                    lr(l, r));
      return true;
    }
  }

  const Model& m_;
  const SigTable& table_;
  Scope scope_;
  TypeError error_;
};

} // namespace

TypeResult type_of(const Model& m, const Node& n, const Scope& scope) { return Checker(m, scope).run(n); }

TypeResult check_pred(const Model& m, const PredDecl& p) {
  TypeResult r = type_of(m, *p.body);
  if (r.ok() && r.kind->cls != KindClass::Formula) {
    TypeError e;
    e.node = p.body->id;
    e.cls = TypeErrorClass::KindMismatch;
    e.message = "predicate body must be a formula, found " + std::string(to_string(r.kind->cls));
    r.kind.reset();
    r.error = std::move(e);
  }
  return r;
}

} // namespace alloyse
