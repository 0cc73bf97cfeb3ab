// SPDX-License-Identifier: Apache-2.0
#include "alloyse/possible_type.hpp"

#include "alloyse/error.hpp"

#include <algorithm>

namespace alloyse {

namespace {

// Bounds larger than this are widened to Top; keeps products over big
// models cheap.
constexpr std::size_t kMaxBoundTuples = 4096;
constexpr std::size_t kMaxElements = 64;

AbsRel exact(const RelType& t) { return {t.arity(), t, t.empty(), !t.empty()}; }
AbsRel top(int arity, bool may_empty = true, bool may_nonempty = true) {
  return {arity, std::nullopt, may_empty, may_nonempty};
}

std::optional<AbsRel> normalize(AbsRel e) {
  if (e.bound && e.bound->size() > kMaxBoundTuples)
    e.bound.reset();
  if (e.bound && e.bound->empty())
    e.may_nonempty = false;
  if (!e.may_empty && !e.may_nonempty)
    return std::nullopt;
  return e;
}

void add(std::vector<AbsRel>& out, AbsRel raw) {
  auto e = normalize(std::move(raw));
  if (!e)
    return;
  for (auto& o : out)
    if (o.arity == e->arity && o.bound == e->bound) {
      o.may_empty = o.may_empty || e->may_empty;
      o.may_nonempty = o.may_nonempty || e->may_nonempty;
      return;
    }
  out.push_back(std::move(*e));
}

void widen(std::vector<AbsRel>& elems) {
  if (elems.size() <= kMaxElements)
    return;
  std::vector<AbsRel> out;
  for (const auto& e : elems) {
    auto it = std::find_if(out.begin(), out.end(), [&](const AbsRel& o) { return o.arity == e.arity; });
    if (it == out.end()) {
      out.push_back(top(e.arity, e.may_empty, e.may_nonempty));
    } else {
      it->may_empty = it->may_empty || e.may_empty;
      it->may_nonempty = it->may_nonempty || e.may_nonempty;
    }
  }
  elems = std::move(out);
}

// Whether both may hold a common tuple.
bool may_overlap(const AbsRel& a, const AbsRel& b) {
  if (!a.may_nonempty || !b.may_nonempty)
    return false;
  if (a.is_top() || b.is_top())
    return true;
  return overlaps(*a.bound, *b.bound);
}

std::optional<RelType> lift2(const AbsRel& a, const AbsRel& b, RelType (*f)(const RelType&, const RelType&)) {
  if (a.is_top() || b.is_top())
    return std::nullopt;
  return f(*a.bound, *b.bound);
}

class Analyzer {
public:
  Analyzer(const Model& m, AbsScope scope, const AnalysisOptions& opts)
      : m_(m), table_(m.table()), scope_(std::move(scope)), opts_(opts), max_arity_(m.config().max_arity) {}

  PossibleType run(const Node& n) {
    if (opts_.overrides) {
      if (auto it = opts_.overrides->find(n.id); it != opts_.overrides->end())
        return it->second;
    }
    PossibleType out;
    switch (n.form()) {
    case Form::Hole:
      return hole(n.hole_class);
    case Form::SetLeaf:
      out.exprs.push_back(leaf(n));
      return out;
    case Form::IntLit:
      out.integer = true;
      return out;
    case Form::PredCall:
      out.formula = true;
      return out;
    case Form::Quant:
      return quant(n);
    default:
      break;
    }
    const auto& oi = info(n.op);
    if (oi.operands == 1) {
      PossibleType a = run(*n.kids[0]);
      return unary(n.op, a);
    }
    PossibleType a = run(*n.kids[0]);
    if (!a.admits(oi.slot[0]))
      return out;
    PossibleType b = run(*n.kids[1]);
    if (!b.admits(oi.slot[1]))
      return out;
    return binary(n.op, a, b);
  }

private:
  PossibleType hole(KindClass k) const {
    if (opts_.precision == Precision::KindOnly && k == KindClass::Expr) {
      PossibleType out;
      out.exprs.push_back(top(0));
      return out;
    }
    return PossibleType::maximal(k, max_arity_);
  }

  AbsRel leaf(const Node& n) const {
    if (opts_.precision == Precision::KindOnly)
      return top(0);
    if (n.leaf == LeafRef::Var) {
      for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
        if (it->first == n.name)
          return it->second;
      throw Error(ErrorCode::UnknownRef, "variable '" + n.name + "' is not in scope");
    }
    const RelType t = declared_type(m_, n.leaf, n.name);
    if (opts_.precision == Precision::ArityOnly)
      return top(t.arity(), false, true);
    return exact(t);
  }

  PossibleType quant(const Node& n) {
    PossibleType out;
    PossibleType dom = run(*n.kids[0]);
    std::vector<AbsRel> variants;
    for (const auto& e : dom.exprs) {
      if (e.arity != 1 && opts_.precision != Precision::KindOnly)
        continue;
      // A variable's emptiness is shared by all its occurrences.
      if (e.may_empty)
        variants.push_back({e.arity, e.bound ? std::optional<RelType>(RelType(e.arity)) : std::nullopt, true, false});
      if (e.may_nonempty)
        variants.push_back({e.arity, e.bound, false, true});
    }
    for (const auto& v : variants) {
      scope_.emplace_back(n.name, v);
      PossibleType body = run(*n.kids[1]);
      scope_.pop_back();
      if (body.formula) {
        out.formula = true;
        break;
      }
    }
    return out;
  }

  PossibleType unary(Op op, const PossibleType& a) const {
    PossibleType out;
    const auto& oi = info(op);
    if (oi.slot[0] == KindClass::Formula) {
      out.formula = a.formula;
      return out;
    }
    if (a.exprs.empty())
      return out;
    switch (op) {
    case Op::MultNo:
    case Op::MultLone:
    case Op::MultSome:
    case Op::MultOne:
      out.formula = true;
      return out;
    case Op::Card:
      out.integer = true;
      return out;
    case Op::Prime:
      out.exprs = a.exprs;
      return out;
    default:
      break;
    }
    if (opts_.precision == Precision::KindOnly) {
      out.exprs.push_back(top(0));
      return out;
    }
    for (const auto& e : a.exprs) {
      if (e.arity != 2)
        continue;
      AbsRel r = e;
      if (op == Op::Transpose) {
        if (e.bound)
          r.bound = transpose(*e.bound);
      } else {
        if (e.bound)
          r.bound = closure(*e.bound);
        if (op == Op::ReflClosure) {
          if (r.bound)
            r.bound = unite(*r.bound, table_.iden());
          r.may_empty = table_.iden().empty() && e.may_empty;
          r.may_nonempty = !table_.iden().empty() || e.may_nonempty;
        }
      }
      add(out.exprs, r);
    }
    widen(out.exprs);
    return out;
  }

  PossibleType binary(Op op, const PossibleType& a, const PossibleType& b) const {
    PossibleType out;
    const auto& oi = info(op);
    if (oi.slot[0] != KindClass::Expr) { // propositional, temporal, integer comparisons
      out.formula = true;
      return out;
    }
    if (opts_.precision == Precision::KindOnly) {
      if (oi.result == KindClass::Formula)
        out.formula = true;
      else
        out.exprs.push_back(top(0));
      return out;
    }
    for (const auto& x : a.exprs)
      for (const auto& y : b.exprs) {
        if (oi.result == KindClass::Formula) {
          if (x.arity == y.arity && may_overlap(x, y)) {
            out.formula = true;
            return out;
          }
          continue;
        }
        combine(op, x, y, out.exprs);
      }
    widen(out.exprs);
    return out;
  }

  void combine(Op op, const AbsRel& x, const AbsRel& y, std::vector<AbsRel>& out) const {
    const int n = x.arity;
    const int k = y.arity;
    switch (op) {
    case Op::Inter:
      if (n != k || !may_overlap(x, y))
        return;
      add(out, AbsRel{n, x.is_top() ? y.bound : y.is_top() ? x.bound : intersect(*x.bound, *y.bound), false, true});
      return;
    case Op::Override:
      if (n < 2)
        return;
      [[fallthrough]];
    case Op::Union:
      if (n != k)
        return;
      add(out, AbsRel{n, lift2(x, y, unite), x.may_empty && y.may_empty, x.may_nonempty || y.may_nonempty});
      return;
    case Op::Diff:
      if (n != k)
        return;
      if (!m_.config().strict_disjoint_minus || y.may_empty)
        add(out, x);
      else if (may_overlap(x, y))
        add(out, AbsRel{n, x.bound, false, true});
      return;
    case Op::Product:
      if (n + k > max_arity_)
        return;
      add(out, AbsRel{n + k, lift2(x, y, product), x.may_empty || y.may_empty, x.may_nonempty && y.may_nonempty});
      return;
    case Op::Join: {
      const int arity = n + k - 2;
      if (arity < 1 || arity > max_arity_ || !x.may_nonempty || !y.may_nonempty)
        return;
      auto bound = lift2(x, y, join);
      if (bound && bound->empty())
        return;
      add(out, AbsRel{arity, std::move(bound), false, true});
      return;
    }
    case Op::DomRestrict: {
      if (n != 1 || !x.may_nonempty || !y.may_nonempty)
        return;
      std::optional<RelType> bound = y.bound;
      if (x.bound && y.bound)
        bound = domain_restrict(*x.bound, *y.bound);
      if (bound && bound->empty())
        return;
      add(out, AbsRel{k, std::move(bound), false, true});
      return;
    }
    case Op::RanRestrict: {
      if (k != 1 || !x.may_nonempty || !y.may_nonempty)
        return;
      std::optional<RelType> bound = x.bound;
      if (x.bound && y.bound)
        bound = range_restrict(*x.bound, *y.bound);
      if (bound && bound->empty())
        return;
      add(out, AbsRel{n, std::move(bound), false, true});
      return;
    }
    default:
      return;
    }
  }

  const Model& m_;
  const SigTable& table_;
  AbsScope scope_;
  const AnalysisOptions& opts_;
  int max_arity_;
};

} // namespace

std::vector<int> PossibleType::arities() const {
  std::vector<int> out;
  for (const auto& e : exprs)
    out.push_back(e.arity);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PossibleType PossibleType::of_kind(const Kind& k) {
  PossibleType out;
  switch (k.cls) {
  case KindClass::Formula: out.formula = true; break;
  case KindClass::Int: out.integer = true; break;
  case KindClass::Expr: out.exprs.push_back(exact(k.type)); break;
  }
  return out;
}

PossibleType PossibleType::maximal(KindClass k, int max_arity) {
  PossibleType out;
  switch (k) {
  case KindClass::Formula: out.formula = true; break;
  case KindClass::Int: out.integer = true; break;
  case KindClass::Expr:
    for (int a = 1; a <= max_arity; ++a)
      out.exprs.push_back(top(a));
    break;
  }
  return out;
}

PossibleType possible_type(const Model& m, const Node& n, const AbsScope& scope, const AnalysisOptions& opts) {
  return Analyzer(m, scope, opts).run(n);
}

bool body_typable(const Model& m, const Node& body, const AnalysisOptions& opts) {
  return possible_type(m, body, {}, opts).formula;
}

AbsScope abstract_scope(const Scope& scope) {
  AbsScope out;
  for (const auto& [name, t] : scope)
    out.emplace_back(name, exact(t));
  return out;
}

} // namespace alloyse
