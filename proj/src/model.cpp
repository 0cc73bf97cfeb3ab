// SPDX-License-Identifier: Apache-2.0
#include "alloyse/model.hpp"

#include "alloyse/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace alloyse {

std::string_view to_string(Mult m) {
  switch (m) {
  case Mult::Lone: return "lone";
  case Mult::One: return "one";
  case Mult::Some: return "some";
  case Mult::Set: return "set";
  }
  return "?";
}

namespace {

using SigIndex = std::map<std::string, const SigDecl*, std::less<>>;

void check_acyclic(const SigDecl& s, const SigIndex& index, std::set<std::string>& done,
                   std::vector<std::string>& stack) {
  if (done.count(s.name))
    return;
  if (std::find(stack.begin(), stack.end(), s.name) != stack.end())
    throw Error(ErrorCode::InvalidModel, "cyclic signature hierarchy through '" + s.name + "'");
  stack.push_back(s.name);
  for (const auto& p : s.parentage.parents)
    check_acyclic(*index.at(p), index, done, stack);
  stack.pop_back();
  done.insert(s.name);
}

} // namespace

std::shared_ptr<const SigTable> SigTable::build(const std::vector<SigDecl>& sigs) {
  auto table = std::make_shared<SigTable>();
  SigIndex index;
  for (const auto& s : sigs) {
    if (!index.emplace(s.name, &s).second)
      throw Error(ErrorCode::InvalidModel, "duplicate signature '" + s.name + "'");
  }
  for (const auto& s : sigs) {
    using K = Parentage::Kind;
    if (s.parentage.kind == K::Extends && s.parentage.parents.size() != 1)
      throw Error(ErrorCode::InvalidModel, "sig '" + s.name + "' must extend exactly one parent");
    if (s.parentage.kind == K::SubsetOf && s.parentage.parents.empty())
      throw Error(ErrorCode::InvalidModel, "subset sig '" + s.name + "' has no parent");
    for (const auto& p : s.parentage.parents) {
      auto it = index.find(p);
      if (it == index.end())
        throw Error(ErrorCode::UnknownSig, "unknown signature '" + p + "'");
      if (s.parentage.kind == K::Extends && it->second->parentage.kind == K::SubsetOf)
        throw Error(ErrorCode::InvalidModel,
                    "sig '" + s.name + "' cannot extend subset sig '" + p + "'");
    }
  }
  {
    std::set<std::string> done;
    std::vector<std::string> stack;
    for (const auto& s : sigs)
      check_acyclic(s, index, done, stack);
  }

  // Extends forest: leaves and remainders become prims, in declaration order.
  std::map<std::string, std::vector<const SigDecl*>, std::less<>> children;
  for (const auto& s : sigs)
    if (s.parentage.kind == Parentage::Kind::Extends)
      children[s.parentage.parents[0]].push_back(&s);

  auto assign = [&](auto&& self, const SigDecl& s) -> const std::vector<PrimId>& {
    std::vector<PrimId> mine;
    auto kids = children.find(s.name);
    if (kids == children.end() || kids->second.empty()) {
      mine.push_back(static_cast<PrimId>(table->prims_.size()));
      table->prims_.push_back({s.name, s.name, false});
    } else {
      for (const auto* c : kids->second) {
        const auto& sub = self(self, *c);
        mine.insert(mine.end(), sub.begin(), sub.end());
      }
      if (!s.is_abstract) {
        mine.push_back(static_cast<PrimId>(table->prims_.size()));
        table->prims_.push_back({s.name + "$remainder", s.name, true});
      }
    }
    std::sort(mine.begin(), mine.end());
    return table->sig_prims_[s.name] = std::move(mine);
  };
  for (const auto& s : sigs)
    if (s.parentage.kind == Parentage::Kind::TopLevel)
      assign(assign, s);

  auto subset = [&](auto&& self, const SigDecl& s) -> const std::vector<PrimId>& {
    if (auto it = table->sig_prims_.find(s.name); it != table->sig_prims_.end())
      return it->second;
    std::vector<PrimId> mine;
    for (const auto& p : s.parentage.parents) {
      const auto& sub = self(self, *index.at(p));
      mine.insert(mine.end(), sub.begin(), sub.end());
    }
    std::sort(mine.begin(), mine.end());
    mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
    return table->sig_prims_[s.name] = std::move(mine);
  };
  for (const auto& s : sigs)
    subset(subset, s);

  std::vector<PrimId> all(table->prims_.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = static_cast<PrimId>(i);
  table->univ_ = RelType::unary(all);
  table->iden_ = product(table->univ_, table->univ_);

  for (const auto& s : sigs) {
    std::set<std::string> seen;
    for (const auto& f : s.fields) {
      if (!seen.insert(f.name).second)
        throw Error(ErrorCode::InvalidModel, "duplicate field '" + f.name + "' in sig '" + s.name + "'");
      if (f.columns.empty())
        throw Error(ErrorCode::InvalidModel, "field '" + f.name + "' has no columns");
      RelType t = table->sig_type(s.name);
      for (const auto& col : f.columns) {
        if (!index.count(col))
          throw Error(ErrorCode::UnknownSig, "unknown signature '" + col + "' in field '" + f.name + "'");
        t = product(t, table->sig_type(col));
      }
      table->fields_by_name_[f.name].push_back(f);
      table->field_types_[f.name + "\x1f" + s.name] = std::move(t);
    }
  }
  return table;
}

const std::vector<PrimId>& SigTable::prims_of(std::string_view sig) const {
  auto it = sig_prims_.find(sig);
  if (it == sig_prims_.end())
    throw Error(ErrorCode::UnknownSig, "unknown signature '" + std::string(sig) + "'");
  return it->second;
}

const FieldDecl* SigTable::find_field(std::string_view name) const {
  auto it = fields_by_name_.find(name);
  if (it == fields_by_name_.end())
    return nullptr;
  if (it->second.size() > 1)
    throw Error(ErrorCode::UnknownField, "field name '" + std::string(name) + "' is ambiguous");
  return &it->second.front();
}

RelType SigTable::sig_type(std::string_view sig) const { return RelType::unary(prims_of(sig)); }

RelType SigTable::field_type(std::string_view field) const {
  const FieldDecl* f = find_field(field);
  if (!f)
    throw Error(ErrorCode::UnknownField, "unknown field '" + std::string(field) + "'");
  return field_types_.at(f->name + "\x1f" + f->owner);
}

std::string SigTable::format(const RelType& t) const {
  std::string out = "{";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i)
      out += ", ";
    auto row = t.tuple(i);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c)
        out += "->";
      out += "this/";
      out += prims_[row[c]].name;
    }
  }
  out += "}";
  return out;
}

Model::Model() : table_(SigTable::build({})) {}

Model::Model(std::vector<SigDecl> sigs, Config config)
    : sigs_(std::move(sigs)), config_(config) {
  for (auto& s : sigs_)
    for (auto& f : s.fields)
      f.owner = s.name;
  table_ = SigTable::build(sigs_);
  for (std::size_t i = 0; i < sigs_.size(); ++i)
    order_.push_back({DeclRef::Kind::Sig, i});
}

const PredDecl* Model::find_pred(std::string_view name) const {
  for (const auto& p : preds_)
    if (p.name == name)
      return &p;
  return nullptr;
}

std::optional<std::size_t> Model::pred_index(std::string_view name) const {
  for (std::size_t i = 0; i < preds_.size(); ++i)
    if (preds_[i].name == name)
      return i;
  return std::nullopt;
}

void Model::add_pred(PredDecl p) {
  if (find_pred(p.name))
    throw Error(ErrorCode::InvalidModel, "duplicate predicate '" + p.name + "'");
  order_.push_back({DeclRef::Kind::Pred, preds_.size()});
  preds_.push_back(std::move(p));
}

void Model::set_body(std::size_t pred_index, NodePtr body) { preds_.at(pred_index).body = std::move(body); }

void Model::add_command(Command c) {
  order_.push_back({DeclRef::Kind::Command, commands_.size()});
  commands_.push_back(std::move(c));
}

std::optional<std::size_t> Model::pred_containing(NodeId id) const {
  for (std::size_t i = 0; i < preds_.size(); ++i)
    if (preds_[i].body && locate(*preds_[i].body, id))
      return i;
  return std::nullopt;
}

std::vector<std::string> prims(const Model& m, std::string_view sig) {
  std::vector<std::string> out;
  for (PrimId p : m.table().prims_of(sig))
    out.push_back(m.table().prims()[p].name);
  return out;
}

RelType declared_type(const Model& m, LeafRef ref, std::string_view name) {
  const auto& t = m.table();
  switch (ref) {
  case LeafRef::Sig:
    if (!t.has_sig(name))
      throw Error(ErrorCode::UnknownRef, "unknown signature '" + std::string(name) + "'");
    return t.sig_type(name);
  case LeafRef::Field:
    if (!t.find_field(name))
      throw Error(ErrorCode::UnknownRef, "unknown field '" + std::string(name) + "'");
    return t.field_type(name);
  case LeafRef::Univ: return t.univ();
  case LeafRef::Iden: return t.iden();
  case LeafRef::None: return t.none();
  case LeafRef::Var: break;
  }
  throw Error(ErrorCode::UnknownRef, "variable '" + std::string(name) + "' is not in scope");
}

namespace {
constexpr std::array<std::string_view, 45> kKeywords = {
    "abstract", "after", "all", "always", "and", "as", "assert", "before", "but", "check",
    "disj", "else", "enum", "eventually", "exactly", "extends", "fact", "for", "fun", "historically",
    "iden", "iff", "implies", "in", "Int", "let", "lone", "module", "no", "none",
    "not", "once", "one", "open", "or", "pred", "releases", "run", "set", "sig",
    "since", "some", "sum", "triggered", "univ"};
constexpr std::array<std::string_view, 4> kMoreKeywords = {"until", "var", "int", "steps"};
} // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end() ||
         std::find(kMoreKeywords.begin(), kMoreKeywords.end(), word) != kMoreKeywords.end();
}

bool is_identifier(std::string_view word) {
  if (word.empty() || !std::isalpha(static_cast<unsigned char>(word[0])))
    return false;
  for (char c : word)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      return false;
  return !is_keyword(word);
}

} // namespace alloyse
