// SPDX-License-Identifier: Apache-2.0
#include "alloyse/printer.hpp"

#include "alloyse/error.hpp"

namespace alloyse {

namespace {

int node_tier(const Node& n) { return info(n.op).tier; }

bool word_symbol(std::string_view s) { return !s.empty() && std::isalpha(static_cast<unsigned char>(s[0])); }

class Printer {
public:
  explicit Printer(const PrintOptions& opts) : opts_(opts) {}

  // `min_tier`: the loosest tier the context accepts bare. `tail`: nothing
  // follows this node up to the enclosing bracket, so a quantifier body may
  // extend to the end.
  void emit(const Node& n, int min_tier, bool tail, bool root = false) {
    bool parens;
    if (opts_.parens == ParenPolicy::Full)
      parens = !root && info(n.op).fixity != Fixity::Atom;
    else if (n.is_quant())
      parens = !tail;
    else
      parens = node_tier(n) < min_tier;
    if (parens) {
      out_ += '(';
      emit_bare(n, true);
      out_ += ')';
    } else {
      emit_bare(n, tail);
    }
  }

  std::string take() { return std::move(out_); }

private:
  void emit_bare(const Node& n, bool tail) {
    const auto& oi = info(n.op);
    switch (oi.fixity) {
    case Fixity::Atom:
      emit_atom(n);
      return;
    case Fixity::Prefix: {
      out_ += oi.symbol;
      if (word_symbol(oi.symbol))
        out_ += ' ';
      const int operand_tier = oi.tier;
      emit(*n.kids[0], operand_tier, tail);
      return;
    }
    case Fixity::Postfix:
      emit(*n.kids[0], tier::Postfix, false);
      out_ += oi.symbol;
      return;
    case Fixity::Infix: {
      const int lhs = oi.assoc == Assoc::Right ? oi.tier + 1 : oi.tier;
      const int rhs = oi.assoc == Assoc::Right ? oi.tier : oi.tier + 1;
      emit(*n.kids[0], lhs, false);
      if (n.op == Op::Join) {
        out_ += '.';
      } else {
        out_ += ' ';
        out_ += oi.symbol;
        out_ += ' ';
      }
      emit(*n.kids[1], rhs, tail);
      return;
    }
    case Fixity::Binder:
      out_ += oi.symbol;
      out_ += ' ';
      out_ += n.name;
      out_ += " : ";
      emit(*n.kids[0], tier::Binder, false);
      out_ += " | ";
      emit(*n.kids[1], tier::Binder, true);
      return;
    }
  }

  void emit_atom(const Node& n) {
    switch (n.op) {
    case Op::Hole:
      if (!opts_.allow_holes)
        throw Error(ErrorCode::HolesPresent, "the model still contains holes");
      out_ += "(?)";
      return;
    case Op::IntLit:
      out_ += std::to_string(n.value);
      return;
    default:
      out_ += n.name;
      return;
    }
  }

  const PrintOptions& opts_;
  std::string out_;
};

void emit_trivia(std::string& out, const std::string& trivia, std::string_view indent = {}) {
  if (trivia.empty())
    return;
  std::size_t start = 0;
  while (start <= trivia.size()) {
    auto end = trivia.find('\n', start);
    if (end == std::string::npos)
      end = trivia.size();
    out += indent;
    out.append(trivia, start, end - start);
    out += '\n';
    start = end + 1;
  }
}

std::string field_text(const FieldDecl& f) {
  std::string s;
  if (f.is_var)
    s += "var ";
  s += f.name;
  s += " : ";
  for (std::size_t i = 0; i < f.columns.size(); ++i) {
    if (i)
      s += " -> ";
    if (i + 1 == f.columns.size() && f.mult_written) {
      s += to_string(f.mult);
      s += ' ';
    }
    s += f.columns[i];
  }
  return s;
}

std::string sig_text(const SigDecl& s) {
  std::string out;
  if (s.is_var)
    out += "var ";
  if (s.is_abstract)
    out += "abstract ";
  if (s.mult) {
    out += to_string(*s.mult);
    out += ' ';
  }
  out += "sig ";
  out += s.name;
  switch (s.parentage.kind) {
  case Parentage::Kind::TopLevel:
    break;
  case Parentage::Kind::Extends:
    out += " extends " + s.parentage.parents[0];
    break;
  case Parentage::Kind::SubsetOf:
    out += " in ";
    for (std::size_t i = 0; i < s.parentage.parents.size(); ++i) {
      if (i)
        out += " + ";
      out += s.parentage.parents[i];
    }
    break;
  }
  bool multiline = s.fields.size() > 1;
  for (const auto& f : s.fields)
    multiline = multiline || !f.trivia.empty();
  if (s.fields.empty()) {
    out += " {}";
  } else if (!multiline) {
    out += " { " + field_text(s.fields[0]) + " }";
  } else {
    out += " {\n";
    for (std::size_t i = 0; i < s.fields.size(); ++i) {
      emit_trivia(out, s.fields[i].trivia, "  ");
      out += "  " + field_text(s.fields[i]);
      out += i + 1 < s.fields.size() ? ",\n" : "\n";
    }
    out += "}";
  }
  return out;
}

} // namespace

std::string print_node(const Node& n, const PrintOptions& opts) {
  Printer p(opts);
  p.emit(n, tier::Binder, true, true);
  return p.take();
}

std::string print_pred(const PredDecl& p, const PrintOptions& opts) {
  if (!p.body || (p.body->is_hole() && !opts.allow_holes))
    return "pred " + p.name + " {}";
  return "pred " + p.name + " { " + print_node(*p.body, opts) + " }";
}

std::string print_model(const Model& m, const PrintOptions& opts) {
  std::string out;
  bool first = true;
  DeclRef::Kind prev = DeclRef::Kind::Sig;
  for (const auto& ref : m.order()) {
    const std::string* trivia = nullptr;
    std::string text;
    switch (ref.kind) {
    case DeclRef::Kind::Sig:
      trivia = &m.sigs()[ref.index].trivia;
      text = sig_text(m.sigs()[ref.index]);
      break;
    case DeclRef::Kind::Pred:
      trivia = &m.preds()[ref.index].trivia;
      text = print_pred(m.preds()[ref.index], opts);
      break;
    case DeclRef::Kind::Command:
      trivia = &m.commands()[ref.index].trivia;
      text = m.commands()[ref.index].text;
      break;
    }
    // Predicates, commented declarations and changes of declaration kind
    // start a new paragraph.
    if (!first && (!trivia->empty() || ref.kind == DeclRef::Kind::Pred || ref.kind != prev))
      out += '\n';
    emit_trivia(out, *trivia);
    out += text;
    out += '\n';
    first = false;
    prev = ref.kind;
  }
  if (!m.trailing_trivia().empty()) {
    out += '\n';
    emit_trivia(out, m.trailing_trivia());
  }
  return out;
}

} // namespace alloyse
