// SPDX-License-Identifier: Apache-2.0
#include "alloyse/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace alloyse {

namespace {

enum class Tok : std::uint8_t { Ident, Number, Word, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
  std::string trivia; // comments preceding the token
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < src.size(); ++i)
      if (src[i] == '\n')
        line_starts_.push_back(i + 1);
  }

  SourcePos pos_at(std::size_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    const auto line = static_cast<int>(it - line_starts_.begin());
    return {offset, line, static_cast<int>(offset - line_starts_[static_cast<std::size_t>(line - 1)]) + 1};
  }

  SourceSpan span(std::size_t a, std::size_t b) const { return {pos_at(a), pos_at(b)}; }

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      Token t = next();
      const bool end = t.kind == Tok::End;
      out.push_back(std::move(t));
      if (end)
        break;
    }
    return out;
  }

private:
  Token next() {
    std::string trivia;
    skip_space_and_comments(trivia);
    Token t;
    t.trivia = std::move(trivia);
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::End;
      t.span = span(start, start);
      return t;
    }
    const char c = src_[pos_];
    if (ident_start(c)) {
      while (pos_ < src_.size() && ident_char(src_[pos_]))
        ++pos_;
      t.text = std::string(src_.substr(start, pos_ - start));
      t.kind = is_keyword(t.text) ? Tok::Word : Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      t.text = std::string(src_.substr(start, pos_ - start));
      t.kind = Tok::Number;
    } else {
      static constexpr std::array<std::string_view, 20> multi = {
          "<=>", "!=", "=>", "=<", ">=", "<:", ":>", "->", "++", "&&", "||"};
      t.kind = Tok::Punct;
      // `!in` is one token only when `in` is a whole word.
      if (src_.substr(pos_, 3) == "!in" && (pos_ + 3 >= src_.size() || !ident_char(src_[pos_ + 3]))) {
        pos_ += 3;
      } else {
        std::size_t len = 1;
        for (auto m : multi)
          if (!m.empty() && src_.substr(pos_, m.size()) == m) {
            len = m.size();
            break;
          }
        pos_ += len;
      }
      t.text = std::string(src_.substr(start, pos_ - start));
    }
    t.span = span(start, pos_);
    return t;
  }

  void skip_space_and_comments(std::string& trivia) {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      if (src_.substr(pos_, 2) == "//" || src_.substr(pos_, 2) == "--") {
        const auto end = src_.find('\n', pos_);
        const auto stop = end == std::string_view::npos ? src_.size() : end;
        append(trivia, src_.substr(pos_, stop - pos_));
        pos_ = stop;
      } else if (src_.substr(pos_, 2) == "/*") {
        const auto end = src_.find("*/", pos_ + 2);
        if (end == std::string_view::npos)
          throw ParseError(ErrorCode::ParseError, "unterminated comment", span(pos_, src_.size()));
        append(trivia, src_.substr(pos_, end + 2 - pos_));
        pos_ = end + 2;
      } else {
        return;
      }
    }
  }

  static void append(std::string& trivia, std::string_view comment) {
    if (!trivia.empty())
      trivia += '\n';
    trivia += comment;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> line_starts_;
};

struct InfixMatch {
  Op op;
  int tokens; // 2 for `not in` / `not =`
};

std::optional<InfixMatch> infix_at(const Token& t, const Token& next) {
  if (t.kind == Tok::Punct) {
    static const std::pair<std::string_view, Op> puncts[] = {
        {"&", Op::Inter}, {"+", Op::Union}, {"-", Op::Diff}, {"++", Op::Override}, {"<:", Op::DomRestrict},
        {":>", Op::RanRestrict}, {".", Op::Join}, {"->", Op::Product}, {"=", Op::Eq}, {"!=", Op::NotEq},
        {"!in", Op::NotIn}, {"<", Op::Lt}, {">", Op::Gt}, {"=<", Op::Le}, {">=", Op::Ge},
        {"=>", Op::Implies}, {"&&", Op::And}, {"||", Op::Or}, {"<=>", Op::Iff}, {";", Op::Seq}};
    for (const auto& [sym, op] : puncts)
      if (t.text == sym)
        return InfixMatch{op, 1};
    return std::nullopt;
  }
  if (t.kind == Tok::Word) {
    static const std::pair<std::string_view, Op> words[] = {
        {"in", Op::In}, {"and", Op::And}, {"or", Op::Or}, {"iff", Op::Iff}, {"implies", Op::Implies},
        {"since", Op::Since}, {"triggered", Op::Triggered}, {"until", Op::Until}, {"releases", Op::Releases}};
    for (const auto& [w, op] : words)
      if (t.text == w)
        return InfixMatch{op, 1};
    if (t.text == "not" && next.kind == Tok::Word && next.text == "in")
      return InfixMatch{Op::NotIn, 2};
    if (t.text == "not" && next.kind == Tok::Punct && next.text == "=")
      return InfixMatch{Op::NotEq, 2};
  }
  return std::nullopt;
}

std::optional<Op> temporal_prefix(const Token& t) {
  if (t.kind != Tok::Word)
    return std::nullopt;
  static const std::pair<std::string_view, Op> words[] = {
      {"always", Op::Always}, {"eventually", Op::Eventually}, {"after", Op::After},
      {"before", Op::Before}, {"historically", Op::Historically}, {"once", Op::Once}};
  for (const auto& [w, op] : words)
    if (t.text == w)
      return op;
  return std::nullopt;
}

std::optional<Mult> mult_word(const Token& t) {
  if (t.kind != Tok::Word)
    return std::nullopt;
  if (t.text == "lone") return Mult::Lone;
  if (t.text == "one") return Mult::One;
  if (t.text == "some") return Mult::Some;
  if (t.text == "set") return Mult::Set;
  return std::nullopt;
}

Op quant_op(std::string_view w) {
  if (w == "all") return Op::All;
  if (w == "no") return Op::No;
  if (w == "some") return Op::Some;
  if (w == "lone") return Op::Lone;
  return Op::One;
}

Op mult_op(std::string_view w) {
  if (w == "no") return Op::MultNo;
  if (w == "some") return Op::MultSome;
  if (w == "lone") return Op::MultLone;
  return Op::MultOne;
}

NodePtr retag_hole(const NodePtr& n, KindClass k) {
  if (!n->is_hole() || n->hole_class == k)
    return n;
  return make_hole(n->id, k);
}

/// Recursive-descent / precedence-climbing parser over a token vector.
class Parser {
public:
  Parser(const Lexer& lexer, std::vector<Token> tokens, std::string_view src)
      : lexer_(lexer), toks_(std::move(tokens)), src_(src) {}

  ParsedModel parse_model(Config config);
  NodePtr parse_fragment(KindClass expected, Model& model, std::span<const std::string> vars);

private:
  struct PendingPred {
    std::string name;
    std::string trivia;
    std::size_t body_begin;
    std::size_t body_end; // index of the closing '}'
  };

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& take() {
    const Token& t = toks_[pos_];
    last_end_ = t.span.end;
    if (pos_ + 1 < toks_.size())
      ++pos_;
    return t;
  }
  bool is(const Token& t, std::string_view text) const {
    return (t.kind == Tok::Punct || t.kind == Tok::Word) && t.text == text;
  }
  bool at(std::string_view text) const { return is(peek(), text); }

  [[noreturn]] void fail(const Token& t, std::string msg, std::vector<std::string> expected = {},
                         ErrorCode code = ErrorCode::ParseError) const {
    if (expected.size() > 8)
      expected.resize(8);
    const std::string shown = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(code, msg + " at " + std::to_string(t.span.start.line) + ":" +
                               std::to_string(t.span.start.column) + " near " + shown,
                     t.span, std::move(expected));
  }

  void expect(std::string_view text, std::vector<std::string> expected = {}) {
    if (!at(text)) {
      if (expected.empty())
        expected.push_back("'" + std::string(text) + "'");
      fail(peek(), "expected '" + std::string(text) + "'", std::move(expected));
    }
    take();
  }

  std::string expect_ident(std::string_view what) {
    if (peek().kind != Tok::Ident)
      fail(peek(), "expected " + std::string(what), {"identifier"});
    return take().text;
  }

  // declarations
  SigDecl parse_sig();
  FieldDecl parse_field();
  PendingPred parse_pred_header();
  Command parse_command();

  // expressions
  NodePtr parse_formula_block(KindClass cls);
  NodePtr parse_expr(int min_tier, KindClass slot);
  NodePtr parse_prefix(KindClass slot);
  NodePtr parse_quant();
  NodePtr resolve_name(const Token& t);
  bool can_start_expression(const Token& t) const;

  NodeId fresh() { return model_->fresh_node_id(); }
  NodePtr record(NodePtr n, SourcePos start) {
    if (spans_)
      (*spans_)[n->id] = SourceSpan{start, last_end_};
    return n;
  }

  const Lexer& lexer_;
  std::vector<Token> toks_;
  std::string_view src_;
  std::size_t pos_ = 0;
  SourcePos last_end_;
  Model* model_ = nullptr;
  SpanTable* spans_ = nullptr;
  std::vector<std::string> vars_;
  std::vector<std::string> pred_names_;
};

ParsedModel Parser::parse_model(Config config) {
  std::vector<SigDecl> sigs;
  std::vector<PendingPred> preds;
  std::vector<Command> commands;
  std::vector<DeclRef> order;

  while (peek().kind != Tok::End) {
    const Token& t = peek();
    if (is(t, "sig") || is(t, "var") || is(t, "abstract") || is(t, "one") || is(t, "lone") || is(t, "some")) {
      order.push_back({DeclRef::Kind::Sig, sigs.size()});
      sigs.push_back(parse_sig());
    } else if (is(t, "pred")) {
      order.push_back({DeclRef::Kind::Pred, preds.size()});
      preds.push_back(parse_pred_header());
    } else if (is(t, "run") || is(t, "check")) {
      order.push_back({DeclRef::Kind::Command, commands.size()});
      commands.push_back(parse_command());
    } else if (is(t, "fact") || is(t, "fun") || is(t, "assert") || is(t, "module") || is(t, "open") ||
               is(t, "enum")) {
      fail(t, "unsupported paragraph '" + t.text + "'", {"signature", "predicate", "command"});
    } else {
      fail(t, "expected a declaration", {"signature", "predicate", "command"});
    }
  }

  ParsedModel out;
  try {
    out.model = Model(std::move(sigs), config);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.code(), e.what(), toks_.front().span);
  }
  model_ = &out.model;
  spans_ = &out.spans;
  for (const auto& p : preds)
    pred_names_.push_back(p.name);

  for (const auto& p : preds) {
    pos_ = p.body_begin;
    NodePtr body = parse_formula_block(KindClass::Formula);
    if (pos_ != p.body_end)
      fail(peek(), "expected '}'", {"binary operator", "expression", "'}'"});
    out.model.add_pred(PredDecl{p.name, std::move(body), p.trivia});
  }
  for (auto& c : commands)
    out.model.add_command(std::move(c));
  out.model.set_order(std::move(order));
  out.model.set_trailing_trivia(toks_.back().trivia);
  return out;
}

SigDecl Parser::parse_sig() {
  SigDecl s;
  s.trivia = peek().trivia;
  for (;;) {
    if (at("var")) {
      take();
      s.is_var = true;
    } else if (at("abstract")) {
      take();
      s.is_abstract = true;
    } else if (auto m = mult_word(peek()); m && *m != Mult::Set) {
      take();
      s.mult = m;
    } else {
      break;
    }
  }
  expect("sig", {"'sig'"});
  s.name = expect_ident("signature name");
  if (at(","))
    fail(peek(), "multiple signature names per declaration are not supported", {"'{'", "'extends'", "'in'"});
  if (at("extends")) {
    take();
    s.parentage.kind = Parentage::Kind::Extends;
    s.parentage.parents.push_back(expect_ident("parent signature"));
  } else if (at("in")) {
    take();
    s.parentage.kind = Parentage::Kind::SubsetOf;
    s.parentage.parents.push_back(expect_ident("parent signature"));
    while (at("+")) {
      take();
      s.parentage.parents.push_back(expect_ident("parent signature"));
    }
  }
  expect("{", {"'{'", "'extends'", "'in'"});
  while (!at("}")) {
    s.fields.push_back(parse_field());
    s.fields.back().owner = s.name;
    if (at(","))
      take();
    else if (!at("}"))
      fail(peek(), "expected ',' or '}'", {"','", "'}'"});
  }
  take();
  return s;
}

FieldDecl Parser::parse_field() {
  FieldDecl f;
  f.trivia = peek().trivia;
  if (at("var")) {
    take();
    f.is_var = true;
  }
  if (at("disj"))
    fail(peek(), "'disj' field declarations are not supported", {"identifier"});
  f.name = expect_ident("field name");
  expect(":", {"':'"});
  std::optional<Mult> mult;
  for (;;) {
    mult = mult_word(peek());
    if (mult)
      take();
    f.columns.push_back(expect_ident("signature name"));
    if (!at("->"))
      break;
    if (mult)
      fail(peek(), "a multiplicity is only supported on the final column", {"'}'", "','"});
    take();
  }
  if (mult) {
    f.mult = *mult;
    f.mult_written = true;
  } else {
    f.mult = f.columns.size() == 1 ? Mult::One : Mult::Set;
  }
  return f;
}

Parser::PendingPred Parser::parse_pred_header() {
  PendingPred p;
  p.trivia = peek().trivia;
  take(); // pred
  p.name = expect_ident("predicate name");
  if (at("[")) {
    take();
    expect("]", {"']'"});
  }
  expect("{", {"'{'"});
  p.body_begin = pos_;
  int depth = 1;
  while (peek().kind != Tok::End) {
    if (at("{"))
      ++depth;
    else if (at("}") && --depth == 0)
      break;
    take();
  }
  if (peek().kind == Tok::End)
    fail(peek(), "unterminated predicate body", {"'}'"});
  p.body_end = pos_;
  take();
  return p;
}

Command Parser::parse_command() {
  Command c;
  c.trivia = peek().trivia;
  const std::size_t start = peek().span.start.offset;
  std::size_t stop = src_.find('\n', start);
  if (stop == std::string_view::npos)
    stop = src_.size();
  // A command with a block body runs to the end of the line holding its '}'.
  const auto open = src_.substr(start, stop - start).find('{');
  if (open != std::string_view::npos) {
    int depth = 0;
    std::size_t i = start + open;
    for (; i < src_.size(); ++i) {
      if (src_[i] == '{')
        ++depth;
      else if (src_[i] == '}' && --depth == 0)
        break;
    }
    stop = src_.find('\n', i);
    if (stop == std::string_view::npos)
      stop = src_.size();
  }
  std::string text(src_.substr(start, stop - start));
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.pop_back();
  c.text = std::move(text);
  while (peek().kind != Tok::End && peek().span.start.offset < stop)
    take();
  return c;
}

bool Parser::can_start_expression(const Token& t) const {
  switch (t.kind) {
  case Tok::Ident:
  case Tok::Number:
    return true;
  case Tok::End:
    return false;
  case Tok::Punct:
    return t.text == "(" || t.text == "!" || t.text == "#" || t.text == "~" || t.text == "^" || t.text == "*";
  case Tok::Word:
    return t.text == "all" || t.text == "no" || t.text == "some" || t.text == "lone" || t.text == "one" ||
           t.text == "not" || t.text == "univ" || t.text == "none" || t.text == "iden" ||
           temporal_prefix(t).has_value();
  }
  return false;
}

NodePtr Parser::parse_formula_block(KindClass cls) {
  // Juxtaposed formulas inside a block are conjoined.
  const SourcePos start = peek().span.start;
  NodePtr acc;
  while (!at("}")) {
    if (!can_start_expression(peek()))
      fail(peek(), acc ? "unexpected token" : "expected a formula",
           acc ? std::vector<std::string>{"binary operator", "expression", "'}'"}
               : std::vector<std::string>{"expression", "'}'"});
    NodePtr f = retag_hole(parse_expr(tier::Binder, cls), cls);
    acc = acc ? record(make_binary(fresh(), Op::And, acc, f), start) : f;
  }
  if (!acc) {
    acc = make_hole(fresh(), cls);
    if (spans_)
      (*spans_)[acc->id] = SourceSpan{start, start};
  }
  return acc;
}

NodePtr Parser::parse_expr(int min_tier, KindClass slot) {
  const SourcePos start = peek().span.start;
  NodePtr lhs = parse_prefix(slot);
  for (;;) {
    const Token& t = peek();
    if (is(t, "'")) {
      if (tier::Postfix < min_tier)
        break;
      take();
      lhs = record(make_unary(fresh(), Op::Prime, retag_hole(lhs, KindClass::Expr)), start);
      continue;
    }
    auto m = infix_at(t, peek(1));
    if (!m)
      break;
    const auto& oi = info(m->op);
    if (oi.tier < min_tier)
      break;
    for (int i = 0; i < m->tokens; ++i)
      take();
    const int rhs_min = oi.assoc == Assoc::Right ? oi.tier : oi.tier + 1;
    if (!can_start_expression(peek()))
      fail(peek(), "expected an expression after '" + std::string(oi.symbol) + "'", {"expression"});
    NodePtr rhs = parse_expr(rhs_min, oi.slot[1]);
    lhs = record(make_binary(fresh(), m->op, retag_hole(lhs, oi.slot[0]), retag_hole(rhs, oi.slot[1])), start);
  }
  return lhs;
}

NodePtr Parser::parse_prefix(KindClass slot) {
  const Token& t = peek();
  const SourcePos start = t.span.start;
  if (is(t, "(")) {
    if (is(peek(1), "?") && is(peek(2), ")")) {
      take();
      take();
      take();
      return record(make_hole(fresh(), slot), start);
    }
    take();
    NodePtr inner = parse_expr(tier::Binder, slot);
    expect(")", {"binary operator", "')'"});
    return inner;
  }
  if (t.kind == Tok::Word) {
    if (t.text == "all")
      return parse_quant();
    if (t.text == "no" || t.text == "some" || t.text == "lone" || t.text == "one") {
      if (peek(1).kind == Tok::Ident && (is(peek(2), ":") || is(peek(2), ",")))
        return parse_quant();
      const Op op = mult_op(t.text);
      take();
      NodePtr operand = parse_expr(tier::Mult, KindClass::Expr);
      return record(make_unary(fresh(), op, retag_hole(operand, KindClass::Expr)), start);
    }
    if (t.text == "not") {
      take();
      NodePtr operand = parse_expr(tier::UnaryFormula, KindClass::Formula);
      return record(make_unary(fresh(), Op::Not, retag_hole(operand, KindClass::Formula)), start);
    }
    if (auto op = temporal_prefix(t)) {
      take();
      NodePtr operand = parse_expr(tier::UnaryFormula, KindClass::Formula);
      return record(make_unary(fresh(), *op, retag_hole(operand, KindClass::Formula)), start);
    }
    if (t.text == "univ" || t.text == "none" || t.text == "iden") {
      const LeafRef ref = t.text == "univ" ? LeafRef::Univ : t.text == "none" ? LeafRef::None : LeafRef::Iden;
      std::string name = take().text;
      return record(make_leaf(fresh(), ref, std::move(name)), start);
    }
    if (t.text == "set" || t.text == "disj" || t.text == "let" || t.text == "sum" || t.text == "Int" ||
        t.text == "int")
      fail(t, "'" + t.text + "' is not supported in expressions", {"expression"});
    fail(t, "expected an expression", {"expression"});
  }
  if (t.kind == Tok::Punct) {
    if (t.text == "!") {
      take();
      NodePtr operand = parse_expr(tier::UnaryFormula, KindClass::Formula);
      return record(make_unary(fresh(), Op::Not, retag_hole(operand, KindClass::Formula)), start);
    }
    Op op;
    int t_operand;
    if (t.text == "#") {
      op = Op::Card;
      t_operand = tier::Card;
    } else if (t.text == "~") {
      op = Op::Transpose;
      t_operand = tier::UnaryRel;
    } else if (t.text == "^") {
      op = Op::Closure;
      t_operand = tier::UnaryRel;
    } else if (t.text == "*") {
      op = Op::ReflClosure;
      t_operand = tier::UnaryRel;
    } else {
      fail(t, "expected an expression", {"expression"});
    }
    take();
    NodePtr operand = parse_expr(t_operand, KindClass::Expr);
    return record(make_unary(fresh(), op, retag_hole(operand, KindClass::Expr)), start);
  }
  if (t.kind == Tok::Number) {
    std::int64_t v = 0;
    try {
      v = std::stoll(t.text);
    } catch (const std::exception&) {
      fail(t, "integer literal out of range", {"expression"});
    }
    take();
    return record(make_int(fresh(), v), start);
  }
  if (t.kind == Tok::Ident) {
    const Token& name = take();
    return record(resolve_name(name), start);
  }
  fail(t, "expected an expression", {"expression"});
}

NodePtr Parser::parse_quant() {
  const SourcePos start = peek().span.start;
  const Op q = quant_op(take().text);
  if (at("disj"))
    fail(peek(), "'disj' quantifiers are not supported", {"identifier"});
  if (peek().kind != Tok::Ident)
    fail(peek(), "expected a variable name", {"identifier"});
  std::string var = take().text;
  if (at(","))
    fail(peek(), "multiple variables per quantifier are not supported", {"':'"});
  expect(":", {"':'", "','"});
  if (!can_start_expression(peek()))
    fail(peek(), "expected a quantifier domain", {"expression"});
  NodePtr domain = retag_hole(parse_expr(tier::Binder, KindClass::Expr), KindClass::Expr);
  expect("|", {"binary operator", "'|'"});
  if (!can_start_expression(peek()))
    fail(peek(), "expected a quantifier body", {"expression"});
  vars_.push_back(var);
  NodePtr body = retag_hole(parse_expr(tier::Binder, KindClass::Formula), KindClass::Formula);
  vars_.pop_back();
  const NodeId id = fresh();
  const NodeId binder = fresh();
  return record(make_quant(id, q, std::move(var), binder, std::move(domain), std::move(body)), start);
}

NodePtr Parser::resolve_name(const Token& t) {
  const auto& name = t.text;
  for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
    if (*it == name)
      return make_leaf(fresh(), LeafRef::Var, name);
  const auto& table = model_->table();
  if (table.has_sig(name))
    return make_leaf(fresh(), LeafRef::Sig, name);
  try {
    if (table.find_field(name))
      return make_leaf(fresh(), LeafRef::Field, name);
  } catch (const Error& e) {
    fail(t, e.what(), {}, ErrorCode::UnknownField);
  }
  if (std::find(pred_names_.begin(), pred_names_.end(), name) != pred_names_.end())
    return make_pred_call(fresh(), name);
  fail(t, "unknown name '" + name + "'", {}, ErrorCode::UnknownRef);
}

NodePtr Parser::parse_fragment(KindClass expected, Model& model, std::span<const std::string> vars) {
  model_ = &model;
  vars_.assign(vars.begin(), vars.end());
  for (const auto& p : model.preds())
    pred_names_.push_back(p.name);
  if (!can_start_expression(peek()))
    fail(peek(), "expected an expression", {"expression"});
  NodePtr n = retag_hole(parse_expr(tier::Binder, expected), expected);
  if (peek().kind != Tok::End)
    fail(peek(), "unexpected trailing input", {"binary operator", "end of input"});
  if (n->kind_class() != expected)
    throw ParseError(ErrorCode::KindMismatch,
                     "fragment is " + std::string(to_string(n->kind_class())) + ", expected " +
                         std::string(to_string(expected)),
                     lexer_.span(0, src_.size()));
  return n;
}

} // namespace

ParsedModel parse_model(std::string_view text, Config config) {
  Lexer lexer(text);
  Parser p(lexer, lexer.run(), text);
  return p.parse_model(config);
}

NodePtr parse_fragment(std::string_view text, KindClass expected, Model& model, std::span<const std::string> vars) {
  Lexer lexer(text);
  Parser p(lexer, lexer.run(), text);
  return p.parse_fragment(expected, model, vars);
}

} // namespace alloyse
