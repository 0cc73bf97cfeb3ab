// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace alloyse {

using NodeId = std::uint64_t;

/// What a slot or a node produces: a set (rounded), a formula (squared) or an
/// integer.
enum class KindClass : std::uint8_t { Expr, Formula, Int };

std::string_view to_string(KindClass k);
/// "rounded", "squared" or "int".
std::string_view shape_name(KindClass k);

enum class Op : std::uint8_t {
  Hole,
  Leaf,
  // unary relational
  Transpose,
  Closure,
  ReflClosure,
  // multiplicity tests
  MultNo,
  MultLone,
  MultSome,
  MultOne,
  Not,
  // binary relational
  Inter,
  Union,
  Diff,
  Override,
  DomRestrict,
  RanRestrict,
  Join,
  Product,
  // comparisons
  In,
  Eq,
  NotIn,
  NotEq,
  Lt,
  Gt,
  Le,
  Ge,
  Card,
  IntLit,
  // propositional
  Or,
  And,
  Iff,
  Implies,
  // quantifiers
  All,
  No,
  Some,
  Lone,
  One,
  // temporal
  Always,
  Eventually,
  After,
  Before,
  Historically,
  Once,
  Prime,
  Since,
  Triggered,
  Until,
  Releases,
  Seq,
  PredCall,
};

/// Node forms, grouping operators that share typing and syntax.
enum class Form : std::uint8_t {
  Hole,
  SetLeaf,
  UnRel,
  MultFormula,
  Not,
  BinRel,
  Compare,
  IntCompare,
  Card,
  IntLit,
  Prop,
  Quant,
  TempUn,
  Prime,
  TempBin,
  PredCall,
};

std::string_view to_string(Form f);

/// Palette panel grouping.
enum class Category : std::uint8_t { Relational, Propositional, FirstOrder, LTL, BasicSet, Integer, Predicate };

std::string_view to_string(Category c);

enum class Fixity : std::uint8_t { Atom, Prefix, Postfix, Infix, Binder };
enum class Assoc : std::uint8_t { None, Left, Right };

struct OpInfo {
  Op op;
  std::string_view symbol;
  Form form;
  Category category;
  Fixity fixity;
  int operands;                 // hole slots of the block template (quantifier: domain, body)
  std::array<KindClass, 2> slot; // kind class demanded by each operand slot
  KindClass result;
  int tier;                      // binding tier; larger binds tighter
  Assoc assoc;
};

const OpInfo& info(Op op);
/// Operators in palette order, one entry per operator form (excludes Hole,
/// Leaf, IntLit and PredCall, which are not operator blocks).
std::span<const Op> palette_operators();

/// Binding tiers, loosest first. Exposed for the printer and parser.
namespace tier {
inline constexpr int Binder = 1;
inline constexpr int Or = 2;
inline constexpr int Iff = 3;
inline constexpr int Implies = 4;
inline constexpr int And = 5;
inline constexpr int Seq = 6;
inline constexpr int TempBin = 7;
inline constexpr int UnaryFormula = 8;
inline constexpr int Compare = 9;
inline constexpr int Mult = 10;
inline constexpr int Plus = 11;
inline constexpr int Card = 12;
inline constexpr int Override = 13;
inline constexpr int Inter = 14;
inline constexpr int Product = 15;
inline constexpr int DomRestrict = 16;
inline constexpr int RanRestrict = 17;
inline constexpr int Join = 18;
inline constexpr int UnaryRel = 19;
inline constexpr int Postfix = 20;
inline constexpr int Atom = 21;
} // namespace tier

enum class LeafRef : std::uint8_t { Sig, Field, Var, Univ, None, Iden };

std::string_view to_string(LeafRef r);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// An immutable AST vertex. Edits rebuild the path to the root and share every
/// untouched subtree, so a NodePtr is a stable snapshot.
struct Node {
  NodeId id = 0;
  Op op = Op::Hole;
  KindClass hole_class = KindClass::Formula; // Hole only
  LeafRef leaf = LeafRef::Sig;               // Leaf only
  std::string name;                          // leaf/pred name, or quantifier variable
  NodeId binder_id = 0;                      // Quant only: id of the [var] slot
  std::int64_t value = 0;                    // IntLit only
  std::vector<NodePtr> kids;

  Form form() const { return info(op).form; }
  bool is_hole() const { return op == Op::Hole; }
  bool is_quant() const { return form() == Form::Quant; }
  /// Kind class produced by this node (holes: their expected class).
  KindClass kind_class() const { return op == Op::Hole ? hole_class : info(op).result; }
};

NodePtr make_hole(NodeId id, KindClass k);
NodePtr make_leaf(NodeId id, LeafRef ref, std::string name);
NodePtr make_int(NodeId id, std::int64_t value);
NodePtr make_pred_call(NodeId id, std::string name);
NodePtr make_unary(NodeId id, Op op, NodePtr operand);
NodePtr make_binary(NodeId id, Op op, NodePtr lhs, NodePtr rhs);
NodePtr make_quant(NodeId id, Op q, std::string var, NodeId binder_id, NodePtr domain, NodePtr body);
/// Same node with new children (keeps id and payload).
NodePtr with_kids(const Node& n, std::vector<NodePtr> kids);

/// Structural equality ignoring node ids.
bool same_shape(const Node& a, const Node& b);

std::size_t count_nodes(const Node& n);
std::size_t count_holes(const Node& n);
/// Height with leaves and holes at 0.
int height(const Node& n);

/// One step of a root-to-node path: the ancestor and the child index taken.
struct PathStep {
  const Node* node;
  std::size_t child;
};

/// Locates `id` under `root`. The path excludes the target itself.
struct Located {
  const Node* node = nullptr;
  std::vector<PathStep> path;
  bool binder = false; // id named a quantifier's [var] slot; node is the quantifier
};

std::optional<Located> locate(const Node& root, NodeId id);

/// Rebuilds `root` with the node at `path` (as produced by locate) replaced.
NodePtr replace_at(const NodePtr& root, std::span<const PathStep> path, NodePtr replacement);

/// Kind class demanded of the slot at the end of `path` (root: formula).
KindClass slot_class(std::span<const PathStep> path);

/// UI label of the slot at the end of `path`: "formula", "domain",
/// "subformula", "lhs", "rhs" or "operand".
std::string_view slot_label(std::span<const PathStep> path);

/// Quantifier variables in scope at the end of `path`, outermost first.
std::vector<std::string> vars_in_scope(std::span<const PathStep> path);

/// Collects holes in pre-order.
void collect_holes(const Node& n, std::vector<const Node*>& out);

} // namespace alloyse
