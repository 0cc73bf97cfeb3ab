// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "alloyse/ast.hpp"
#include "alloyse/rel_type.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alloyse {

enum class Mult : std::uint8_t { Lone, One, Some, Set };

std::string_view to_string(Mult m);

struct FieldDecl {
  std::string name;
  std::string owner;
  bool is_var = false;
  std::vector<std::string> columns; // right-hand side, length >= 1
  Mult mult = Mult::One;            // applies to the final column
  bool mult_written = false;        // false: the default multiplicity was implied
  std::string trivia;
};

struct Parentage {
  enum class Kind : std::uint8_t { TopLevel, Extends, SubsetOf };
  Kind kind = Kind::TopLevel;
  std::vector<std::string> parents; // one for Extends, >= 1 for SubsetOf
};

struct SigDecl {
  std::string name;
  bool is_var = false;
  bool is_abstract = false;
  std::optional<Mult> mult; // one / lone / some
  Parentage parentage;
  std::vector<FieldDecl> fields;
  std::string trivia; // leading comments, verbatim
};

struct PrimSig {
  std::string name;   // sig name, or "<sig>$remainder"
  std::string origin; // the declared sig it was carved from
  bool remainder = false;
};

/// Primitive-signature machinery derived from the sig declarations: the
/// partition of the atom universe and the bounding type of every sig and
/// field. Immutable once built.
class SigTable {
public:
  /// Validates the hierarchy invariants; throws Error(InvalidModel / UnknownSig).
  static std::shared_ptr<const SigTable> build(const std::vector<SigDecl>& sigs);

  const std::vector<PrimSig>& prims() const { return prims_; }
  /// Prims of a declared sig, sorted. Throws Error(UnknownSig).
  const std::vector<PrimId>& prims_of(std::string_view sig) const;
  bool has_sig(std::string_view sig) const { return sig_prims_.count(std::string(sig)) != 0; }

  /// The unique field with this name, or nullptr. Throws Error(UnknownField)
  /// when the name is declared by several sigs.
  const FieldDecl* find_field(std::string_view name) const;

  RelType sig_type(std::string_view sig) const;
  RelType field_type(std::string_view field) const;
  const RelType& univ() const { return univ_; }
  const RelType& iden() const { return iden_; }
  RelType none() const { return RelType(1); }

  /// Analyzer-style rendering, e.g. "{this/File->this/File}".
  std::string format(const RelType& t) const;

private:
  std::vector<PrimSig> prims_;
  std::map<std::string, std::vector<PrimId>, std::less<>> sig_prims_;
  std::map<std::string, std::vector<FieldDecl>, std::less<>> fields_by_name_;
  std::map<std::string, RelType, std::less<>> field_types_;
  RelType univ_{1};
  RelType iden_{2};
};

struct Config {
  int max_arity = 4;
  bool strict_disjoint_minus = true;
};

struct PredDecl {
  std::string name;
  NodePtr body;
  std::string trivia;
};

/// A `run` / `check` line, retained verbatim and never executed.
struct Command {
  std::string text;
  std::string trivia;
};

struct DeclRef {
  enum class Kind : std::uint8_t { Sig, Pred, Command };
  Kind kind;
  std::size_t index;
};

/// A model snapshot. Copies are cheap: predicate bodies are shared immutable
/// trees and the SigTable is shared. The node-id counter travels with the
/// value; `fresh_node_id` advances it.
class Model {
public:
  Model();
  explicit Model(std::vector<SigDecl> sigs, Config config = {});

  const std::vector<SigDecl>& sigs() const { return sigs_; }
  const SigTable& table() const { return *table_; }
  const Config& config() const { return config_; }
  void set_config(const Config& c) { config_ = c; }

  const std::vector<PredDecl>& preds() const { return preds_; }
  const PredDecl* find_pred(std::string_view name) const;
  std::optional<std::size_t> pred_index(std::string_view name) const;
  void add_pred(PredDecl p);
  void set_body(std::size_t pred_index, NodePtr body);

  const std::vector<Command>& commands() const { return commands_; }
  void add_command(Command c);

  /// Declaration order for printing.
  const std::vector<DeclRef>& order() const { return order_; }
  void set_order(std::vector<DeclRef> order) { order_ = std::move(order); }
  const std::string& trailing_trivia() const { return trailing_trivia_; }
  void set_trailing_trivia(std::string t) { trailing_trivia_ = std::move(t); }

  NodeId next_node_id() const { return next_id_; }
  NodeId fresh_node_id() { return next_id_++; }
  /// Never lowers the counter.
  void reserve_ids_below(NodeId id) { next_id_ = std::max(next_id_, id); }

  /// Finds the predicate whose body contains node `id` (or its binder).
  std::optional<std::size_t> pred_containing(NodeId id) const;

private:
  std::vector<SigDecl> sigs_;
  std::shared_ptr<const SigTable> table_;
  Config config_;
  std::vector<PredDecl> preds_;
  std::vector<Command> commands_;
  std::vector<DeclRef> order_;
  std::string trailing_trivia_;
  NodeId next_id_ = 0;
};

inline NodeId fresh_node_id(Model& m) { return m.fresh_node_id(); }

/// Names of the primitive signatures of `sig`. Throws Error(UnknownSig).
std::vector<std::string> prims(const Model& m, std::string_view sig);

/// Bounding type of a sig, field or builtin. Variables are resolved by the
/// typechecker's scope, not here. Throws Error(UnknownRef).
RelType declared_type(const Model& m, LeafRef ref, std::string_view name);

bool is_keyword(std::string_view word);
bool is_identifier(std::string_view word);

} // namespace alloyse
