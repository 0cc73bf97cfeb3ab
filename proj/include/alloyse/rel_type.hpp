// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace alloyse {

/// Index of a primitive signature in a model's SigTable.
using PrimId = std::uint32_t;

/// A bounding type: a canonical (sorted, duplicate-free) set of equal-length
/// tuples of primitive signatures.
///
/// Tuples are stored row-major in one flat vector. Two RelTypes are equal iff
/// they have the same arity and the same tuple set, so `==` is structural.
class RelType {
public:
  RelType() = default;
  explicit RelType(int arity) : arity_(arity) {}

  static RelType unary(std::span<const PrimId> prims);
  static RelType of(int arity, std::initializer_list<std::initializer_list<PrimId>> tuples);

  int arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return arity_ == 0 ? 0 : cells_.size() / static_cast<std::size_t>(arity_); }
  bool empty() const noexcept { return cells_.empty(); }

  std::span<const PrimId> tuple(std::size_t i) const {
    return {cells_.data() + i * static_cast<std::size_t>(arity_), static_cast<std::size_t>(arity_)};
  }

  bool contains(std::span<const PrimId> t) const;

  /// Distinct prims appearing in column `col` (sorted).
  std::vector<PrimId> column(int col) const;

  /// Appends a tuple; call canonicalize() once after a batch of adds.
  void add(std::span<const PrimId> t);
  void canonicalize();

  friend bool operator==(const RelType& a, const RelType& b) {
    return a.arity_ == b.arity_ && a.cells_ == b.cells_;
  }
  friend bool operator<(const RelType& a, const RelType& b) {
    if (a.arity_ != b.arity_)
      return a.arity_ < b.arity_;
    return a.cells_ < b.cells_;
  }

private:
  int arity_ = 0;
  std::vector<PrimId> cells_;
};

// Set algebra over bounding types. Arity preconditions are the caller's job;
// the typechecker reports violations before calling these.

RelType intersect(const RelType& a, const RelType& b);
RelType unite(const RelType& a, const RelType& b);
bool overlaps(const RelType& a, const RelType& b);
RelType product(const RelType& a, const RelType& b);
/// Relational join on the last column of `a` and the first column of `b`.
RelType join(const RelType& a, const RelType& b);
RelType transpose(const RelType& a);
/// Transitive closure of a binary type. `iterations`, when given, receives the
/// number of fixed-point rounds taken.
RelType closure(const RelType& a, int* iterations = nullptr);
/// Tuples of `rel` whose first column is in the unary type `dom`.
RelType domain_restrict(const RelType& dom, const RelType& rel);
/// Tuples of `rel` whose last column is in the unary type `ran`.
RelType range_restrict(const RelType& rel, const RelType& ran);

} // namespace alloyse
