// SPDX-License-Identifier: Apache-2.0
#include "alloyse/rel_type.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <unordered_map>

namespace alloyse {

RelType RelType::unary(std::span<const PrimId> prims) {
  RelType t(1);
  t.cells_.assign(prims.begin(), prims.end());
  t.canonicalize();
  return t;
}

RelType RelType::of(int arity, std::initializer_list<std::initializer_list<PrimId>> tuples) {
  RelType t(arity);
  for (const auto& tup : tuples) {
    assert(static_cast<int>(tup.size()) == arity);
    t.cells_.insert(t.cells_.end(), tup.begin(), tup.end());
  }
  t.canonicalize();
  return t;
}

bool RelType::contains(std::span<const PrimId> t) const {
  const auto n = size();
  std::size_t lo = 0, hi = n;
  while (lo < hi) {
    const auto mid = (lo + hi) / 2;
    auto row = tuple(mid);
    if (std::lexicographical_compare(row.begin(), row.end(), t.begin(), t.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == n)
    return false;
  auto row = tuple(lo);
  return std::equal(row.begin(), row.end(), t.begin(), t.end());
}

std::vector<PrimId> RelType::column(int col) const {
  std::vector<PrimId> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i)
    out.push_back(tuple(i)[static_cast<std::size_t>(col)]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void RelType::add(std::span<const PrimId> t) {
  assert(static_cast<int>(t.size()) == arity_);
  cells_.insert(cells_.end(), t.begin(), t.end());
}

void RelType::canonicalize() {
  const auto n = size();
  if (n <= 1)
    return;
  const auto a = static_cast<std::size_t>(arity_);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto less = [&](std::size_t x, std::size_t y) {
    return std::lexicographical_compare(cells_.begin() + x * a, cells_.begin() + (x + 1) * a,
                                        cells_.begin() + y * a, cells_.begin() + (y + 1) * a);
  };
  if (std::is_sorted(order.begin(), order.end(), less)) {
    // Still need to drop adjacent duplicates.
    bool dup = false;
    for (std::size_t i = 1; i < n && !dup; ++i)
      dup = !less(i - 1, i);
    if (!dup)
      return;
  }
  std::sort(order.begin(), order.end(), less);
  std::vector<PrimId> out;
  out.reserve(cells_.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = order[k];
    if (k > 0 && !less(order[k - 1], i))
      continue;
    out.insert(out.end(), cells_.begin() + i * a, cells_.begin() + (i + 1) * a);
  }
  cells_ = std::move(out);
}

RelType intersect(const RelType& a, const RelType& b) {
  RelType out(a.arity());
  if (a.arity() != b.arity())
    return out;
  // Both sides are sorted: merge.
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto x = a.tuple(i);
    auto y = b.tuple(j);
    if (std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end()))
      ++i;
    else if (std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end()))
      ++j;
    else {
      out.add(x);
      ++i;
      ++j;
    }
  }
  return out;
}

RelType unite(const RelType& a, const RelType& b) {
  RelType out(a.arity());
  for (std::size_t i = 0; i < a.size(); ++i)
    out.add(a.tuple(i));
  for (std::size_t i = 0; i < b.size(); ++i)
    out.add(b.tuple(i));
  out.canonicalize();
  return out;
}

bool overlaps(const RelType& a, const RelType& b) {
  if (a.arity() != b.arity())
    return false;
  const RelType& small = a.size() <= b.size() ? a : b;
  const RelType& large = a.size() <= b.size() ? b : a;
  for (std::size_t i = 0; i < small.size(); ++i)
    if (large.contains(small.tuple(i)))
      return true;
  return false;
}

RelType product(const RelType& a, const RelType& b) {
  RelType out(a.arity() + b.arity());
  std::vector<PrimId> row(static_cast<std::size_t>(a.arity() + b.arity()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto x = a.tuple(i);
    std::copy(x.begin(), x.end(), row.begin());
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto y = b.tuple(j);
      std::copy(y.begin(), y.end(), row.begin() + a.arity());
      out.add(row);
    }
  }
  // Lexicographic product of sorted inputs is already sorted and unique.
  return out;
}

RelType join(const RelType& a, const RelType& b) {
  const int arity = a.arity() + b.arity() - 2;
  RelType out(arity);
  if (arity <= 0)
    return out;
  std::unordered_multimap<PrimId, std::size_t> by_first;
  by_first.reserve(b.size());
  for (std::size_t j = 0; j < b.size(); ++j)
    by_first.emplace(b.tuple(j)[0], j);
  std::vector<PrimId> row(static_cast<std::size_t>(arity));
  const auto left = static_cast<std::size_t>(a.arity() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto x = a.tuple(i);
    auto [lo, hi] = by_first.equal_range(x[left]);
    for (auto it = lo; it != hi; ++it) {
      auto y = b.tuple(it->second);
      std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(left), row.begin());
      std::copy(y.begin() + 1, y.end(), row.begin() + static_cast<std::ptrdiff_t>(left));
      out.add(row);
    }
  }
  out.canonicalize();
  return out;
}

RelType transpose(const RelType& a) {
  RelType out(a.arity());
  std::vector<PrimId> row(static_cast<std::size_t>(a.arity()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto x = a.tuple(i);
    std::reverse_copy(x.begin(), x.end(), row.begin());
    out.add(row);
  }
  out.canonicalize();
  return out;
}

RelType closure(const RelType& a, int* iterations) {
  RelType acc = a;
  int rounds = 0;
  for (;;) {
    ++rounds;
    RelType next = unite(acc, join(acc, a));
    if (next.size() == acc.size())
      break;
    acc = std::move(next);
  }
  if (iterations)
    *iterations = rounds;
  return acc;
}

RelType domain_restrict(const RelType& dom, const RelType& rel) {
  RelType out(rel.arity());
  for (std::size_t i = 0; i < rel.size(); ++i) {
    auto x = rel.tuple(i);
    const PrimId first = x[0];
    if (dom.contains(std::span<const PrimId>(&first, 1)))
      out.add(x);
  }
  return out;
}

RelType range_restrict(const RelType& rel, const RelType& ran) {
  RelType out(rel.arity());
  for (std::size_t i = 0; i < rel.size(); ++i) {
    auto x = rel.tuple(i);
    const PrimId last = x[x.size() - 1];
    if (ran.contains(std::span<const PrimId>(&last, 1)))
      out.add(x);
  }
  return out;
}

} // namespace alloyse
