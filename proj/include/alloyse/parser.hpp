// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "alloyse/error.hpp"
#include "alloyse/model.hpp"

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace alloyse {

struct SourcePos {
  std::size_t offset = 0;
  int line = 1;   // 1-based
  int column = 1; // 1-based, in bytes
};

struct SourceSpan {
  SourcePos start;
  SourcePos end; // one past the last byte

  bool contains(const SourceSpan& inner) const {
    return start.offset <= inner.start.offset && inner.end.offset <= end.offset;
  }
};

class ParseError : public Error {
public:
  ParseError(ErrorCode code, std::string message, SourceSpan span, std::vector<std::string> expected = {})
      : Error(code, std::move(message)), span_(span), expected_(std::move(expected)) {}

  const SourceSpan& span() const { return span_; }
  /// At most 8 token classes, e.g. "expression", "comparison operator", "'}'".
  const std::vector<std::string>& expected() const { return expected_; }

private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

using SpanTable = std::unordered_map<NodeId, SourceSpan>;

struct ParsedModel {
  Model model;
  SpanTable spans;
};

/// Parses the supported Alloy subset. `(?)` is a hole whose kind class comes
/// from its position. Throws ParseError (syntax and name resolution) or Error
/// (hierarchy invariants).
ParsedModel parse_model(std::string_view text, Config config = {});

/// Parses a standalone expression or formula against the names of `model`
/// plus the given variables. Fresh ids are drawn from `model`. Throws
/// ParseError; ErrorCode::KindMismatch when the fragment's class differs from
/// `expected`.
NodePtr parse_fragment(std::string_view text, KindClass expected, Model& model,
                       std::span<const std::string> vars = {});

} // namespace alloyse
