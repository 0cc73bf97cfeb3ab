// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace alloyse {

enum class ErrorCode {
  ParseError,
  UnknownSig,
  UnknownField,
  UnknownRef,
  InvalidModel,
  KindMismatch,
  HolesPresent,
  UnknownHole,
  UnknownNode,
  UnknownBlock,
  UnknownTarget,
  UnknownPred,
  BlockNotSelectable,
  AnchorKindMismatch,
  CannotDeleteBinder,
  BinderEscape,
  Untypable,
  NameClash,
  InvalidIdentifier,
  NothingToUndo,
  NothingToRedo,
  BudgetExceeded,
  BadRequest,
};

std::string_view to_string(ErrorCode code);

/// Why a block is grayed out (or why an edit was refused).
enum class ReasonClass {
  None,
  KindMismatch,
  ArityMismatch,
  TypeDisjoint,
  DeclarationOnly,
};

std::string_view to_string(ReasonClass r);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message, ReasonClass reason = ReasonClass::None)
      : std::runtime_error(std::move(message)), code_(code), reason_(reason) {}

  ErrorCode code() const noexcept { return code_; }
  ReasonClass reason() const noexcept { return reason_; }

private:
  ErrorCode code_;
  ReasonClass reason_;
};

} // namespace alloyse
