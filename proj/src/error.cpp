// SPDX-License-Identifier: Apache-2.0
#include "alloyse/error.hpp"

namespace alloyse {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::ParseError: return "parse_error";
  case ErrorCode::UnknownSig: return "unknown_sig";
  case ErrorCode::UnknownField: return "unknown_field";
  case ErrorCode::UnknownRef: return "unknown_ref";
  case ErrorCode::InvalidModel: return "invalid_model";
  case ErrorCode::KindMismatch: return "kind_mismatch";
  case ErrorCode::HolesPresent: return "holes_present";
  case ErrorCode::UnknownHole: return "unknown_hole";
  case ErrorCode::UnknownNode: return "unknown_node";
  case ErrorCode::UnknownBlock: return "unknown_block";
  case ErrorCode::UnknownTarget: return "unknown_target";
  case ErrorCode::UnknownPred: return "unknown_pred";
  case ErrorCode::BlockNotSelectable: return "block_not_selectable";
  case ErrorCode::AnchorKindMismatch: return "anchor_kind_mismatch";
  case ErrorCode::CannotDeleteBinder: return "cannot_delete_binder";
  case ErrorCode::BinderEscape: return "binder_escape";
  case ErrorCode::Untypable: return "untypable";
  case ErrorCode::NameClash: return "name_clash";
  case ErrorCode::InvalidIdentifier: return "invalid_identifier";
  case ErrorCode::NothingToUndo: return "nothing_to_undo";
  case ErrorCode::NothingToRedo: return "nothing_to_redo";
  case ErrorCode::BudgetExceeded: return "budget_exceeded";
  case ErrorCode::BadRequest: return "bad_params";
  }
  return "internal";
}

std::string_view to_string(ReasonClass r) {
  switch (r) {
  case ReasonClass::None: return "";
  case ReasonClass::KindMismatch: return "KindMismatch";
  case ReasonClass::ArityMismatch: return "ArityMismatch";
  case ReasonClass::TypeDisjoint: return "TypeDisjoint";
  case ReasonClass::DeclarationOnly: return "DeclarationOnly";
  }
  return "";
}

} // namespace alloyse
