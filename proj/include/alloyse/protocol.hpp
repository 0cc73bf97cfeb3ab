// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "alloyse/model.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace alloyse {

inline constexpr int kProtocolVersion = 1;

/// One protocol session: owns at most one EditSession and answers JSON
/// requests `{id, method, params}` with `{id, ok, result | error}`. Never
/// throws; every failure becomes an error response.
class ProtocolSession {
public:
  explicit ProtocolSession(Config defaults = {});
  ~ProtocolSession();
  ProtocolSession(ProtocolSession&&) noexcept;
  ProtocolSession& operator=(ProtocolSession&&) noexcept;

  std::string handle(std::string_view request);

  /// Unsolicited announcement sent when a transport opens.
  std::string hello() const;

  /// True once a `shutdown` request was answered.
  bool closed() const;

private:
  struct State;
  std::unique_ptr<State> state_;
};

} // namespace alloyse
