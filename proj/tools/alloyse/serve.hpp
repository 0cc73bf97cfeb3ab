// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace alloyse_cli {

/// Newline-delimited JSON on the given streams until EOF or `shutdown`.
int serve_stdio(const nlohmann::json& config, std::istream& in, std::ostream& out);

/// Length-prefixed JSON frames (4-byte big-endian size) on a unix socket,
/// one session and one thread per connection. Runs until SIGINT/SIGTERM.
int serve_socket(const nlohmann::json& config, const std::string& path);

} // namespace alloyse_cli
