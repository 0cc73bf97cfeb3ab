// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "alloyse/alloyse.h"

#include <json.hpp>

#include <memory>
#include <stdexcept>
#include <string>

namespace alloyse_cli {

using nlohmann::json;

/// Owns a C API session handle.
class Engine {
public:
  explicit Engine(const json& config) {
    alloyse_session* raw = nullptr;
    char* err = nullptr;
    const std::string text = config.dump();
    if (alloyse_session_new(text.c_str(), &raw, &err) != ALLOYSE_OK) {
      std::string msg = err ? err : "cannot create session";
      alloyse_string_free(err);
      throw std::runtime_error(msg);
    }
    session_.reset(raw);
  }

  /// Raw request line in, raw response line out.
  std::string handle(const std::string& request) {
    char* out = nullptr;
    size_t len = 0;
    const alloyse_status st = alloyse_session_handle(session_.get(), request.data(), request.size(), &out, &len);
    if (st != ALLOYSE_OK)
      throw std::runtime_error(alloyse_status_string(st));
    std::string reply(out, len);
    alloyse_string_free(out);
    return reply;
  }

  json call(const std::string& method, json params = json::object()) {
    json req{{"id", ++next_id_}, {"method", method}, {"params", std::move(params)}};
    return json::parse(handle(req.dump()));
  }

  std::string hello() const {
    char* out = nullptr;
    if (alloyse_session_hello(session_.get(), &out) != ALLOYSE_OK)
      throw std::runtime_error("cannot build hello message");
    std::string s(out);
    alloyse_string_free(out);
    return s;
  }

  bool closed() const { return alloyse_session_closed(session_.get()) != 0; }

private:
  struct Free {
    void operator()(alloyse_session* s) const { alloyse_session_free(s); }
  };
  std::unique_ptr<alloyse_session, Free> session_;
  long long next_id_ = 0;
};

} // namespace alloyse_cli
