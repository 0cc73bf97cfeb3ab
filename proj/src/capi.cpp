// SPDX-License-Identifier: Apache-2.0
#include "alloyse/alloyse.h"

#include "alloyse/protocol.hpp"
#include "alloyse/version.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct alloyse_session {
  alloyse::ProtocolSession impl;
};

namespace {

char* copy_out(const std::string& s, size_t* len) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out)
    return nullptr;
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  if (len)
    *len = s.size();
  return out;
}

alloyse::Config parse_config(const char* text) {
  alloyse::Config c;
  if (!text || !*text)
    return c;
  auto j = nlohmann::json::parse(text);
  if (!j.is_object())
    throw std::invalid_argument("config must be a JSON object");
  if (auto it = j.find("max_arity"); it != j.end()) {
    if (!it->is_number_integer() || it->get<int>() < 1 || it->get<int>() > 8)
      throw std::invalid_argument("max_arity must be an integer in 1..8");
    c.max_arity = it->get<int>();
  }
  if (auto it = j.find("strict_disjoint_minus"); it != j.end()) {
    if (!it->is_boolean())
      throw std::invalid_argument("strict_disjoint_minus must be a boolean");
    c.strict_disjoint_minus = it->get<bool>();
  }
  return c;
}

} // namespace

extern "C" {

int alloyse_protocol_version(void) { return alloyse::kProtocolVersion; }

const char* alloyse_version(void) { return alloyse::kVersion; }

const char* alloyse_status_string(alloyse_status status) {
  switch (status) {
  case ALLOYSE_OK: return "ok";
  case ALLOYSE_E_INVALID_ARGUMENT: return "invalid argument";
  case ALLOYSE_E_CONFIG: return "invalid configuration";
  case ALLOYSE_E_NO_MEMORY: return "out of memory";
  case ALLOYSE_E_CLOSED: return "session closed";
  case ALLOYSE_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

alloyse_status alloyse_session_new(const char* config_json, alloyse_session** out, char** err) {
  if (!out)
    return ALLOYSE_E_INVALID_ARGUMENT;
  *out = nullptr;
  if (err)
    *err = nullptr;
  try {
    *out = new alloyse_session{alloyse::ProtocolSession(parse_config(config_json))};
    return ALLOYSE_OK;
  } catch (const std::bad_alloc&) {
    return ALLOYSE_E_NO_MEMORY;
  } catch (const std::exception& e) {
    if (err)
      *err = copy_out(e.what(), nullptr);
    return ALLOYSE_E_CONFIG;
  }
}

void alloyse_session_free(alloyse_session* session) { delete session; }

alloyse_status alloyse_session_handle(alloyse_session* session, const char* request, size_t request_len,
                                      char** response, size_t* response_len) {
  if (!session || !response || (!request && request_len))
    return ALLOYSE_E_INVALID_ARGUMENT;
  *response = nullptr;
  try {
    std::string reply = session->impl.handle(std::string_view(request ? request : "", request_len));
    *response = copy_out(reply, response_len);
    return *response ? ALLOYSE_OK : ALLOYSE_E_NO_MEMORY;
  } catch (const std::bad_alloc&) {
    return ALLOYSE_E_NO_MEMORY;
  } catch (...) {
    return ALLOYSE_E_INTERNAL;
  }
}

alloyse_status alloyse_session_hello(const alloyse_session* session, char** response) {
  if (!session || !response)
    return ALLOYSE_E_INVALID_ARGUMENT;
  try {
    *response = copy_out(session->impl.hello(), nullptr);
    return *response ? ALLOYSE_OK : ALLOYSE_E_NO_MEMORY;
  } catch (...) {
    return ALLOYSE_E_INTERNAL;
  }
}

int alloyse_session_closed(const alloyse_session* session) { return session && session->impl.closed() ? 1 : 0; }

void alloyse_string_free(char* s) { std::free(s); }

} // extern "C"
