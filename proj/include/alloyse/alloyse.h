/* SPDX-License-Identifier: Apache-2.0 */
#ifndef ALLOYSE_ALLOYSE_H
#define ALLOYSE_ALLOYSE_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(ALLOYSE_BUILDING)
#    define ALLOYSE_API __declspec(dllexport)
#  else
#    define ALLOYSE_API __declspec(dllimport)
#  endif
#else
#  define ALLOYSE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque editing session speaking the JSON protocol. Not thread-safe; use
 * one session per thread or serialize calls. */
typedef struct alloyse_session alloyse_session;

typedef enum alloyse_status {
  ALLOYSE_OK = 0,
  ALLOYSE_E_INVALID_ARGUMENT = 1, /* null pointer or bad length */
  ALLOYSE_E_CONFIG = 2,           /* config JSON rejected */
  ALLOYSE_E_NO_MEMORY = 3,
  ALLOYSE_E_CLOSED = 4,           /* the session answered `shutdown` */
  ALLOYSE_E_INTERNAL = 5
} alloyse_status;

ALLOYSE_API int alloyse_protocol_version(void);
ALLOYSE_API const char* alloyse_version(void);
ALLOYSE_API const char* alloyse_status_string(alloyse_status status);

/* config_json may be NULL or e.g. {"max_arity":4,"strict_disjoint_minus":true}.
 * On failure *out is NULL and, when err is non-NULL, *err receives a message
 * to release with alloyse_string_free. */
ALLOYSE_API alloyse_status alloyse_session_new(const char* config_json, alloyse_session** out, char** err);
ALLOYSE_API void alloyse_session_free(alloyse_session* session);

/* Answers one request. Protocol-level failures are reported inside the
 * response with status ALLOYSE_OK. *response is NUL-terminated and owned by
 * the caller; response_len may be NULL. */
ALLOYSE_API alloyse_status alloyse_session_handle(alloyse_session* session, const char* request, size_t request_len,
                                                  char** response, size_t* response_len);

/* The announcement a transport sends when it opens. */
ALLOYSE_API alloyse_status alloyse_session_hello(const alloyse_session* session, char** response);

ALLOYSE_API int alloyse_session_closed(const alloyse_session* session);

ALLOYSE_API void alloyse_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ALLOYSE_ALLOYSE_H */
