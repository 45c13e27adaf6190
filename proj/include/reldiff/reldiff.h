#ifndef RELDIFF_H
#define RELDIFF_H

/* C interface to the reldiff engine. All strings are UTF-8 and
 * NUL-terminated. Returned strings are owned by the handle they came from. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(RELDIFF_BUILDING_LIBRARY)
#define RD_API __attribute__((visibility("default")))
#else
#define RD_API
#endif

typedef struct rd_session rd_session;
typedef struct rd_report rd_report;

typedef enum rd_status {
  RD_OK = 0,
  RD_ERR_PARSE = 1,
  RD_ERR_UNDEFINED_SYMBOL,
  RD_ERR_NONCOMMUTING_TABLE,
  RD_ERR_DIVISION_BY_ZERO,
  RD_ERR_CONSTANT_POLYNOMIAL,
  RD_ERR_NOT_AUTOREDUCED,
  RD_ERR_NOT_IN_BASE_RING,
  RD_ERR_DIMENSION_MISMATCH,
  RD_ERR_NOT_ON_VARIETY,
  RD_ERR_NOT_ON_GROUP,
  RD_ERR_SEMANTIC,
  RD_ERR_INVALID_ARGUMENT = 100,
  RD_ERR_INTERNAL = 101
} rd_status;

typedef struct rd_options {
  int max_order;     /* default 6 */
  int check_assoc;   /* nonzero: also check associativity */
  int structured;    /* nonzero: JSON report instead of text */
  int timing;        /* nonzero: append timing_ms */
  int symbolic;      /* logderiv --symbolic */
  const char* at;      /* logderiv --at <point>, or NULL */
  const char* witness; /* integrable --witness <point>, or NULL */
} rd_options;

RD_API const char* rd_version(void);
RD_API rd_options rd_options_default(void);

/* Message of the last failed call on this thread. */
RD_API const char* rd_last_error(void);
RD_API const char* rd_status_name(rd_status status);

RD_API rd_status rd_session_load_file(const char* path, rd_session** out);
RD_API rd_status rd_session_load_string(const char* text, rd_session** out);
RD_API void rd_session_free(rd_session* session);
RD_API rd_status rd_session_assert_prime(rd_session* session, const char* name);
/* Canonical text of the session. */
RD_API const char* rd_session_print(rd_session* session);

/* argv[0] is the command name, e.g. {"prolong", "V"}. */
RD_API rd_status rd_run(rd_session* session, int argc, const char* const* argv, const rd_options* options,
                        rd_report** out);
RD_API const char* rd_report_text(const rd_report* report);
/* 0 pass, 1 fail, 2 inconclusive. */
RD_API int rd_report_exit_code(const rd_report* report);
RD_API void rd_report_free(rd_report* report);

#ifdef __cplusplus
}
#endif

#endif
