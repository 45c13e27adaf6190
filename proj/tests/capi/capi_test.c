/* Exercises the C interface from C. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "reldiff/reldiff.h"

static int failures = 0;

#define EXPECT(cond)                                            \
  do {                                                          \
    if (!(cond)) {                                              \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                               \
    }                                                           \
  } while (0)

static const char* gm =
    "field\n"
    "  derivation d base\n"
    "  derivation D lifted\n"
    "  generators alpha alpha1\n"
    "  d[d](alpha) = alpha1\n"
    "end\n"
    "indeterminates x y\n"
    "variety Gm\n"
    "  coords x y\n"
    "  fibers D u v\n"
    "  eq x*y - 1\n"
    "  eq x*d[d]^2(x) - d[d](x)^2\n"
    "end\n"
    "dvariety good\n"
    "  variety Gm\n"
    "  section D = (alpha*x, -alpha*y)\n"
    "end\n"
    "dvariety bad\n"
    "  variety Gm\n"
    "  section D = (x^2, -x*y)\n"
    "end\n";

static int run(rd_session* s, const char* a, const char* b, const rd_options* o, rd_report** r)
{
  const char* argv[2] = {a, b};
  return rd_run(s, b ? 2 : 1, argv, o, r);
}

int main(int argc, char** argv)
{
  rd_session* s = NULL;
  rd_report* r = NULL;
  rd_options o = rd_options_default();

  EXPECT(rd_version() != NULL && strlen(rd_version()) > 0);
  EXPECT(o.max_order == 6);
  EXPECT(o.timing != 0);
  o.timing = 0;

  EXPECT(rd_session_load_string(gm, &s) == RD_OK);
  EXPECT(s != NULL);
  EXPECT(strstr(rd_session_print(s), "variety Gm") != NULL);

  /* Without primality the failing section is inconclusive. */
  EXPECT(run(s, "dvariety-check", "bad", &o, &r) == RD_OK);
  EXPECT(rd_report_exit_code(r) == 2);
  rd_report_free(r);

  EXPECT(rd_session_assert_prime(s, "Gm") == RD_OK);
  EXPECT(run(s, "dvariety-check", "bad", &o, &r) == RD_OK);
  EXPECT(rd_report_exit_code(r) == 1);
  EXPECT(strstr(rd_report_text(r), "verdict: fail") != NULL);
  rd_report_free(r);

  EXPECT(run(s, "dvariety-check", "good", &o, &r) == RD_OK);
  EXPECT(rd_report_exit_code(r) == 0);
  rd_report_free(r);

  o.structured = 1;
  EXPECT(run(s, "prolong", "Gm", &o, &r) == RD_OK);
  EXPECT(rd_report_text(r)[0] == '{');
  EXPECT(strstr(rd_report_text(r), "\"v*x + u*y\"") != NULL);
  rd_report_free(r);

  o.structured = 0;
  o.timing = 1;
  EXPECT(run(s, "prolong", "Gm", &o, &r) == RD_OK);
  EXPECT(strstr(rd_report_text(r), "timing_ms") != NULL);
  rd_report_free(r);

  r = NULL;
  EXPECT(run(s, "prolong", "Nope", &o, &r) == RD_ERR_UNDEFINED_SYMBOL);
  EXPECT(r == NULL);
  EXPECT(strstr(rd_last_error(), "Nope") != NULL);
  EXPECT(run(s, "frobnicate", NULL, &o, &r) == RD_ERR_SEMANTIC);
  EXPECT(rd_run(s, 0, NULL, &o, &r) == RD_ERR_INVALID_ARGUMENT);
  EXPECT(rd_run(NULL, 1, (const char* const[]){"print"}, &o, &r) == RD_ERR_INVALID_ARGUMENT);
  EXPECT(rd_session_assert_prime(s, "good") == RD_OK);
  EXPECT(rd_session_assert_prime(s, "Nope") == RD_ERR_UNDEFINED_SYMBOL);
  rd_session_free(s);

  s = NULL;
  EXPECT(rd_session_load_string("variety V\n  coords x\n  eq x +\nend\n", &s) == RD_ERR_PARSE);
  EXPECT(s == NULL);
  EXPECT(strstr(rd_last_error(), "line 3") != NULL);
  EXPECT(rd_session_load_file("/nonexistent.session", &s) != RD_OK);
  EXPECT(strcmp(rd_status_name(RD_ERR_NOT_AUTOREDUCED), "NotAutoreduced") == 0);

  if (argc > 1) {
    EXPECT(rd_session_load_file(argv[1], &s) == RD_OK);
    EXPECT(run(s, "field-check", NULL, &o, &r) == RD_OK);
    EXPECT(rd_report_exit_code(r) == 0);
    rd_report_free(r);
    rd_session_free(s);
  }

  rd_session_free(NULL);
  rd_report_free(NULL);
  if (failures)
    fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? EXIT_FAILURE : EXIT_SUCCESS;
}
