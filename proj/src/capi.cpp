#include "reldiff/reldiff.h"

#include <chrono>
#include <new>
#include <string>

#include "commands.hpp"
#include "reldiff/error.hpp"

struct rd_session {
  reldiff::Session session;
  std::string printed;
};

struct rd_report {
  std::string text;
  int exit_code;
};

namespace {

thread_local std::string last_error;

rd_status fail(rd_status s, const std::string& msg)
{
  last_error = msg;
  return s;
}

template <class F>
rd_status guarded(F f)
{
  try {
    f();
    last_error.clear();
    return RD_OK;
  } catch (const reldiff::Error& e) {
    return fail(static_cast<rd_status>(e.code()), std::string(reldiff::error_code_name(e.code())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(RD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RD_ERR_INTERNAL, std::string("internal error: ") + e.what());
  }
}

}  // namespace

extern "C" {

const char* rd_version(void)
{
  return "0.1.0";
}

rd_options rd_options_default(void)
{
  return rd_options{6, 0, 0, 1, 0, nullptr, nullptr};
}

const char* rd_last_error(void)
{
  return last_error.c_str();
}

const char* rd_status_name(rd_status status)
{
  if (status == RD_OK)
    return "ok";
  if (status == RD_ERR_INVALID_ARGUMENT)
    return "invalid argument";
  if (status == RD_ERR_INTERNAL)
    return "internal";
  if (status >= RD_ERR_PARSE && status <= RD_ERR_SEMANTIC)
    return reldiff::error_code_name(static_cast<reldiff::ErrorCode>(status));
  return "unknown";
}

rd_status rd_session_load_file(const char* path, rd_session** out)
{
  if (!path || !out)
    return fail(RD_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new rd_session{reldiff::Session::load(path), {}}; });
}

rd_status rd_session_load_string(const char* text, rd_session** out)
{
  if (!text || !out)
    return fail(RD_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new rd_session{reldiff::Session::parse(text), {}}; });
}

void rd_session_free(rd_session* session)
{
  delete session;
}

rd_status rd_session_assert_prime(rd_session* session, const char* name)
{
  if (!session || !name)
    return fail(RD_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { session->session.assert_prime(name); });
}

const char* rd_session_print(rd_session* session)
{
  if (!session)
    return nullptr;
  session->printed = session->session.print();
  return session->printed.c_str();
}

rd_status rd_run(rd_session* session, int argc, const char* const* argv, const rd_options* options,
                 rd_report** out)
{
  if (!session || !out || argc <= 0 || !argv)
    return fail(RD_ERR_INVALID_ARGUMENT, "null argument or empty command");
  *out = nullptr;
  rd_options o = options ? *options : rd_options_default();
  return guarded([&] {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> words(argv, argv + argc);
    reldiff::RunOptions ro;
    ro.max_order = o.max_order;
    ro.check_assoc = o.check_assoc != 0;
    ro.symbolic = o.symbolic != 0;
    if (o.at)
      ro.at = o.at;
    if (o.witness)
      ro.witness = o.witness;
    reldiff::Report r = reldiff::run_command(session->session, words, ro);
    if (o.timing && !r.raw) {
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      r.doc["timing_ms"] = static_cast<long>(ms);
    }
    *out = new rd_report{r.render(o.structured != 0), r.exit_code()};
  });
}

const char* rd_report_text(const rd_report* report)
{
  return report ? report->text.c_str() : nullptr;
}

int rd_report_exit_code(const rd_report* report)
{
  return report ? report->exit_code : 3;
}

void rd_report_free(rd_report* report)
{
  delete report;
}

}  // extern "C"
