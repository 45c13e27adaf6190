#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reldiff/reldiff.h"

int main(int argc, char** argv)
{
  CLI::App app{"Symbolic checks for relative differential-algebraic geometry"};
  app.set_version_flag("--version", rd_version());

  std::string session_path;
  int max_order = 6;
  std::vector<std::string> prime;
  bool check_assoc = false;
  std::string format = "text";
  bool no_timing = false;
  std::string at;
  std::string witness;
  bool symbolic = false;
  std::vector<std::string> words;

  app.add_option("--session", session_path, "Session file")->required();
  app.add_option("--max-order", max_order, "Largest h for dimension checks")->check(CLI::NonNegativeNumber);
  app.add_option("--assert-prime", prime, "Treat the named variety's ideal as prime");
  app.add_flag("--check-assoc", check_assoc, "Also check associativity of the group law");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--no-timing", no_timing, "Omit timing_ms from the report");
  app.add_option("--at", at, "logderiv: evaluate at a named point");
  app.add_flag("--symbolic", symbolic, "logderiv: generic point");
  app.add_option("--witness", witness, "integrable: witness point");
  app.add_option("command", words, "Command and its arguments")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  rd_session* session = nullptr;
  if (rd_session_load_file(session_path.c_str(), &session) != RD_OK) {
    std::fprintf(stderr, "error: %s\n", rd_last_error());
    return 3;
  }
  for (const auto& name : prime)
    if (rd_session_assert_prime(session, name.c_str()) != RD_OK) {
      std::fprintf(stderr, "error: %s\n", rd_last_error());
      rd_session_free(session);
      return 3;
    }

  rd_options opts = rd_options_default();
  opts.max_order = max_order;
  opts.check_assoc = check_assoc;
  opts.structured = format == "structured";
  opts.timing = !no_timing;
  opts.symbolic = symbolic;
  opts.at = at.empty() ? nullptr : at.c_str();
  opts.witness = witness.empty() ? nullptr : witness.c_str();

  std::vector<const char*> cargv;
  for (const auto& w : words)
    cargv.push_back(w.c_str());
  rd_report* report = nullptr;
  if (rd_run(session, static_cast<int>(cargv.size()), cargv.data(), &opts, &report) != RD_OK) {
    std::fprintf(stderr, "error: %s\n", rd_last_error());
    rd_session_free(session);
    return 3;
  }
  std::fputs(rd_report_text(report), stdout);
  int code = rd_report_exit_code(report);
  rd_report_free(report);
  rd_session_free(session);
  return code;
}
