#pragma once

// Command dispatch and report rendering shared by the C API.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "reldiff/session.hpp"

namespace reldiff {

struct RunOptions {
  int max_order = 6;
  bool check_assoc = false;
  bool symbolic = false;
  std::optional<std::string> at;
  std::optional<std::string> witness;
};

struct Report {
  nlohmann::ordered_json doc;
  Verdict verdict = Verdict::Pass;
  /// Verbatim output that replaces the rendered document (used by `print`).
  std::optional<std::string> raw;

  int exit_code() const { return verdict_exit_code(verdict); }
  std::string render(bool structured) const;
};

/// words[0] is the command name. Throws Error on semantic problems.
Report run_command(Session& session, const std::vector<std::string>& words, const RunOptions& opts);

/// YAML-like rendering of a JSON document.
std::string render_text(const nlohmann::ordered_json& doc);

}  // namespace reldiff
