#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "frames/problem.hpp"

namespace frames {

/// A parsed invocation: the subcommand name plus its string-valued options.
/// Exit codes: 0 certified pass, 1 certified failure (report carries the
/// witness), 2 input error (message on the diagnostic stream).
struct CommandRequest {
  std::string command;
  std::map<std::string, std::string> options;
  double tol = Tolerances{}.dual;
  bool tol_explicit = false;  // set when --tol or FRAMES_TOL overrides the default

  bool has(const std::string& key) const { return options.count(key) != 0; }
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
};

int execute(const CommandRequest& request, const ProblemFile& problem, std::ostream& out);

/// Full pipeline: load the problem file named in the request, run the
/// command, print the report to `out` and diagnostics to `err`.
int run_request(const CommandRequest& request, const std::string& file, std::ostream& out,
                std::ostream& err);

}  // namespace frames
