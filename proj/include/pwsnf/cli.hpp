#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pwsnf/oracle.hpp"
#include "pwsnf/system.hpp"

namespace pwsnf {

enum ExitCode { kExitOk = 0, kExitMismatch = 1, kExitInput = 2, kExitResource = 3 };

struct RunConfig {
  std::string command;
  std::string input;
  std::string symbolic_input;  // oracle: take the symbolic side from this file instead
  int N = 4;
  Substitutions sets;
  bool json = false;
  GridSpec grid;
  double rel_tol = 0.02;
  int precision_bits = 128;
  std::size_t budget = 0;  // 0: library defaults
  unsigned threads = 0;
};

// Parses argv (argv[0] is the program name). Throws InputError on bad flags.
RunConfig parse_args(const std::vector<std::string>& args);

// Runs one command; writes the report to out and diagnostics to err. Returns an ExitCode.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_args + run with the exit-code mapping of library errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pwsnf
