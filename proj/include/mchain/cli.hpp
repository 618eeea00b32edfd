#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mchain::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kPrecisionExhausted = 2,
  kInconsistency = 3,
};

/// Parses `args` (without the program name), runs one subcommand and writes
/// its output to `out` or to the file named by --out. Diagnostics go to
/// `err`. Identical arguments give byte-identical output.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits a comma-separated list of number specs. A comma starts a new spec
/// only when followed by a grammar prefix, so algebraic specs stay intact.
std::vector<std::string> split_specs(const std::string& list);

}  // namespace mchain::cli
