#pragma once

#include <string>
#include <vector>

namespace cgkit {

// Command-line front end. Returns the process exit code:
//   0  every check passed (informational entries do not count),
//   1  at least one check failed,
//   2  usage error or malformed input.
// Text output carries no timings, so identical invocations print identical
// bytes; JSON reports written with --out include per-check timings.
int run_cli(const std::vector<std::string>& args);

}  // namespace cgkit
