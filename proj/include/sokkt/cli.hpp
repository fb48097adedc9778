#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sokkt {

// Dispatches one command line (without argv[0]). Human-readable report goes
// to `out`, errors to `err`; the optional --json flag additionally writes the
// machine report. Exit codes: 0 pass-like verdict, 1 fail-like, 2
// inconclusive, 3 usage or parse error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sokkt
