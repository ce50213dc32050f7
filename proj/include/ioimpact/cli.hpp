#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ioimpact {

// One io-impact invocation; `args` excludes the program name. Machine-readable
// output goes to `out`, diagnostics and human summaries to `err`.
// Exit status: 0 success, 1 domain error, 2 usage error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ioimpact
