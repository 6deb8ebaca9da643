#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccf {

// Dispatch a full command line (program name excluded). Report rows go to
// `out`, diagnostics to `err`. Exit contract: 0 success, 1 mathematical
// failure (failed check, integrability, lost precision), 2 usage or parse
// problem.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ccf
