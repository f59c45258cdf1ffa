#pragma once

#include <ostream>

namespace gsu {

// Full command-line entry point, reusable in-process by tests. Reports go to
// `out`; flag/usage problems go to `err`. Returns the process exit code:
// 0 yes, 1 no, 2 inconclusive, 3 error.
int cli_run(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace gsu
