#pragma once

#include <iosfwd>

namespace spbw {

// full command dispatcher; returns the process exit code
//   0  success
//   1  validation or data failure (bad file, bad expression, failed check)
//   2  usage error (unknown flags, unknown catalog key, missing arguments)
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spbw
