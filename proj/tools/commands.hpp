#pragma once

#include <iosfwd>

namespace heckelab::cli {

// Parses argv, runs one subcommand and returns the process exit status.
// Usage errors return 2, library errors 1.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heckelab::cli
