#pragma once

#include <iosfwd>

namespace noether::cli {

/// Runs the command line; returns 0 when every verdict passes, 1 when a
/// verdict fails and 2 on malformed input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace noether::cli
