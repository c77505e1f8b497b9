#pragma once

#include <iosfwd>

namespace omit::cli {

/// Entry point shared by the executable and the tests. Returns the process
/// exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace omit::cli
