#pragma once

#include <iosfwd>

namespace superosc::cli {

// Full command-line surface; returns the process exit code.
// 0 = success, 1 = I/O or usage error, 2 = validity failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace superosc::cli
