#pragma once

#include <iosfwd>

namespace r2d2::cli {

inline constexpr int kSchemaVersion = 1;

/// Runs the r2d2 command line. Returns 0 on success, 1 on usage errors,
/// 2 on bad input data and 3 on numerical failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace r2d2::cli
