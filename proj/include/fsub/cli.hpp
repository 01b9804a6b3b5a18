#pragma once

// Command-line driver. Exit codes: 0 success (all YES for `check`), 1 some
// NO, 2 some UNKNOWN, 3 parse, scoping or usage error, 4 a transformer
// precondition was violated.

#include <iosfwd>

namespace fsubtype::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitPrecondition = 4;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fsubtype::cli
