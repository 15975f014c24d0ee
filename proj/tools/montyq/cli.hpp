#pragma once

#include <ostream>

namespace montyq::cli {

// Exit codes: 0 success, 1 validation failure (details on err), 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace montyq::cli
