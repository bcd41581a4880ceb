#pragma once

#include <iosfwd>

namespace hypiso {

/// Exit codes: 0 ok, 1 malformed input or usage, 2 domain error,
/// 3 Borderline or Undecided.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypiso
