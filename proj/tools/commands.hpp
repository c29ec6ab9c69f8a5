#pragma once

#include <iosfwd>

namespace sheetlab::cli {

/// Exit status: 0 success, 1 input error, 2 numeric contract failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sheetlab::cli
