#pragma once

#include <iosfwd>

namespace gamma_envelope::cli {

/// Parses argv and runs one sub-command. Reports go to `out` (or --out),
/// diagnostics to `err`. Returns 0 when every check passes, 1 when a check
/// fails or a probe finds a violation, 2 on usage or I/O errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gamma_envelope::cli
