#pragma once

#include <ostream>

namespace mlob::cli {

/// Runs the command-line tool in-process. Returns the process exit status:
/// 0 success, 2 input format error, 3 statistical degeneracy, 4 ill-posed
/// pricing regime, 1 anything else.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mlob::cli
