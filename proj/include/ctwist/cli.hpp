#pragma once

namespace ctwist::cli {

// Exit codes: 0 all requested checks pass, 1 a mathematical property failed,
// 2 invalid input, 3 solver non-convergence.
int run(int argc, const char* const* argv);

}  // namespace ctwist::cli
