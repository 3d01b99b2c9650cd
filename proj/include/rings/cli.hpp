#pragma once

namespace rings {

// Entry point of the `rings` tool. Returns the process exit code:
// 0 success, 1 failed check, 2 invalid input, 3 supercritical, 4 no convergence.
int run_cli(int argc, char** argv);

}  // namespace rings
