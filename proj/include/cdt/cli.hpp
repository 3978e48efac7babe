// Command-line front end: solve, examples, grid, sensors, perturb.
// Exit codes for solve: 0 global minimizer certified, 2 perturbation-selected
// minimizer, 3 no certificate, 1 input error.
#pragma once

namespace cdt {

int run_cli(int argc, const char* const* argv);

}  // namespace cdt
