#pragma once

#include <ostream>

namespace trimodal {

// Entry point of the tdist tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace trimodal
