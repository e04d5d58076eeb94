#pragma once

#include <ostream>

namespace meshpat {

// Exit codes: 0 verified, 1 counterexample, 2 usage or parse error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace meshpat
