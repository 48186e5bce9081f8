#pragma once

#include <iosfwd>

namespace augsimp {

// Runs acceptance criterion k (1..9), or all of them when k = 0, writing
// one PASS/FAIL line per criterion plus indented detail. Returns 0 when
// every criterion that ran passed, 1 otherwise.
int run_acceptance(std::ostream& out, int k);

}  // namespace augsimp
