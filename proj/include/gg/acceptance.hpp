#pragma once

#include <iosfwd>
#include <vector>

namespace gg {

// Built-in desk-scale verification suite. Runs the requested criteria
// (1..10), printing one "criterion N: PASS/FAIL" line each; returns the
// number of failures. Criteria 7 and 8 share their sample tables when both
// are requested.
int run_acceptance(const std::vector<int>& criteria, int workers, std::ostream& out);

}  // namespace gg
