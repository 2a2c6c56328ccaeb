#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bvc::cli {

// Exit codes are a stable contract: 0 = all requested conditions hold / run
// passed, 1 = a condition fails or a run violates its verdicts, 2 = usage or
// parse error, 3 = a sweep refused to run past its budget.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bvc::cli
