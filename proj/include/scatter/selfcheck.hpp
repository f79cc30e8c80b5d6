#pragma once

#include <string>
#include <vector>

namespace scatter {

struct CheckOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Small-size oracle and invariance checks over every pipeline stage.
std::vector<CheckOutcome> run_selfcheck(unsigned seed = 0);

}  // namespace scatter
