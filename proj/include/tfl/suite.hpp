// The quick oracle suite behind `tflab validate`.
#pragma once

#include <string>
#include <vector>

namespace tfl {

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    // Known conflicts with the printed source are reported without failing the suite.
    bool gating = true;
    std::string note;
};

std::vector<Check> oracle_suite();
bool suite_passed(const std::vector<Check>& checks);

}  // namespace tfl
