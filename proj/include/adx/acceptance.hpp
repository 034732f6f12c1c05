#pragma once
#include <string>
#include <vector>

namespace adx {

struct Criterion {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the quantitative desk-scale checks; quick mode uses coarser grids.
std::vector<Criterion> run_acceptance(bool quick = false);

} // namespace adx
