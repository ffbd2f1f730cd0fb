#pragma once

#include <string_view>

// Best-constant estimates on GaussianBumps(20, seed 42), res 40 and 80,
// frozen from the first accepted run (FRACLAB_WRITE_BASELINES=<file>).
namespace baseline {

struct Entry {
    std::string_view name;
    double c_emp_coarse;
    double c_emp_fine;
    double c_min_coarse;
    double c_min_fine;
};

inline constexpr Entry values[] = {
    {"gn", 0.47188329050518563, 0.4701535725224158, 0.44683220732354711, 0.44403853603547783},
    {"sobolev", 0.22720654283442351, 0.22554391565634774, 0.20385886073768969, 0.20131514020909647},
    {"hardy", 27.099666647331908, 27.893488881901089, 6.4670363220018681, 6.4488818157955103},
    {"ckn", 0.39580184462949375, 0.39477759206772262, 0.18730161020559619, 0.18466722173666364},
    {"ckn-critical", 0.21112898204415059, 0.21785652712544543, 0.091907578428052236, 0.089679010286587785},
};

}  // namespace baseline
