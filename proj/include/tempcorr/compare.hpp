#pragma once

#include <string>
#include <vector>

#include "tempcorr/io.hpp"
#include "tempcorr/montecarlo.hpp"

namespace tempcorr {

// Analytic-vs-simulation comparison over the prefix estimators.
struct CompareSpec {
    mc::SimConfig config;
    int n_max = 4;                  // compare n = 1..n_max
    std::string quantity = "joint_success";  // or "at_least_once"
    double z_limit = 4.0;
    // When >= 0, replaces the analytic reference for every row (test hook).
    double reference_override = -1.0;
};

struct CompareRow {
    int n = 0;
    double analytic = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double z = 0.0;
};

struct CompareReport {
    std::vector<CompareRow> rows;
    double max_abs_z = 0.0;
    bool pass = true;

    Table table() const;
};

CompareReport run_compare(const CompareSpec& spec);

}  // namespace tempcorr
