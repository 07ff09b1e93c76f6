#pragma once

#include <array>

#include "fpslfa/types.hpp"

namespace fpslfa {

// Five-point gain-scheduling table over the per-epoch validation-RMSE
// improvement signal. a_points are the breakpoints; the other four arrays
// hold the parameter values interpolated between adjacent breakpoints.
//
// Required shape: a_points, phi_points, p_points strictly increasing;
// i_points, d_points strictly decreasing; everything positive. Larger
// improvements therefore schedule a larger shrinkage constant and
// proportional gain, and smaller integral and derivative gains.
struct FuzzyTable {
    std::array<double, 5> a_points;
    std::array<double, 5> phi_points;
    std::array<double, 5> p_points;
    std::array<double, 5> i_points;
    std::array<double, 5> d_points;

    // Throws std::invalid_argument naming the violated chain.
    void validate() const;
};

FuzzyTable default_table();

// Triangular membership of the improvement signal between two adjacent
// breakpoints; the two degrees always sum to one.
struct MembershipResult {
    int lower_index = 0;  // 0..3, indexes the breakpoint pair (i, i+1)
    double d_lower = 1.0;
    double d_upper = 0.0;
};

// Shrinkage constant plus eta-folded PID gains, as scheduled by the table.
struct AdaptedParams {
    double phi = 0.0;
    PidGains gains;
};

// Signals at or below the first breakpoint (including any negative value,
// i.e. a worsening RMSE) clamp to the first breakpoint's pure membership;
// signals at or above the last breakpoint clamp to the last.
MembershipResult fuzzify(double a_t, const FuzzyTable& table);

// Degree-weighted average of the two adjacent table columns.
AdaptedParams defuzzify(const MembershipResult& membership, const FuzzyTable& table);

}  // namespace fpslfa
