#include "fpslfa/fuzzy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fpslfa {

namespace {

void check_chain(const std::array<double, 5>& values, bool increasing, const char* name) {
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string("fuzzy table: ") + name +
                                        " must be positive and finite");
        }
    }
    for (int i = 0; i < 4; ++i) {
        const bool ok = increasing ? values[i] < values[i + 1] : values[i] > values[i + 1];
        if (!ok) {
            throw std::invalid_argument(std::string("fuzzy table: ") + name + " must be strictly " +
                                        (increasing ? "increasing" : "decreasing"));
        }
    }
}

}  // namespace

void FuzzyTable::validate() const {
    check_chain(a_points, true, "a_points");
    check_chain(phi_points, true, "phi_points");
    check_chain(p_points, true, "p_points");
    check_chain(i_points, false, "i_points");
    check_chain(d_points, false, "d_points");
}

FuzzyTable default_table() {
    return FuzzyTable{
        .a_points = {0.0001, 0.0002, 0.0003, 0.0004, 0.0005},
        .phi_points = {0.00006, 0.00007, 0.00008, 0.00009, 0.0001},
        .p_points = {0.004, 0.0045, 0.005, 0.0055, 0.006},
        .i_points = {9e-7, 8e-7, 7e-7, 6e-7, 5e-7},
        .d_points = {7.2e-6, 6.4e-6, 5.6e-6, 4.8e-6, 4e-6},
    };
}

MembershipResult fuzzify(double a_t, const FuzzyTable& table) {
    if (!std::isfinite(a_t)) {
        throw std::invalid_argument("fuzzify: signal must be finite");
    }
    if (a_t <= table.a_points.front()) return {0, 1.0, 0.0};
    if (a_t >= table.a_points.back()) return {3, 0.0, 1.0};
    int i = 0;
    while (!(a_t < table.a_points[i + 1])) ++i;  // half-open [A_i, A_{i+1})
    const double width = table.a_points[i + 1] - table.a_points[i];
    const double d_lower = (table.a_points[i + 1] - a_t) / width;
    return {i, d_lower, (a_t - table.a_points[i]) / width};
}

AdaptedParams defuzzify(const MembershipResult& m, const FuzzyTable& table) {
    const int i = m.lower_index;
    auto blend = [&](const std::array<double, 5>& values) {
        return m.d_lower * values[i] + m.d_upper * values[i + 1];
    };
    return AdaptedParams{
        .phi = blend(table.phi_points),
        .gains = {blend(table.p_points), blend(table.i_points), blend(table.d_points)},
    };
}

}  // namespace fpslfa
