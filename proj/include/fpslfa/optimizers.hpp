#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpslfa/fuzzy.hpp"
#include "fpslfa/types.hpp"

namespace fpslfa {

enum class OptimizerKind { sgd, pid, fps };

std::optional<OptimizerKind> parse_optimizer_kind(std::string_view name);
std::string to_string(OptimizerKind kind);

// Per-entry PID memory: the previous instance error and the running error
// sum. Before the first update prev_error and integral are zero.
struct ControllerState {
    double prev_error = 0.0;
    double integral = 0.0;
    bool initialized = false;
};

// One controller per training entry, indexed by the entry's position in the
// training sequence. State identity is stable across epochs; controllers are
// never reset between epochs.
struct ControllerBank {
    explicit ControllerBank(std::size_t num_entries) : states(num_entries) {}
    std::vector<ControllerState> states;
};

// Raw learning signal: value - <x_row, y_col>, from the current model.
double instance_error(const FactorModel& model, const Entry& entry);

// x_row <- x_row + eta * (e * y_col - lambda * x_row), and symmetrically for
// y_col, both right-hand sides taken from the pre-update vectors. Throws
// DivergenceError if a touched factor leaves the finite range.
void sgd_update(FactorModel& model, const Entry& entry, const Hyperparams& hyper);

struct Refinement {
    double value = 0.0;  // kp * e + ki * integral + kd * (e - prev_error)
    ControllerState next;
};

// Folds the current error into the controller state and combines the
// proportional, integral, and derivative terms. On the first call the
// previous error is taken as zero, so the derivative term is kd * e.
Refinement pid_refine(double e_t, const ControllerState& state, const PidGains& gains);

// Fixed-gain PID-refined SGD step: the refined error replaces the raw error
// in the sgd_update rule. Advances the controller state.
void psl_update(FactorModel& model, const Entry& entry, ControllerState& state,
                const Hyperparams& hyper, const PidGains& gains);

// Folded adaptive step: with eta-folded gains and phi = eta * lambda,
//   x_row <- (1 - phi) * x_row + refined * y_col,
// and symmetrically for y_col, pre-update vectors on both right-hand sides.
void fps_update(FactorModel& model, const Entry& entry, ControllerState& state,
                const AdaptedParams& params);

}  // namespace fpslfa
