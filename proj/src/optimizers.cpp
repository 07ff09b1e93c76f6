#include "fpslfa/optimizers.hpp"

#include <cmath>

#include "fpslfa/errors.hpp"

namespace fpslfa {

namespace {

// Beyond this magnitude a factor is treated as diverged even while finite;
// squaring up to 1e6 stays comfortably inside the double range.
constexpr double kFactorLimit = 1e6;

void check_finite(const FactorModel& model, const Entry& entry) {
    for (double v : model.x_row(entry.row)) {
        if (!std::isfinite(v) || std::abs(v) > kFactorLimit) {
            throw DivergenceError(entry.row, entry.col, "row factor out of range");
        }
    }
    for (double v : model.y_row(entry.col)) {
        if (!std::isfinite(v) || std::abs(v) > kFactorLimit) {
            throw DivergenceError(entry.row, entry.col, "column factor out of range");
        }
    }
}

// Shared core of the sgd and psl rules. The per-component form makes the
// simultaneous (pre-update) semantics explicit: new x[k] and y[k] depend only
// on the old x[k], y[k].
void apply_scaled_error(FactorModel& model, const Entry& entry, double error,
                        const Hyperparams& hyper) {
    const std::span<double> x = model.x_row(entry.row);
    const std::span<double> y = model.y_row(entry.col);
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double xk = x[k];
        const double yk = y[k];
        x[k] = xk + hyper.eta * (error * yk - hyper.lambda * xk);
        y[k] = yk + hyper.eta * (error * xk - hyper.lambda * yk);
    }
    check_finite(model, entry);
}

}  // namespace

std::optional<OptimizerKind> parse_optimizer_kind(std::string_view name) {
    if (name == "sgd") return OptimizerKind::sgd;
    if (name == "pid") return OptimizerKind::pid;
    if (name == "fps") return OptimizerKind::fps;
    return std::nullopt;
}

std::string to_string(OptimizerKind kind) {
    switch (kind) {
        case OptimizerKind::sgd: return "sgd";
        case OptimizerKind::pid: return "pid";
        case OptimizerKind::fps: return "fps";
    }
    return "unknown";
}

double instance_error(const FactorModel& model, const Entry& entry) {
    return entry.value - model.predict(entry.row, entry.col);
}

void sgd_update(FactorModel& model, const Entry& entry, const Hyperparams& hyper) {
    apply_scaled_error(model, entry, instance_error(model, entry), hyper);
}

Refinement pid_refine(double e_t, const ControllerState& state, const PidGains& gains) {
    Refinement r;
    r.next.integral = state.integral + e_t;
    r.next.prev_error = e_t;
    r.next.initialized = true;
    r.value = gains.kp * e_t + gains.ki * r.next.integral + gains.kd * (e_t - state.prev_error);
    return r;
}

void psl_update(FactorModel& model, const Entry& entry, ControllerState& state,
                const Hyperparams& hyper, const PidGains& gains) {
    const Refinement r = pid_refine(instance_error(model, entry), state, gains);
    state = r.next;
    apply_scaled_error(model, entry, r.value, hyper);
}

void fps_update(FactorModel& model, const Entry& entry, ControllerState& state,
                const AdaptedParams& params) {
    const Refinement r = pid_refine(instance_error(model, entry), state, params.gains);
    state = r.next;

    const double keep = 1.0 - params.phi;
    const std::span<double> x = model.x_row(entry.row);
    const std::span<double> y = model.y_row(entry.col);
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double xk = x[k];
        const double yk = y[k];
        x[k] = keep * xk + r.value * yk;
        y[k] = keep * yk + r.value * xk;
    }
    check_finite(model, entry);
}

}  // namespace fpslfa
