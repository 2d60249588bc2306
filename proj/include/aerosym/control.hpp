// Nonlinear velocity controller for thrust-propelled symmetric vehicles.
//
// The controller works on the equivalent spherical system: the required
// force f_p = m g e3 + F_p - m a_r is independent of the vehicle's
// orientation, so its time derivative needs no angular-velocity feedback and
// the thrust direction can be servoed onto f_p with a guaranteed Lyapunov
// decrease. An optional bounded integral term rejects constant unmodeled
// force disturbances.
#pragma once

#include <optional>

#include "aerosym/dynamics.hpp"
#include "aerosym/math_core.hpp"

namespace aerosym {

struct YawPolicy {
    enum class Mode {
        zero,     // omega3 = 0; yaw is a free degree of freedom
        heading,  // omega3 = -k_yaw * (yaw of the body x axis)
    };
    Mode mode = Mode::zero;
    double k_yaw = 0.0;
};

struct ControllerGains {
    double k1 = 0.0;  // thrust gain on the axial velocity error
    double k2 = 0.0;  // tilt gain on the transverse velocity error
    double k3 = 0.0;  // tilt gain on the thrust-direction error
    double eta = 1.0; // integral-force saturation bound [N]
    bool integral_enabled = false;
    YawPolicy yaw;
    // Optional thrust clamp [min, max]; unclamped by default so the
    // stability analysis conditions hold exactly.
    std::optional<std::pair<double, double>> thrust_limits;

    void validate() const;
};

struct HSaturation {
    double h = 0.0;      // eta / sqrt(1 + s)
    double dh_ds = 0.0;
};

/**
 * @brief Integral saturation shape h(s) = eta / sqrt(1 + s), evaluated at
 *        s = |I_v|^2 so that the saturated term h(|I_v|^2) I_v stays below
 *        eta in norm with slope bounded by eta.
 */
HSaturation h_saturation(double s, double eta);

// Required-force decomposition for one control cycle, inertial coordinates.
struct ForceSplit {
    Vec3 fa;       // m g e3 + F_a - m a_r (+ integral term)
    Vec3 fp;       // m g e3 + F_p - m a_r (+ integral term)
    Vec3 fp_dot;   // analytic time derivative of fp along the closed loop
    double thrust; // thrust computed this cycle (fp_dot depends on it)
};

/**
 * @brief Compute (f_a, f_p, fp_dot) and the cycle's thrust.
 *
 * Evaluation order within the cycle: f_a and f_p first, then the thrust
 * T = fa_body3 + k1 |f_p| vtilde3 (clamped if limits are set), then the
 * plant acceleration under that thrust, which feeds the analytic fp_dot.
 * Near zero airspeed the drag-derivative term degenerates smoothly (the
 * |u|u map has zero derivative at the origin).
 */
ForceSplit compute_fp_fa(const ControllerGains& gains, const VehicleParams& params,
                         const VehicleState& state, const WindModel& wind,
                         const ReferenceTrajectory& trajectory, double t);

struct ControlOutput {
    double thrust = 0.0;  // N
    Vec3 omega;           // rad/s, body frame
};

/**
 * @brief The velocity control law (T, omega).
 *
 * With vtilde = R^T (xdot - xdot_r), fb = R^T f_{a,p}:
 *   T  = fa_b3 + k1 |f_p| vtilde3
 *   w1 = -k2 |f_p| vtilde2 - k3 |f_p| fp_b2 / (|f_p| + fp_b3)^2
 *         - fp_b^T S(e1) R^T fp_dot / |f_p|^2
 *   w2 =  k2 |f_p| vtilde1 + k3 |f_p| fp_b1 / (|f_p| + fp_b3)^2
 *         - fp_b^T S(e2) R^T fp_dot / |f_p|^2
 * and omega3 from the yaw policy.
 *
 * Throws FpDegenerate when |f_p| <= 1e-6 m g and ThrustConeSingularity when
 * |f_p| + fp_b3 <= 1e-9 |f_p| (thrust axis exactly opposite f_p).
 */
ControlOutput velocity_control(const ControllerGains& gains,
                               const VehicleParams& params,
                               const VehicleState& state, const WindModel& wind,
                               const ReferenceTrajectory& trajectory, double t);

struct LyapunovSample {
    double value = 0.0;           // |vtilde|^2/2 + (1 - cos theta)/(k2 m)
    double vdot_predicted = 0.0;  // closed-form decrease rate
    double theta_tilde = 0.0;     // angle between the body k axis and f_p
    double fp_norm = 0.0;
    // True when the integral term is folded into f_p; the closed-form rate
    // does not account for it and is reported as-is.
    bool integral_active = false;
};

/**
 * @brief Evaluate the Lyapunov certificate at the current state:
 *        V = |vtilde|^2/2 + (1 - cos theta)/(k2 m) and its predicted rate
 *        (-k1 |f_p| vtilde3^2 - (k3/k2) tan^2(theta/2)) / m.
 */
LyapunovSample lyapunov_sample(const ControllerGains& gains,
                               const VehicleParams& params,
                               const VehicleState& state, const WindModel& wind,
                               const ReferenceTrajectory& trajectory, double t);

/// Yaw rate for the free third component of omega.
double yaw_rate(const YawPolicy& policy, const VehicleState& state);

}  // namespace aerosym
