#include "aerosym/control.hpp"

#include <algorithm>
#include <cmath>

#include "aerosym/errors.hpp"

namespace aerosym {

namespace {

constexpr double kSpeedFloor = 1e-9;  // below this the drag derivative degenerates

struct RequiredForces {
    Vec3 fa;         // inertial
    Vec3 fp;         // inertial
    Vec3 xa_dot;     // inertial airspeed
    double speed;    // |xa_dot|
    double cd0;
};

RequiredForces required_forces(const ControllerGains& gains,
                               const VehicleParams& params,
                               const VehicleState& state, const WindModel& wind,
                               const ReferenceTrajectory& trajectory, double t) {
    const auto cd0 = params.aero.equivalent_cd0();
    if (!cd0) {
        throw NotEquivalent("controller requires a model with constant C_D0");
    }
    RequiredForces out;
    out.cd0 = *cd0;
    out.xa_dot = state.velocity - wind.velocity(t);
    out.speed = out.xa_dot.norm();

    const Vec3 fa_body =
        aero_force(params.aero, state.attitude.apply_inverse(out.xa_dot)).total();
    const Vec3 fa_inertial = state.attitude.apply(fa_body);
    const Vec3 fp_inertial = -params.aero.ka() * (*cd0) * out.speed * out.xa_dot;

    const Vec3 base = params.mass * params.gravity * kE3 -
                      params.mass * trajectory.acceleration(t);
    out.fa = base + fa_inertial;
    out.fp = base + fp_inertial;
    if (gains.integral_enabled) {
        const Vec3 iv = state.integral_error;
        const Vec3 sat = gains.eta * iv / std::sqrt(1.0 + iv.norm_squared());
        out.fa += sat;
        out.fp += sat;
    }
    return out;
}

}  // namespace

void ControllerGains::validate() const {
    if (!(k1 > 0.0) || !(k2 > 0.0) || !(k3 > 0.0)) {
        throw ConfigError("controller gains k1, k2, k3 must be positive");
    }
    if (!(eta > 0.0)) throw ConfigError("integral saturation eta must be positive");
    if (thrust_limits && !(thrust_limits->first <= thrust_limits->second)) {
        throw ConfigError("thrust limits must satisfy min <= max");
    }
}

HSaturation h_saturation(double s, double eta) {
    if (s < 0.0) throw DomainError("h_saturation domain is s >= 0");
    const double root = std::sqrt(1.0 + s);
    return {eta / root, -0.5 * eta / (root * root * root)};
}

ForceSplit compute_fp_fa(const ControllerGains& gains, const VehicleParams& params,
                         const VehicleState& state, const WindModel& wind,
                         const ReferenceTrajectory& trajectory, double t) {
    const RequiredForces rf =
        required_forces(gains, params, state, wind, trajectory, t);

    ForceSplit out;
    out.fa = rf.fa;
    out.fp = rf.fp;

    // Thrust first: it does not depend on fp_dot, but the plant acceleration
    // feeding fp_dot depends on it.
    const Vec3 vtilde =
        state.attitude.apply_inverse(state.velocity - trajectory.velocity(t));
    const double nfp = rf.fp.norm();
    out.thrust = state.attitude.apply_inverse(rf.fa).z + gains.k1 * nfp * vtilde.z;
    if (gains.thrust_limits) {
        out.thrust = std::clamp(out.thrust, gains.thrust_limits->first,
                                gains.thrust_limits->second);
    }

    const Vec3 xa_ddot =
        acceleration(params, state, wind, t, out.thrust) - wind.acceleration(t);
    const double scale = params.aero.ka() * rf.cd0;
    Vec3 drag_dot;
    if (rf.speed < kSpeedFloor) {
        drag_dot = -scale * rf.speed * xa_ddot;
    } else {
        drag_dot = -scale * ((rf.xa_dot.dot(xa_ddot) / rf.speed) * rf.xa_dot +
                             rf.speed * xa_ddot);
    }
    out.fp_dot = drag_dot - params.mass * trajectory.jerk(t);

    if (gains.integral_enabled) {
        const Vec3 iv = state.integral_error;
        const Vec3 iv_dot = state.velocity - trajectory.velocity(t);
        const double u2 = iv.norm_squared();
        const double root = std::sqrt(1.0 + u2);
        out.fp_dot += gains.eta *
                      (iv_dot / root - iv * (iv.dot(iv_dot) / (root * root * root)));
    }
    return out;
}

ControlOutput velocity_control(const ControllerGains& gains,
                               const VehicleParams& params,
                               const VehicleState& state, const WindModel& wind,
                               const ReferenceTrajectory& trajectory, double t) {
    const ForceSplit fs = compute_fp_fa(gains, params, state, wind, trajectory, t);

    const double nfp = fs.fp.norm();
    const double delta = 1e-6 * params.mass * params.gravity;
    if (nfp <= delta) {
        throw FpDegenerate("|f_p| fell below the stability guard");
    }
    const Vec3 fpb = state.attitude.apply_inverse(fs.fp);
    const double cone = nfp + fpb.z;
    if (cone <= 1e-9 * nfp) {
        throw ThrustConeSingularity("thrust axis opposite f_p (theta = pi)");
    }

    const Vec3 vtilde =
        state.attitude.apply_inverse(state.velocity - trajectory.velocity(t));
    const Vec3 q = state.attitude.apply_inverse(fs.fp_dot);
    const double den = cone * cone;
    const double nfp2 = nfp * nfp;

    ControlOutput out;
    out.thrust = fs.thrust;
    // Feed-forward terms track the motion of the f_p direction; they carry
    // the sign that makes the Lyapunov rate hit its closed form.
    out.omega.x = -gains.k2 * nfp * vtilde.y - gains.k3 * nfp * fpb.y / den -
                  fpb.dot(kE1.cross(q)) / nfp2;
    out.omega.y = gains.k2 * nfp * vtilde.x + gains.k3 * nfp * fpb.x / den -
                  fpb.dot(kE2.cross(q)) / nfp2;
    out.omega.z = yaw_rate(gains.yaw, state);
    return out;
}

LyapunovSample lyapunov_sample(const ControllerGains& gains,
                               const VehicleParams& params,
                               const VehicleState& state, const WindModel& wind,
                               const ReferenceTrajectory& trajectory, double t) {
    const RequiredForces rf =
        required_forces(gains, params, state, wind, trajectory, t);
    const double nfp = rf.fp.norm();
    if (!(nfp > 0.0)) {
        throw FpDegenerate("|f_p| = 0: the thrust-direction error is undefined");
    }
    const Vec3 fpb = state.attitude.apply_inverse(rf.fp);
    const Vec3 vtilde =
        state.attitude.apply_inverse(state.velocity - trajectory.velocity(t));

    LyapunovSample out;
    out.fp_norm = nfp;
    out.integral_active = gains.integral_enabled;
    const double c = std::clamp(fpb.z / nfp, -1.0, 1.0);
    out.theta_tilde = std::acos(c);
    out.value = 0.5 * vtilde.norm_squared() +
                (1.0 - c) / (gains.k2 * params.mass);
    const double t2 = std::tan(0.5 * out.theta_tilde);
    out.vdot_predicted = -(gains.k1 * nfp * vtilde.z * vtilde.z +
                           (gains.k3 / gains.k2) * t2 * t2) /
                         params.mass;
    return out;
}

double yaw_rate(const YawPolicy& policy, const VehicleState& state) {
    if (policy.mode == YawPolicy::Mode::zero) return 0.0;
    // Heading of the body x axis in the inertial horizontal plane.
    const Vec3 bx = state.attitude.column(0);
    const double heading = std::atan2(bx.y, bx.x);
    return -policy.k_yaw * heading;
}

}  // namespace aerosym
