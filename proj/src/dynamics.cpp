#include "aerosym/dynamics.hpp"

#include <cmath>

#include "aerosym/errors.hpp"

namespace aerosym {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Quintic smoothstep and its first two derivatives on [0, 1].
struct Smoothstep {
    double s, ds, dds;
};

Smoothstep smoothstep(double tau) {
    if (tau <= 0.0) return {0.0, 0.0, 0.0};
    if (tau >= 1.0) return {1.0, 0.0, 0.0};
    const double t2 = tau * tau;
    const double t3 = t2 * tau;
    return {t3 * (10.0 - 15.0 * tau + 6.0 * t2),
            30.0 * t2 * (1.0 - 2.0 * tau + t2),
            60.0 * tau * (1.0 - 3.0 * tau + 2.0 * t2)};
}

}  // namespace

VehicleParams::VehicleParams(double m, double g, AeroModel model)
    : mass(m), gravity(g), aero(std::move(model)) {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw ConfigError("mass must be positive");
    if (!(gravity > 0.0) || !std::isfinite(gravity)) {
        throw ConfigError("gravity must be positive");
    }
}

Vec3 WindModel::velocity(double t) const {
    if (const auto* c = std::get_if<Constant>(&kind_)) return c->velocity;
    const auto& s = std::get<Sinusoidal>(kind_);
    return s.mean + s.amplitude * std::sin(kTwoPi * s.frequency_hz * t + s.phase_rad);
}

Vec3 WindModel::acceleration(double t) const {
    if (std::holds_alternative<Constant>(kind_)) return {};
    const auto& s = std::get<Sinusoidal>(kind_);
    const double w = kTwoPi * s.frequency_hz;
    return s.amplitude * (w * std::cos(w * t + s.phase_rad));
}

Vec3 WindModel::jerk(double t) const {
    if (std::holds_alternative<Constant>(kind_)) return {};
    const auto& s = std::get<Sinusoidal>(kind_);
    const double w = kTwoPi * s.frequency_hz;
    return s.amplitude * (-w * w * std::sin(w * t + s.phase_rad));
}

ReferenceTrajectory::ReferenceTrajectory(PolynomialRamp r) : kind_(r) {
    if (!(r.end_s > r.start_s)) {
        throw ConfigError("polynomial ramp needs end_s > start_s");
    }
}

Vec3 ReferenceTrajectory::velocity(double t) const {
    if (const auto* c = std::get_if<ConstantVelocity>(&kind_)) return c->velocity;
    if (const auto* r = std::get_if<PolynomialRamp>(&kind_)) {
        const double tau = (t - r->start_s) / (r->end_s - r->start_s);
        return r->initial_velocity +
               (r->final_velocity - r->initial_velocity) * smoothstep(tau).s;
    }
    const auto& c = std::get<Circle>(kind_);
    const double ph = c.angular_rate_radps * t + c.phase_rad;
    const double v = c.radius_m * c.angular_rate_radps;
    return {-v * std::sin(ph), v * std::cos(ph), 0.0};
}

Vec3 ReferenceTrajectory::acceleration(double t) const {
    if (std::holds_alternative<ConstantVelocity>(kind_)) return {};
    if (const auto* r = std::get_if<PolynomialRamp>(&kind_)) {
        const double span = r->end_s - r->start_s;
        const double tau = (t - r->start_s) / span;
        return (r->final_velocity - r->initial_velocity) * (smoothstep(tau).ds / span);
    }
    const auto& c = std::get<Circle>(kind_);
    const double ph = c.angular_rate_radps * t + c.phase_rad;
    const double a = c.radius_m * c.angular_rate_radps * c.angular_rate_radps;
    return {-a * std::cos(ph), -a * std::sin(ph), 0.0};
}

Vec3 ReferenceTrajectory::jerk(double t) const {
    if (std::holds_alternative<ConstantVelocity>(kind_)) return {};
    if (const auto* r = std::get_if<PolynomialRamp>(&kind_)) {
        const double span = r->end_s - r->start_s;
        const double tau = (t - r->start_s) / span;
        return (r->final_velocity - r->initial_velocity) *
               (smoothstep(tau).dds / (span * span));
    }
    const auto& c = std::get<Circle>(kind_);
    const double ph = c.angular_rate_radps * t + c.phase_rad;
    const double j = c.radius_m * c.angular_rate_radps * c.angular_rate_radps *
                     c.angular_rate_radps;
    return {j * std::sin(ph), -j * std::cos(ph), 0.0};
}

Vec3 acceleration(const VehicleParams& params, const VehicleState& state,
                  const WindModel& wind, double t, double thrust) {
    const Vec3 va_body =
        state.attitude.apply_inverse(state.velocity - wind.velocity(t));
    const Vec3 fa_body = aero_force(params.aero, va_body).total();
    return params.gravity * kE3 + state.attitude.apply(fa_body) / params.mass -
           (thrust / params.mass) * state.attitude.column(2);
}

VehicleState step(const VehicleParams& params, const VehicleState& state,
                  const WindModel& wind, const ReferenceTrajectory& trajectory,
                  double t, double dt, double thrust, const Vec3& omega,
                  const Vec3& external_force) {
    if (!(dt > 0.0) || dt > 0.1) {
        throw ConfigError("step size must lie in (0, 0.1] s");
    }

    // Attitude along the step under constant omega (exact). Zero rate keeps
    // the matrix bit-identical.
    const bool spinning = omega.norm_squared() > 0.0;
    const Rotation r_half =
        spinning ? state.attitude.times(exp_so3(omega * (0.5 * dt))) : state.attitude;
    const Rotation r_full =
        spinning ? state.attitude.times(exp_so3(omega * dt)) : state.attitude;

    const Vec3 bias_accel = external_force / params.mass;
    auto deriv = [&](const Vec3& velocity, const Rotation& att, double ts) {
        const Vec3 va_body = att.apply_inverse(velocity - wind.velocity(ts));
        const Vec3 fa_body = aero_force(params.aero, va_body).total();
        return params.gravity * kE3 + att.apply(fa_body) / params.mass -
               (thrust / params.mass) * att.column(2) + bias_accel;
    };

    // RK4 on (x, xdot, I_v); I_v integrates the inertial velocity error.
    const Vec3 k1x = state.velocity;
    const Vec3 k1v = deriv(state.velocity, state.attitude, t);
    const Vec3 k1i = state.velocity - trajectory.velocity(t);

    const Vec3 v2 = state.velocity + k1v * (0.5 * dt);
    const Vec3 k2x = v2;
    const Vec3 k2v = deriv(v2, r_half, t + 0.5 * dt);
    const Vec3 k2i = v2 - trajectory.velocity(t + 0.5 * dt);

    const Vec3 v3 = state.velocity + k2v * (0.5 * dt);
    const Vec3 k3x = v3;
    const Vec3 k3v = deriv(v3, r_half, t + 0.5 * dt);
    const Vec3 k3i = v3 - trajectory.velocity(t + 0.5 * dt);

    const Vec3 v4 = state.velocity + k3v * dt;
    const Vec3 k4x = v4;
    const Vec3 k4v = deriv(v4, r_full, t + dt);
    const Vec3 k4i = v4 - trajectory.velocity(t + dt);

    VehicleState next{
        state.position + (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        state.velocity + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
        r_full,
        state.integral_error + (dt / 6.0) * (k1i + 2.0 * k2i + 2.0 * k3i + k4i)};

    if (!next.position.is_finite() || !next.velocity.is_finite() ||
        !next.integral_error.is_finite()) {
        throw NonFiniteState("state left the finite range during integration");
    }
    return next;
}

}  // namespace aerosym
