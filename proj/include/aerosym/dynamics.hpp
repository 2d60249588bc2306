// Closed-loop plant: translational dynamics under gravity, aerodynamic force
// and thrust, attitude kinematics driven by a commanded angular velocity,
// uniform wind fields, and a fixed-step integrator.
//
// Sign conventions: the inertial third axis e3 points down, gravity is
// +g*e3, and thrust acts along the negative body third axis (-T*k), so a
// hovering vehicle carries T = m*g with its k axis pointing down.
#pragma once

#include <variant>

#include "aerosym/aero_model.hpp"
#include "aerosym/math_core.hpp"

namespace aerosym {

struct VehicleParams {
    double mass = 1.0;     // kg
    double gravity = 9.81; // m/s^2
    AeroModel aero;

    VehicleParams(double m, double g, AeroModel model);
};

struct VehicleState {
    Vec3 position;        // m, inertial
    Vec3 velocity;        // m/s, inertial
    Rotation attitude;    // body axes as columns in the inertial frame
    Vec3 integral_error;  // m, accumulated velocity-error integral
};

// Uniform wind: the same velocity at all points around the vehicle, with
// analytic first and second time derivatives.
class WindModel {
public:
    struct Constant {
        Vec3 velocity;
    };
    struct Sinusoidal {
        Vec3 mean;
        Vec3 amplitude;
        double frequency_hz = 0.0;
        double phase_rad = 0.0;
    };

    WindModel() : kind_(Constant{}) {}
    explicit WindModel(Constant c) : kind_(c) {}
    explicit WindModel(Sinusoidal s) : kind_(s) {}

    static WindModel still() { return WindModel(Constant{}); }
    static WindModel constant(const Vec3& v) { return WindModel(Constant{v}); }

    Vec3 velocity(double t) const;
    Vec3 acceleration(double t) const;  // d/dt of the wind velocity
    Vec3 jerk(double t) const;          // d^2/dt^2 of the wind velocity

    const std::variant<Constant, Sinusoidal>& kind() const { return kind_; }

private:
    std::variant<Constant, Sinusoidal> kind_;
};

// Reference velocity profile with analytic derivatives up to the third
// position derivative (needed by the controller feed-forward).
class ReferenceTrajectory {
public:
    struct ConstantVelocity {
        Vec3 velocity;
    };
    // Smooth (quintic-smoothstep) velocity ramp between two levels on
    // [start, end]; constant outside. Degenerate windows are rejected.
    struct PolynomialRamp {
        Vec3 initial_velocity;
        Vec3 final_velocity;
        double start_s = 0.0;
        double end_s = 1.0;
    };
    // Horizontal circular velocity reference of given radius and rate.
    struct Circle {
        double radius_m = 1.0;
        double angular_rate_radps = 1.0;
        double phase_rad = 0.0;
    };

    ReferenceTrajectory() : kind_(ConstantVelocity{}) {}
    explicit ReferenceTrajectory(ConstantVelocity c) : kind_(c) {}
    explicit ReferenceTrajectory(PolynomialRamp r);
    explicit ReferenceTrajectory(Circle c) : kind_(c) {}

    static ReferenceTrajectory rest() { return ReferenceTrajectory(ConstantVelocity{}); }
    static ReferenceTrajectory constant_velocity(const Vec3& v) {
        return ReferenceTrajectory(ConstantVelocity{v});
    }

    Vec3 velocity(double t) const;      // xdot_r
    Vec3 acceleration(double t) const;  // xddot_r
    Vec3 jerk(double t) const;          // third position derivative

    const std::variant<ConstantVelocity, PolynomialRamp, Circle>& kind() const {
        return kind_;
    }

private:
    std::variant<ConstantVelocity, PolynomialRamp, Circle> kind_;
};

/**
 * @brief Translational acceleration of the plant:
 *        xddot = g e3 + R F_a(R^T (xdot - v_w)) / m - (T/m) R e3.
 */
Vec3 acceleration(const VehicleParams& params, const VehicleState& state,
                  const WindModel& wind, double t, double thrust);

/**
 * @brief Advance the state by one step with (thrust, omega) held constant.
 *
 * Position, velocity and the velocity-error integral advance by classical
 * RK4; the attitude advances by the exact exponential R * exp_so3(omega*dt),
 * evaluated at the half and full step for the intermediate RK4 stages.
 * `external_force` adds an unmodeled inertial-frame disturbance to the plant.
 *
 * Throws ConfigError for dt outside (0, 0.1] and NonFiniteState if any
 * component leaves the finite range.
 */
VehicleState step(const VehicleParams& params, const VehicleState& state,
                  const WindModel& wind, const ReferenceTrajectory& trajectory,
                  double t, double dt, double thrust, const Vec3& omega,
                  const Vec3& external_force = {});

}  // namespace aerosym
