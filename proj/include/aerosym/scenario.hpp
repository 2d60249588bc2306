// Scenario configuration and the batch simulation runner.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "aerosym/control.hpp"
#include "aerosym/dynamics.hpp"

namespace aerosym {

struct Scenario {
    std::string name = "scenario";
    VehicleParams vehicle;
    WindModel wind;
    ReferenceTrajectory reference;
    ControllerGains gains;
    VehicleState initial_state;
    double dt = 1e-3;       // s, in (0, 0.1]
    double duration = 1.0;  // s
    Vec3 disturbance_bias;  // N, unmodeled constant force on the plant
    std::uint64_t seed = 0;

    void validate() const;
};

enum class RunStatus {
    ok,
    fp_degenerate,
    thrust_cone_singularity,
    non_finite,
    config_error,
};

const char* to_string(RunStatus s);

// One logged sample; controls are the zero-order-hold values applied over
// the step starting at t.
struct RunRecord {
    double t = 0.0;
    Vec3 position;
    Vec3 velocity;       // inertial
    Mat3 attitude;
    double alpha = 0.0;  // 0 when the airspeed is too small to define it
    double beta = 0.0;
    double thrust = 0.0;
    Vec3 omega;
    double vtilde_norm = 0.0;
    double theta_tilde = 0.0;
    double lyapunov = 0.0;
    double fp_norm = 0.0;
};

struct RunSummary {
    RunStatus status = RunStatus::ok;
    double end_time = 0.0;
    bool settled = false;
    double settling_time = 0.0;           // first |vtilde| < 1e-3 crossing that holds
    double rms_error_after_settling = 0.0;
    double max_theta_tilde = 0.0;
    long lyapunov_violations = 0;         // steps with V(t+dt) - V(t) > 1e-6
    double final_vtilde_norm = 0.0;
    double final_theta_tilde = 0.0;
    std::string message;                  // failure detail when status != ok
};

struct RunLog {
    std::vector<RunRecord> records;
    RunSummary summary;
};

struct RunOptions {
    bool keep_records = true;
    // Called once per logged sample; useful for streaming analysis without
    // retaining the full record vector. Not used by run_batch.
    std::function<void(const RunRecord&)> observer;
};

constexpr double kSettleThreshold = 1e-3;      // m/s
constexpr double kLyapunovViolation = 1e-6;    // per-step V increase bound

/**
 * @brief Run one closed-loop scenario: controller and plant advance at the
 *        same rate, records land at t = 0, dt, ..., floor(duration/dt)*dt.
 *
 * Deterministic: re-runs produce bit-identical logs. Controller errors
 * (FpDegenerate, ThrustConeSingularity) end the run early with a flagged
 * status instead of propagating.
 */
RunLog run_scenario(const Scenario& scenario, const RunOptions& options = {});

/**
 * @brief Run independent scenarios, optionally in parallel. Results are
 *        positionally identical to sequential execution for any parallelism.
 *        Per-scenario failures are captured in the corresponding summary.
 */
std::vector<RunLog> run_batch(std::span<const Scenario> scenarios, int parallelism);

/**
 * @brief Attitude whose body k axis sits at angle `tilt` from `target_dir`,
 *        with the tilt plane picked by `azimuth` and the body x/y axes spun
 *        by `spin` about k. Used to seed runs with a prescribed
 *        thrust-direction error.
 */
Rotation attitude_with_tilt(const Vec3& target_dir, double tilt, double azimuth,
                            double spin);

}  // namespace aerosym
