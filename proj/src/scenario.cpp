#include "aerosym/scenario.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "aerosym/errors.hpp"
#include "aerosym/log.hpp"

namespace aerosym {

void Scenario::validate() const {
    if (!(dt > 0.0) || dt > 0.1) throw ConfigError("dt must lie in (0, 0.1] s");
    if (!(duration > 0.0)) throw ConfigError("duration must be positive");
    gains.validate();
}

const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::ok: return "ok";
        case RunStatus::fp_degenerate: return "fp_degenerate";
        case RunStatus::thrust_cone_singularity: return "thrust_cone_singularity";
        case RunStatus::non_finite: return "non_finite";
        case RunStatus::config_error: return "config_error";
    }
    return "unknown";
}

namespace {

RunSummary summarize(const std::vector<RunRecord>& records, RunStatus status,
                     double end_time, std::string message) {
    RunSummary s;
    s.status = status;
    s.end_time = end_time;
    s.message = std::move(message);
    if (records.empty()) return s;

    s.final_vtilde_norm = records.back().vtilde_norm;
    s.final_theta_tilde = records.back().theta_tilde;
    for (const auto& r : records) {
        s.max_theta_tilde = std::max(s.max_theta_tilde, r.theta_tilde);
    }
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].lyapunov - records[i - 1].lyapunov > kLyapunovViolation) {
            ++s.lyapunov_violations;
        }
    }
    // Settling: the first crossing below threshold after which |vtilde|
    // never exceeds it again within the run.
    std::size_t first_settled = records.size();
    for (std::size_t i = records.size(); i-- > 0;) {
        if (records[i].vtilde_norm >= kSettleThreshold) break;
        first_settled = i;
    }
    if (first_settled < records.size()) {
        s.settled = true;
        s.settling_time = records[first_settled].t;
        double acc = 0.0;
        std::size_t n = 0;
        for (std::size_t i = first_settled; i < records.size(); ++i) {
            acc += records[i].vtilde_norm * records[i].vtilde_norm;
            ++n;
        }
        s.rms_error_after_settling = std::sqrt(acc / static_cast<double>(n));
    }
    return s;
}

}  // namespace

RunLog run_scenario(const Scenario& scenario, const RunOptions& options) {
    scenario.validate();
    log_debug("running scenario '" + scenario.name + "'");

    const long steps = static_cast<long>(std::floor(scenario.duration / scenario.dt));
    RunLog out;
    if (options.keep_records) out.records.reserve(static_cast<std::size_t>(steps) + 1);

    VehicleState state = scenario.initial_state;
    RunStatus status = RunStatus::ok;
    std::string message;
    double end_time = 0.0;

    std::vector<RunRecord> local;  // minimal history when records are dropped
    for (long i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * scenario.dt;
        RunRecord rec;
        rec.t = t;
        rec.position = state.position;
        rec.velocity = state.velocity;
        rec.attitude = state.attitude.matrix();
        try {
            const ControlOutput u =
                velocity_control(scenario.gains, scenario.vehicle, state,
                                 scenario.wind, scenario.reference, t);
            rec.thrust = u.thrust;
            rec.omega = u.omega;
        } catch (const FpDegenerate& e) {
            status = RunStatus::fp_degenerate;
            message = e.what();
            end_time = t;
            break;
        } catch (const ThrustConeSingularity& e) {
            status = RunStatus::thrust_cone_singularity;
            message = e.what();
            end_time = t;
            break;
        }

        const LyapunovSample lyap =
            lyapunov_sample(scenario.gains, scenario.vehicle, state, scenario.wind,
                            scenario.reference, t);
        rec.vtilde_norm = state.attitude
                              .apply_inverse(state.velocity -
                                             scenario.reference.velocity(t))
                              .norm();
        rec.theta_tilde = lyap.theta_tilde;
        rec.lyapunov = lyap.value;
        rec.fp_norm = lyap.fp_norm;
        const Vec3 va_body = state.attitude.apply_inverse(
            state.velocity - scenario.wind.velocity(t));
        if (va_body.norm() >= 1e-12) {
            const auto angles = angles_from_airspeed(va_body);
            rec.alpha = angles.alpha;
            rec.beta = angles.beta;
        }

        if (options.observer) options.observer(rec);
        if (options.keep_records) {
            out.records.push_back(rec);
        } else {
            if (local.size() < 2) local.push_back(rec);
            else local.back() = rec;  // keep first and latest for the summary
        }
        end_time = t;

        if (i == steps) break;
        try {
            state = step(scenario.vehicle, state, scenario.wind, scenario.reference,
                         t, scenario.dt, rec.thrust, rec.omega,
                         scenario.disturbance_bias);
        } catch (const NonFiniteState& e) {
            status = RunStatus::non_finite;
            message = e.what();
            end_time = t + scenario.dt;
            break;
        }
    }

    if (options.keep_records) {
        out.summary = summarize(out.records, status, end_time, message);
    } else {
        out.summary = summarize(local, status, end_time, message);
        out.summary.lyapunov_violations = -1;  // unavailable without history
    }
    if (status != RunStatus::ok) {
        log_warn("scenario '" + scenario.name + "' ended early: " +
                 to_string(status) + " at t=" + std::to_string(end_time));
    }
    return out;
}

std::vector<RunLog> run_batch(std::span<const Scenario> scenarios, int parallelism) {
    if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
    std::vector<RunLog> results(scenarios.size());

    auto run_one = [&](std::size_t idx) {
        try {
            results[idx] = run_scenario(scenarios[idx]);
        } catch (const std::exception& e) {
            results[idx].summary.status = RunStatus::config_error;
            results[idx].summary.message = e.what();
        }
    };

    if (parallelism == 1 || scenarios.size() <= 1) {
        for (std::size_t i = 0; i < scenarios.size(); ++i) run_one(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    const int workers =
        std::min<long>(parallelism, static_cast<long>(scenarios.size()));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < scenarios.size();
                 i = next.fetch_add(1)) {
                run_one(i);
            }
        });
    }
    for (auto& th : pool) th.join();
    return results;
}

Rotation attitude_with_tilt(const Vec3& target_dir, double tilt, double azimuth,
                            double spin) {
    const double n = target_dir.norm();
    if (!(n > 0.0)) throw ConfigError("target direction must be nonzero");
    const Vec3 f = target_dir / n;

    Vec3 ref = std::abs(f.x) < 0.9 ? kE1 : kE2;
    Vec3 b1 = f.cross(ref);
    b1 = b1 / b1.norm();
    const Vec3 b2 = f.cross(b1);

    const Vec3 k = std::cos(tilt) * f +
                   std::sin(tilt) * (std::cos(azimuth) * b1 + std::sin(azimuth) * b2);
    Vec3 a = k.cross(b1);
    const double an = a.norm();
    if (an < 1e-9) {
        a = k.cross(b2);
        a = a / a.norm();
    } else {
        a = a / an;
    }
    const Vec3 b = a.cross(k);
    // Spin the transverse axes about k.
    const Vec3 c0 = std::cos(spin) * b + std::sin(spin) * a;
    const Vec3 c1 = std::cos(spin) * a - std::sin(spin) * b;
    Mat3 m;
    for (int r = 0; r < 3; ++r) {
        m(r, 0) = c0[r];
        m(r, 1) = c1[r];
        m(r, 2) = k[r];
    }
    return Rotation(m);
}

}  // namespace aerosym
