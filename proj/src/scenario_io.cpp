#include "aerosym/scenario_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aerosym/errors.hpp"
#include "aerosym/model_card.hpp"
#include "json.hpp"

namespace aerosym {

namespace {

using Json = nlohmann::ordered_json;

Vec3 vec3_from(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
        !j[2].is_number()) {
        throw ConfigError("scenario: '" + where + "' must be a 3-element number array");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

double number_at(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw ConfigError("scenario: missing numeric '" + where + "." + key + "'");
    }
    return j[key].get<double>();
}

WindModel wind_from(const Json& j) {
    if (j.is_null()) return WindModel::still();
    const std::string type = j.value("type", "");
    if (type == "constant") {
        return WindModel::constant(vec3_from(j.at("velocity_mps"), "wind.velocity_mps"));
    }
    if (type == "sinusoidal") {
        WindModel::Sinusoidal s;
        s.mean = vec3_from(j.at("mean_mps"), "wind.mean_mps");
        s.amplitude = vec3_from(j.at("amplitude_mps"), "wind.amplitude_mps");
        s.frequency_hz = number_at(j, "frequency_hz", "wind");
        s.phase_rad = j.value("phase_rad", 0.0);
        return WindModel(s);
    }
    throw ConfigError("scenario: wind.type must be 'constant' or 'sinusoidal'");
}

ReferenceTrajectory reference_from(const Json& j) {
    if (j.is_null()) return ReferenceTrajectory::rest();
    const std::string type = j.value("type", "");
    if (type == "constant_velocity") {
        return ReferenceTrajectory::constant_velocity(
            vec3_from(j.at("velocity_mps"), "reference.velocity_mps"));
    }
    if (type == "polynomial_ramp") {
        ReferenceTrajectory::PolynomialRamp r;
        r.initial_velocity =
            vec3_from(j.at("initial_velocity_mps"), "reference.initial_velocity_mps");
        r.final_velocity =
            vec3_from(j.at("final_velocity_mps"), "reference.final_velocity_mps");
        r.start_s = number_at(j, "start_s", "reference");
        r.end_s = number_at(j, "end_s", "reference");
        return ReferenceTrajectory(r);
    }
    if (type == "circle") {
        ReferenceTrajectory::Circle c;
        c.radius_m = number_at(j, "radius_m", "reference");
        c.angular_rate_radps = number_at(j, "angular_rate_radps", "reference");
        c.phase_rad = j.value("phase_rad", 0.0);
        return ReferenceTrajectory(c);
    }
    throw ConfigError(
        "scenario: reference.type must be 'constant_velocity', 'polynomial_ramp' or 'circle'");
}

ControllerGains gains_from(const Json& j) {
    ControllerGains g;
    g.k1 = number_at(j, "k1", "gains");
    g.k2 = number_at(j, "k2", "gains");
    g.k3 = number_at(j, "k3", "gains");
    g.eta = j.value("eta_n", 1.0);
    g.integral_enabled = j.value("integral_enabled", false);
    if (j.contains("yaw")) {
        const std::string policy = j["yaw"].value("policy", "zero");
        if (policy == "heading") {
            g.yaw.mode = YawPolicy::Mode::heading;
            g.yaw.k_yaw = j["yaw"].value("k_yaw", 0.0);
        } else if (policy != "zero") {
            throw ConfigError("scenario: gains.yaw.policy must be 'zero' or 'heading'");
        }
    }
    if (j.contains("thrust_limits_n")) {
        g.thrust_limits = {number_at(j["thrust_limits_n"], "min", "thrust_limits_n"),
                           number_at(j["thrust_limits_n"], "max", "thrust_limits_n")};
    }
    g.validate();
    return g;
}

Rotation attitude_from(const Json& j) {
    if (j.is_null()) return Rotation::identity();
    const std::string type = j.value("type", "identity");
    if (type == "identity") return Rotation::identity();
    if (type == "rotation_vector_rad") {
        return exp_so3(vec3_from(j.at("value"), "initial_state.attitude.value"));
    }
    if (type == "matrix") {
        const Json& rows = j.at("rows");
        if (!rows.is_array() || rows.size() != 3) {
            throw ConfigError("scenario: attitude.rows must have 3 rows");
        }
        Mat3 m;
        for (int r = 0; r < 3; ++r) {
            const Vec3 row = vec3_from(rows[r], "initial_state.attitude.rows");
            m(r, 0) = row.x;
            m(r, 1) = row.y;
            m(r, 2) = row.z;
        }
        return Rotation(m);  // validates SO(3)
    }
    throw ConfigError(
        "scenario: attitude.type must be 'identity', 'rotation_vector_rad' or 'matrix'");
}

Scenario scenario_from_parsed(const Json& j, const std::string& base_dir) {
    if (!j.contains("vehicle") || !j["vehicle"].is_object()) {
        throw ConfigError("scenario: missing 'vehicle' object");
    }
    const Json& vj = j["vehicle"];
    AeroModel aero = [&]() {
        if (vj.contains("model") && vj["model"].is_object()) {
            std::istringstream ss(vj["model"].dump());
            return model_from_card(ss);
        }
        if (vj.contains("model_card") && vj["model_card"].is_string()) {
            const std::filesystem::path p(vj["model_card"].get<std::string>());
            const auto resolved = p.is_absolute() ? p : std::filesystem::path(base_dir) / p;
            return model_from_card_file(resolved.string());
        }
        throw ConfigError("scenario: vehicle needs 'model' (inline card) or 'model_card' (path)");
    }();

    if (!j.contains("gains") || !j["gains"].is_object()) {
        throw ConfigError("scenario: missing 'gains' object");
    }
    Scenario s{
        j.value("name", "scenario"),
        VehicleParams(number_at(vj, "mass_kg", "vehicle"),
                      number_at(vj, "gravity_mps2", "vehicle"), std::move(aero)),
        wind_from(j.contains("wind") ? j["wind"] : Json(nullptr)),
        reference_from(j.contains("reference") ? j["reference"] : Json(nullptr)),
        gains_from(j["gains"]),
        VehicleState{},
        number_at(j, "dt_s", "scenario"),
        number_at(j, "duration_s", "scenario"),
        Vec3{},
        j.value("seed", std::uint64_t{0}),
    };

    if (j.contains("initial_state")) {
        const Json& st = j["initial_state"];
        if (st.contains("position_m")) {
            s.initial_state.position = vec3_from(st["position_m"], "initial_state.position_m");
        }
        if (st.contains("velocity_mps")) {
            s.initial_state.velocity =
                vec3_from(st["velocity_mps"], "initial_state.velocity_mps");
        }
        s.initial_state.attitude =
            attitude_from(st.contains("attitude") ? st["attitude"] : Json(nullptr));
    }
    if (j.contains("disturbance_bias_n")) {
        s.disturbance_bias = vec3_from(j["disturbance_bias_n"], "disturbance_bias_n");
    }
    s.validate();
    return s;
}

}  // namespace

Scenario scenario_from_json(std::istream& in, const std::string& base_dir) {
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
    }
    try {
        return scenario_from_parsed(j, base_dir);
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
}

Scenario scenario_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario '" + path + "'");
    return scenario_from_json(in, std::filesystem::path(path).parent_path().string());
}

std::string summary_to_json(const Scenario& scenario, const RunSummary& summary) {
    Json j;
    j["scenario"] = scenario.name;
    j["status"] = to_string(summary.status);
    j["end_time_s"] = summary.end_time;
    j["settled"] = summary.settled;
    if (summary.settled) {
        j["settling_time_s"] = summary.settling_time;
        j["rms_error_after_settling_mps"] = summary.rms_error_after_settling;
    } else {
        j["settling_time_s"] = nullptr;
        j["rms_error_after_settling_mps"] = nullptr;
    }
    j["max_theta_tilde_rad"] = summary.max_theta_tilde;
    j["lyapunov_violations"] = summary.lyapunov_violations;
    j["final_vtilde_norm_mps"] = summary.final_vtilde_norm;
    j["final_theta_tilde_rad"] = summary.final_theta_tilde;
    if (!summary.message.empty()) j["message"] = summary.message;
    return j.dump(2);
}

}  // namespace aerosym
