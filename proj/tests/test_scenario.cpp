#include "aerosym/scenario.hpp"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "aerosym/csv_log.hpp"
#include "aerosym/errors.hpp"
#include "aerosym/model_card.hpp"
#include "aerosym/scenario_io.hpp"

namespace aerosym {
namespace {

constexpr double kPi = 3.14159265358979323846;

Scenario base_scenario(double duration = 5.0) {
    Scenario s{
        "test",
        VehicleParams(1.0, 9.81, AeroModel::sin2(0.2, 0.43, 0.462)),
        WindModel::still(),
        ReferenceTrajectory::rest(),
        ControllerGains{},
        VehicleState{},
        1e-3,
        duration,
        Vec3{},
        0,
    };
    s.gains.k1 = 0.3;
    s.gains.k2 = 0.05;
    s.gains.k3 = 3.0;
    s.gains.eta = 2.0;
    return s;
}

TEST(RunScenario, HoverStaysAtFixedPoint) {
    Scenario s = base_scenario(10.0);
    s.name = "hover";
    const RunLog log = run_scenario(s);
    EXPECT_EQ(log.summary.status, RunStatus::ok);
    for (const auto& r : log.records) {
        EXPECT_LT(r.vtilde_norm, 1e-9);
        EXPECT_LT(r.theta_tilde, 1e-9);
    }
    // Golden hover summary: the equilibrium is exact.
    EXPECT_TRUE(log.summary.settled);
    EXPECT_EQ(log.summary.settling_time, 0.0);
    EXPECT_EQ(log.summary.rms_error_after_settling, 0.0);
    EXPECT_EQ(log.summary.lyapunov_violations, 0);
    EXPECT_EQ(log.summary.final_vtilde_norm, 0.0);
}

TEST(RunScenario, RecordCountMatchesDuration) {
    Scenario s = base_scenario(2.0);
    const RunLog log = run_scenario(s);
    EXPECT_EQ(log.records.size(), 2001u);
    EXPECT_DOUBLE_EQ(log.records.back().t, 2.0);
}

TEST(RunScenario, StepReferenceSettles) {
    Scenario s = base_scenario(25.0);
    ReferenceTrajectory::PolynomialRamp ramp;
    ramp.initial_velocity = {};
    ramp.final_velocity = {2.0, 0.0, 0.0};
    ramp.start_s = 1.0;
    ramp.end_s = 2.0;
    s.reference = ReferenceTrajectory(ramp);
    const RunLog log = run_scenario(s);
    EXPECT_EQ(log.summary.status, RunStatus::ok);
    EXPECT_TRUE(log.summary.settled);
    EXPECT_GT(log.summary.settling_time, 0.0);
    EXPECT_LT(log.summary.final_vtilde_norm, 1e-3);
    EXPECT_EQ(log.summary.lyapunov_violations, 0);
}

TEST(RunScenario, ConeSingularityIsFlaggedNotThrown) {
    Scenario s = base_scenario(1.0);
    s.initial_state.attitude = attitude_with_tilt(kE3, kPi, 0.0, 0.0);
    const RunLog log = run_scenario(s);
    EXPECT_EQ(log.summary.status, RunStatus::thrust_cone_singularity);
    EXPECT_TRUE(log.records.empty());
    EXPECT_FALSE(log.summary.message.empty());
}

TEST(RunScenario, IntegralActionRejectsConstantBias) {
    // Paired runs under a constant unmodeled force of 0.3 eta.
    Scenario s = base_scenario(60.0);
    s.gains.k1 = 0.5;
    s.gains.k3 = 2.0;
    s.disturbance_bias = 0.3 * s.gains.eta * Vec3{0.6, 0.0, 0.8};

    Scenario with = s;
    with.gains.integral_enabled = true;
    const RunLog on = run_scenario(with);
    const RunLog off = run_scenario(s);

    ASSERT_EQ(on.summary.status, RunStatus::ok);
    ASSERT_EQ(off.summary.status, RunStatus::ok);
    EXPECT_LT(on.summary.final_vtilde_norm, 1e-3);
    EXPECT_GT(off.summary.final_vtilde_norm, 1e-2);
}

TEST(RunScenario, DeterministicReruns) {
    Scenario s = base_scenario(2.0);
    s.initial_state.velocity = {1.0, -0.5, 0.2};
    s.initial_state.attitude = attitude_with_tilt(kE3, 0.9, 0.3, 0.1);
    const std::string a = run_log_csv(run_scenario(s));
    const std::string b = run_log_csv(run_scenario(s));
    EXPECT_EQ(a, b);
}

TEST(RunScenario, ObserverSeesEveryRecord) {
    Scenario s = base_scenario(1.0);
    RunOptions opt;
    opt.keep_records = false;
    long count = 0;
    opt.observer = [&](const RunRecord&) { ++count; };
    const RunLog log = run_scenario(s, opt);
    EXPECT_EQ(count, 1001);
    EXPECT_TRUE(log.records.empty());
    EXPECT_EQ(log.summary.status, RunStatus::ok);
}

TEST(RunBatch, SingleEqualsRunScenario) {
    Scenario s = base_scenario(1.5);
    s.initial_state.velocity = {0.5, 0.0, -0.2};
    const auto batch = run_batch(std::vector<Scenario>{s}, 1);
    ASSERT_EQ(batch.size(), 1u);
    EXPECT_EQ(run_log_csv(batch[0]), run_log_csv(run_scenario(s)));
}

TEST(RunBatch, ParallelismDoesNotChangeResults) {
    std::vector<Scenario> batch;
    for (int i = 0; i < 6; ++i) {
        Scenario s = base_scenario(1.0);
        s.name = "b" + std::to_string(i);
        s.initial_state.velocity = {0.3 * i, -0.1 * i, 0.05 * i};
        s.initial_state.attitude = attitude_with_tilt(kE3, 0.2 * i, 0.5, 0.0);
        batch.push_back(s);
    }
    const auto seq = run_batch(batch, 1);
    const auto par = run_batch(batch, 8);
    ASSERT_EQ(seq.size(), par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        EXPECT_EQ(run_log_csv(seq[i]), run_log_csv(par[i]));
    }
}

TEST(RunBatch, InvalidScenarioIsIsolated) {
    std::vector<Scenario> batch;
    batch.push_back(base_scenario(0.5));
    Scenario bad = base_scenario(0.5);
    bad.dt = 0.0;  // invalid
    batch.push_back(bad);
    batch.push_back(base_scenario(0.5));
    const auto logs = run_batch(batch, 2);
    EXPECT_EQ(logs[0].summary.status, RunStatus::ok);
    EXPECT_EQ(logs[1].summary.status, RunStatus::config_error);
    EXPECT_EQ(logs[2].summary.status, RunStatus::ok);
}

TEST(CsvLog, HeaderAndLyapunovReconstruction) {
    Scenario s = base_scenario(0.5);
    s.initial_state.velocity = {1.0, 0.3, -0.4};
    s.initial_state.attitude = attitude_with_tilt(kE3, 0.7, -0.2, 0.0);
    const RunLog log = run_scenario(s);
    const std::string csv = run_log_csv(log);

    std::istringstream in(csv);
    std::string line;
    ASSERT_TRUE(std::getline(in, line));
    EXPECT_EQ(line, std::string(kRunLogCsvHeader));

    // Every row: V recomputed from (vtilde_norm, theta_tilde) matches V.
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        std::vector<double> cols;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cols.push_back(std::stod(cell));
        ASSERT_EQ(cols.size(), 26u);
        const double vtilde = cols[22];
        const double theta = cols[23];
        const double v_logged = cols[24];
        const double v_expect = 0.5 * vtilde * vtilde +
                                (1.0 - std::cos(theta)) / (s.gains.k2 * s.vehicle.mass);
        EXPECT_NEAR(v_logged, v_expect, 1e-12 * (1.0 + v_logged));
        ++rows;
    }
    EXPECT_EQ(rows, log.records.size());
}

TEST(CsvLog, GnuplotScriptReferencesCsv) {
    const std::string script = run_log_gnuplot("run_log.csv");
    EXPECT_NE(script.find("run_log.csv"), std::string::npos);
    EXPECT_NE(script.find("multiplot"), std::string::npos);
}

TEST(ScenarioIo, ParsesFullDocument) {
    const char* doc = R"json({
      "name": "wind_run",
      "vehicle": {
        "mass_kg": 1.5,
        "gravity_mps2": 9.81,
        "model": {"family": "sin2", "k_a": 0.2,
                  "params": {"c0": 0.43, "c1": 0.462}}
      },
      "wind": {"type": "sinusoidal", "mean_mps": [1,0,0],
               "amplitude_mps": [0.5,0,0], "frequency_hz": 0.2, "phase_rad": 0},
      "reference": {"type": "constant_velocity", "velocity_mps": [2,0,0]},
      "gains": {"k1": 0.3, "k2": 0.05, "k3": 2.0, "eta_n": 1.5,
                "integral_enabled": true,
                "thrust_limits_n": {"min": -5.0, "max": 50.0}},
      "initial_state": {
        "position_m": [0,0,-10],
        "velocity_mps": [2,0,0],
        "attitude": {"type": "rotation_vector_rad", "value": [0.1, 0, 0]}
      },
      "dt_s": 0.001,
      "duration_s": 3.0,
      "disturbance_bias_n": [0.05, 0, 0],
      "seed": 42
    })json";
    std::istringstream in(doc);
    const Scenario s = scenario_from_json(in);
    EXPECT_EQ(s.name, "wind_run");
    EXPECT_DOUBLE_EQ(s.vehicle.mass, 1.5);
    EXPECT_TRUE(s.gains.integral_enabled);
    ASSERT_TRUE(s.gains.thrust_limits.has_value());
    EXPECT_DOUBLE_EQ(s.gains.thrust_limits->second, 50.0);
    EXPECT_DOUBLE_EQ(s.duration, 3.0);
    EXPECT_EQ(s.seed, 42u);
    EXPECT_NEAR(s.initial_state.position.z, -10.0, 1e-15);
    const RunLog log = run_scenario(s);
    EXPECT_EQ(log.summary.status, RunStatus::ok);
}

TEST(ScenarioIo, RejectsBadDocuments) {
    {
        std::istringstream in("not json");
        EXPECT_THROW(scenario_from_json(in), ConfigError);
    }
    {
        // missing gains
        std::istringstream in(R"({"vehicle": {"mass_kg": 1, "gravity_mps2": 9.81,
            "model": {"family":"sin2","k_a":1,"params":{"c0":1,"c1":0}}},
            "dt_s": 0.001, "duration_s": 1})");
        EXPECT_THROW(scenario_from_json(in), ConfigError);
    }
    {
        // non-orthonormal attitude matrix
        std::istringstream in(R"({"vehicle": {"mass_kg": 1, "gravity_mps2": 9.81,
            "model": {"family":"sin2","k_a":1,"params":{"c0":1,"c1":0}}},
            "gains": {"k1":1,"k2":1,"k3":1},
            "initial_state": {"attitude": {"type":"matrix",
              "rows":[[2,0,0],[0,1,0],[0,0,1]]}},
            "dt_s": 0.001, "duration_s": 1})");
        EXPECT_THROW(scenario_from_json(in), ConfigError);
    }
}

TEST(ScenarioIo, SummaryJsonCarriesMetrics) {
    Scenario s = base_scenario(1.0);
    const RunLog log = run_scenario(s);
    const std::string j = summary_to_json(s, log.summary);
    EXPECT_NE(j.find("\"status\": \"ok\""), std::string::npos);
    EXPECT_NE(j.find("final_vtilde_norm_mps"), std::string::npos);
    EXPECT_NE(j.find("lyapunov_violations"), std::string::npos);
}

TEST(ModelCard, RoundTripSin2) {
    const AeroModel m =
        AeroModel::sin2(0.2, 0.43, 0.462, SourceConditions{7.96e6, 6.0});
    const std::string card = model_to_card(m, FitResiduals{0.01, 0.02});
    std::istringstream in(card);
    const AeroModel back = model_from_card(in);
    EXPECT_DOUBLE_EQ(back.ka(), 0.2);
    const auto& s = std::get<Sin2Coefficients>(back.family());
    EXPECT_DOUBLE_EQ(s.c0, 0.43);
    EXPECT_DOUBLE_EQ(s.c1, 0.462);
    ASSERT_TRUE(back.source().has_value());
    EXPECT_DOUBLE_EQ(back.source()->mach, 6.0);
    ASSERT_TRUE(back.equivalent_cd0().has_value());
    EXPECT_NEAR(*back.equivalent_cd0(), 1.354, 1e-12);
}

TEST(ModelCard, RoundTripTabulatedWithoutEquivalency) {
    TabulatedCoefficients t;
    t.alpha_rad = {0.2, 0.6, 1.0};
    t.cd = {0.1, 0.4, 0.2};
    t.cl = {0.0, 0.3, 0.5};
    const AeroModel m = AeroModel::tabulated(1.1, t);
    EXPECT_FALSE(m.equivalent_cd0().has_value());
    const std::string card = model_to_card(m);
    EXPECT_NE(card.find("\"cd0\": null"), std::string::npos);
    std::istringstream in(card);
    const AeroModel back = model_from_card(in);
    EXPECT_FALSE(back.equivalent_cd0().has_value());
    EXPECT_NEAR(back.cd(0.4), m.cd(0.4), 1e-12);
}

TEST(ModelCard, RejectsMalformed) {
    {
        std::istringstream in("{}");
        EXPECT_THROW(model_from_card(in), ConfigError);
    }
    {
        std::istringstream in(R"({"family":"sin2","k_a":1,"params":{"c0":1}})");
        EXPECT_THROW(model_from_card(in), ConfigError);
    }
    {
        std::istringstream in(R"({"family":"nope","k_a":1,"params":{}})");
        EXPECT_THROW(model_from_card(in), ConfigError);
    }
}

TEST(AttitudeWithTilt, ProducesRequestedAngle) {
    const Vec3 dir = Vec3{0.3, -0.5, 1.0} / Vec3{0.3, -0.5, 1.0}.norm();
    for (const double tilt : {0.0, 0.4, 1.5, 3.0}) {
        const Rotation r = attitude_with_tilt(dir, tilt, 0.8, 1.9);
        const double c = r.column(2).dot(dir);
        EXPECT_NEAR(std::acos(std::clamp(c, -1.0, 1.0)), tilt, 1e-12);
        EXPECT_LT(r.orthonormality_defect(), 1e-12);
    }
}

}  // namespace
}  // namespace aerosym
