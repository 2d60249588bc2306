// aerosym command-line tool: scenario simulation, coefficient fitting,
// equivalency checks and Monte-Carlo convergence sweeps.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.
// Failures also emit a machine-readable JSON object on stderr.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "aerosym/csv_log.hpp"
#include "aerosym/errors.hpp"
#include "aerosym/fitting.hpp"
#include "aerosym/log.hpp"
#include "aerosym/model_card.hpp"
#include "aerosym/scenario.hpp"
#include "aerosym/scenario_io.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

using Json = nlohmann::ordered_json;

void emit_error(const std::string& type, const std::string& message) {
    Json j;
    j["error"] = {{"type", type}, {"message", message}};
    std::cerr << j.dump() << std::endl;
}

// Portable uniform in [0, 1) from the raw generator stream; keeps sweep
// draws identical across standard libraries.
double uniform01(std::mt19937_64& rng) {
    return std::ldexp(static_cast<double>(rng() >> 11), -53);
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir,
                 bool write_csv) {
    const aerosym::Scenario scenario = aerosym::scenario_from_json_file(scenario_path);
    const aerosym::RunLog log = aerosym::run_scenario(scenario);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path base = std::filesystem::path(out_dir) / scenario.name;

    const std::string summary = aerosym::summary_to_json(scenario, log.summary);
    std::ofstream sj(base.string() + "_summary.json");
    sj << summary << '\n';
    std::cout << summary << std::endl;

    if (write_csv) {
        const std::string csv_name = scenario.name + "_log.csv";
        std::ofstream cf(base.string() + "_log.csv", std::ios::binary);
        aerosym::write_run_log_csv(cf, log);
        std::ofstream gf(base.string() + "_plot.gp");
        gf << aerosym::run_log_gnuplot(csv_name);
    }
    if (log.summary.status == aerosym::RunStatus::non_finite) {
        throw aerosym::NumericalDivergence(log.summary.message);
    }
    return 0;
}

int cmd_fit(const std::string& family, const std::string& samples_path,
            double alpha_max_deg, double ka, double re, double mach,
            const std::string& out_path) {
    std::ifstream in(samples_path);
    if (!in) throw aerosym::ConfigError("cannot open samples '" + samples_path + "'");
    const auto samples = aerosym::read_samples_csv(in);

    std::optional<aerosym::SourceConditions> source;
    if (re > 0.0 || mach > 0.0) source = aerosym::SourceConditions{re, mach};

    std::optional<aerosym::AeroModel> model;
    aerosym::FitResiduals residuals;
    if (family == "sin2") {
        const auto fit = aerosym::fit_sin2_family(samples);
        model = aerosym::AeroModel::sin2(ka, fit.c0, fit.c1, source);
        residuals = {fit.cd_rms, fit.cl_rms};
        std::cout << "c0 = " << fit.c0 << "\nc1 = " << fit.c1
                  << "\ncd_rms = " << fit.cd_rms << "\ncl_rms = " << fit.cl_rms
                  << std::endl;
    } else {
        const auto fit =
            aerosym::fit_tan_family(samples, alpha_max_deg * kPi / 180.0);
        model = aerosym::AeroModel::tan_family(ka, fit.cbar0, fit.cbar1, source);
        residuals = {fit.cd_rms, fit.cl_rms};
        std::cout << "cbar0 = " << fit.cbar0 << "\ncbar1 = " << fit.cbar1
                  << "\ncd_rms = " << fit.cd_rms << "\ncl_rms = " << fit.cl_rms
                  << std::endl;
    }
    std::ofstream out(out_path);
    if (!out) throw aerosym::ConfigError("cannot write model card '" + out_path + "'");
    out << aerosym::model_to_card(*model, residuals) << '\n';
    aerosym::log_info("model card written to " + out_path);
    return 0;
}

int cmd_check_equivalency(const std::string& card_path, int grid_n) {
    const aerosym::AeroModel model = aerosym::model_from_card_file(card_path);
    std::vector<double> grid(static_cast<std::size_t>(grid_n));
    const double lo = 1.0 * kPi / 180.0;
    const double hi = 179.0 * kPi / 180.0;
    for (int i = 0; i < grid_n; ++i) {
        grid[static_cast<std::size_t>(i)] =
            grid_n == 1 ? lo : lo + (hi - lo) * i / (grid_n - 1);
    }
    const auto d = aerosym::equivalency_defect(model, grid);
    Json j;
    j["grid_points"] = grid_n;
    j["defect"] = d.defect;
    j["cd0"] = d.cd0;
    std::cout << j.dump(2) << std::endl;
    return 0;
}

int cmd_sweep(const std::string& scenario_path, int ic_samples, double theta_max_deg,
              std::uint64_t seed, double v_max, int parallelism) {
    const aerosym::Scenario base = aerosym::scenario_from_json_file(scenario_path);
    const double theta_max = theta_max_deg * kPi / 180.0;

    std::mt19937_64 rng(seed);
    std::vector<aerosym::Scenario> batch;
    batch.reserve(static_cast<std::size_t>(ic_samples));
    for (int i = 0; i < ic_samples; ++i) {
        aerosym::Scenario s = base;
        s.name = base.name + "_ic" + std::to_string(i);
        s.seed = seed + static_cast<std::uint64_t>(i);

        // Draw order: tilt, azimuth, spin, direction (z, phi), speed.
        const double tilt = uniform01(rng) * theta_max;
        const double azimuth = (2.0 * uniform01(rng) - 1.0) * kPi;
        const double spin = (2.0 * uniform01(rng) - 1.0) * kPi;
        const double z = 2.0 * uniform01(rng) - 1.0;
        const double phi = (2.0 * uniform01(rng) - 1.0) * kPi;
        const double speed = v_max * std::cbrt(uniform01(rng));
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const aerosym::Vec3 vtilde{speed * r * std::cos(phi),
                                   speed * r * std::sin(phi), speed * z};

        s.initial_state.velocity = base.reference.velocity(0.0) + vtilde;
        const aerosym::Vec3 xa_dot =
            s.initial_state.velocity - base.wind.velocity(0.0);
        const double cd0 = base.vehicle.aero.equivalent_cd0().value_or(0.0);
        const aerosym::Vec3 fp =
            base.vehicle.mass * base.vehicle.gravity * aerosym::kE3 -
            base.vehicle.aero.ka() * cd0 * xa_dot.norm() * xa_dot -
            base.vehicle.mass * base.reference.acceleration(0.0);
        s.initial_state.attitude = aerosym::attitude_with_tilt(fp, tilt, azimuth, spin);
        batch.push_back(std::move(s));
    }

    const auto logs = aerosym::run_batch(batch, parallelism);
    int converged = 0;
    int flagged = 0;
    for (const auto& log : logs) {
        if (log.summary.status != aerosym::RunStatus::ok) {
            ++flagged;
            continue;
        }
        if (log.summary.final_vtilde_norm < 1e-3 && log.summary.final_theta_tilde < 0.01) {
            ++converged;
        }
    }
    Json j;
    j["samples"] = ic_samples;
    j["converged"] = converged;
    j["flagged"] = flagged;
    j["fraction"] = ic_samples > 0 ? static_cast<double>(converged) / ic_samples : 0.0;
    std::cout << j.dump(2) << std::endl;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and coefficient tooling for thrust-propelled "
                 "symmetric aerial vehicles"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = ".", samples_path, card_path;
    std::string family, fit_out = "model_card.json";
    bool write_csv = false;
    double alpha_max_deg = 85.0, ka = 1.0, re = 0.0, mach = 0.0;
    int grid_n = 179, ic_samples = 100;
    double theta_max_deg = 175.0, v_max = 5.0;
    std::uint64_t seed = 0;
    int parallelism = static_cast<int>(
        std::max(1u, std::thread::hardware_concurrency()));

    auto* sim = app.add_subcommand("simulate", "Run a scenario and write its log");
    sim->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    sim->add_option("--out", out_dir, "Output directory");
    sim->add_flag("--csv", write_csv, "Also write the per-step CSV log and plot script");

    auto* fit = app.add_subcommand("fit", "Fit a coefficient family to samples");
    fit->add_option("--family", family, "Coefficient family")
        ->required()
        ->check(CLI::IsMember({"sin2", "tan"}));
    fit->add_option("samples", samples_path, "Samples CSV (alpha_deg,cd,cl)")->required();
    fit->add_option("--alpha-max", alpha_max_deg, "Pre-stall cutoff for tan fits [deg]");
    fit->add_option("--ka", ka, "Force scale k_a = rho*Sigma/2 [kg/m]");
    fit->add_option("--re", re, "Source Reynolds number (metadata)");
    fit->add_option("--mach", mach, "Source Mach number (metadata)");
    fit->add_option("--out", fit_out, "Model card output path");

    auto* chk = app.add_subcommand("check-equivalency",
                                   "Evaluate the constant-C_D0 defect of a model card");
    chk->add_option("card", card_path, "Model card JSON")->required();
    chk->add_option("--grid", grid_n, "Grid points on [1, 179] deg")
        ->check(CLI::PositiveNumber);

    auto* sweep = app.add_subcommand(
        "sweep", "Monte-Carlo convergence study over random initial conditions");
    sweep->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    sweep->add_option("--ic-samples", ic_samples, "Number of initial conditions")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--theta-max", theta_max_deg,
                      "Largest initial thrust-direction error [deg]");
    sweep->add_option("--seed", seed, "Draw seed");
    sweep->add_option("--v-max", v_max, "Largest initial velocity error [m/s]");
    sweep->add_option("--parallelism", parallelism, "Worker threads")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(scenario_path, out_dir, write_csv);
        if (fit->parsed()) {
            return cmd_fit(family, samples_path, alpha_max_deg, ka, re, mach, fit_out);
        }
        if (chk->parsed()) return cmd_check_equivalency(card_path, grid_n);
        if (sweep->parsed()) {
            return cmd_sweep(scenario_path, ic_samples, theta_max_deg, seed, v_max,
                             parallelism);
        }
    } catch (const aerosym::ConfigError& e) {
        emit_error("config", e.what());
        return 1;
    } catch (const aerosym::NumericalDivergence& e) {
        emit_error("numerical", e.what());
        return 2;
    } catch (const aerosym::NonFiniteState& e) {
        emit_error("numerical", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("config", e.what());
        return 1;
    }
    return 0;
}
