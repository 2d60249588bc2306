#include "aerosym/model_card.hpp"

#include <cmath>
#include <fstream>
#include <istream>

#include "aerosym/errors.hpp"
#include "json.hpp"

namespace aerosym {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Json = nlohmann::ordered_json;

double require_number(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw ConfigError(std::string("model card: missing numeric field '") + key + "'");
    }
    return j[key].get<double>();
}

std::vector<double> require_array(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) {
        throw ConfigError(std::string("model card: missing array field '") + key + "'");
    }
    return j[key].get<std::vector<double>>();
}

}  // namespace

AeroModel model_from_card(std::istream& in) {
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("model card: invalid JSON: ") + e.what());
    }
    const std::string family = j.value("family", "");
    const double ka = require_number(j, "k_a");
    std::optional<SourceConditions> source;
    if (j.contains("source") && j["source"].is_object()) {
        source = SourceConditions{j["source"].value("re", 0.0),
                                  j["source"].value("mach", 0.0)};
    }
    if (!j.contains("params") || !j["params"].is_object()) {
        throw ConfigError("model card: missing 'params' object");
    }
    const Json& p = j["params"];

    if (family == "sin2") {
        return AeroModel::sin2(ka, require_number(p, "c0"), require_number(p, "c1"),
                               source);
    }
    if (family == "tan") {
        return AeroModel::tan_family(ka, require_number(p, "cbar0"),
                                     require_number(p, "cbar1"), source);
    }
    if (family == "tabulated") {
        TabulatedCoefficients table;
        for (double deg : require_array(p, "alpha_deg")) {
            table.alpha_rad.push_back(deg * kPi / 180.0);
        }
        table.cd = require_array(p, "cd");
        table.cl = require_array(p, "cl");
        if (p.contains("lift_over_sine")) {
            table.lift_over_sine = require_array(p, "lift_over_sine");
        }
        return AeroModel::tabulated(ka, std::move(table), source);
    }
    throw ConfigError("model card: family must be 'sin2', 'tan' or 'tabulated'");
}

AeroModel model_from_card_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open model card '" + path + "'");
    return model_from_card(in);
}

std::string model_to_card(const AeroModel& model,
                          std::optional<FitResiduals> residuals) {
    Json j;
    Json params;
    if (const auto* s = std::get_if<Sin2Coefficients>(&model.family())) {
        j["family"] = "sin2";
        params["c0"] = s->c0;
        params["c1"] = s->c1;
    } else if (const auto* t = std::get_if<TanCoefficients>(&model.family())) {
        j["family"] = "tan";
        params["cbar0"] = t->cbar0;
        params["cbar1"] = t->cbar1;
    } else {
        const auto& tab = std::get<TabulatedCoefficients>(model.family());
        j["family"] = "tabulated";
        Json deg = Json::array();
        for (double a : tab.alpha_rad) deg.push_back(a * 180.0 / kPi);
        params["alpha_deg"] = deg;
        params["cd"] = tab.cd;
        params["cl"] = tab.cl;
        if (tab.lift_over_sine) params["lift_over_sine"] = *tab.lift_over_sine;
    }
    j["k_a"] = model.ka();
    j["params"] = params;
    if (model.equivalent_cd0()) {
        j["cd0"] = *model.equivalent_cd0();
    } else {
        j["cd0"] = nullptr;
    }
    if (model.source()) {
        j["source"] = {{"re", model.source()->reynolds},
                       {"mach", model.source()->mach}};
    }
    if (residuals) {
        j["residuals"] = {{"cd_rms", residuals->cd_rms},
                          {"cl_rms", residuals->cl_rms}};
    }
    return j.dump(2);
}

}  // namespace aerosym
