// JSON model cards: the on-disk form of a fitted aerodynamic model.
//
// Card layout:
//   {
//     "family": "sin2" | "tan" | "tabulated",
//     "k_a": <kg/m>,
//     "params": {"c0","c1"} | {"cbar0","cbar1"}
//             | {"alpha_deg": [...], "cd": [...], "cl": [...],
//                "lift_over_sine": [...] (optional)},
//     "cd0": <number|null>,
//     "source": {"re": ..., "mach": ...}   (optional)
//     "residuals": {"cd_rms": ..., "cl_rms": ...}   (optional)
//   }
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "aerosym/aero_model.hpp"

namespace aerosym {

struct FitResiduals {
    double cd_rms = 0.0;
    double cl_rms = 0.0;
};

AeroModel model_from_card(std::istream& in);
AeroModel model_from_card_file(const std::string& path);

std::string model_to_card(const AeroModel& model,
                          std::optional<FitResiduals> residuals = std::nullopt);

}  // namespace aerosym
