// Least-squares identification of coefficient-family parameters from
// (alpha, C_D, C_L) samples, e.g. digitized wind-tunnel curves.
#pragma once

#include <istream>
#include <span>
#include <vector>

#include "aerosym/aero_model.hpp"

namespace aerosym {

struct CoefficientSample {
    double alpha_rad = 0.0;
    double cd = 0.0;
    double cl = 0.0;
};

struct Sin2Fit {
    double c0 = 0.0;
    double c1 = 0.0;
    double cd_rms = 0.0;
    double cl_rms = 0.0;
};

/**
 * @brief Joint linear fit of (c0, c1): C_D regressors (1, 2 sin^2 a), C_L
 *        regressor sin(2a), with c1 shared between both residual blocks.
 *
 * Closed-form 2x2 normal equations; SingularFit if their condition number
 * exceeds 1e12. Weights default to 1.
 */
Sin2Fit fit_sin2_family(std::span<const CoefficientSample> samples,
                        std::span<const double> weights = {});

struct TanFit {
    double cbar0 = 0.0;
    double cbar1 = 0.0;
    double cd_rms = 0.0;
    double cl_rms = 0.0;
};

/**
 * @brief Fit C_D = cbar0 (weighted mean) and C_L = cbar1 tan(a) by least
 *        squares, restricted to pre-stall angles.
 *
 * DomainError if any sample has alpha >= alpha_max or alpha_max >= pi/2.
 */
TanFit fit_tan_family(std::span<const CoefficientSample> samples,
                      double alpha_max_rad,
                      std::span<const double> weights = {});

/// Parse a coefficient-sample CSV with header `alpha_deg,cd,cl` (alpha in
/// degrees, converted to radians on read). Throws ConfigError on malformed
/// input.
std::vector<CoefficientSample> read_samples_csv(std::istream& in);

}  // namespace aerosym
