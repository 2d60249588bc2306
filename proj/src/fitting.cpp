#include "aerosym/fitting.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "aerosym/errors.hpp"

namespace aerosym {

namespace {

constexpr double kPi = 3.14159265358979323846;

double weight_at(std::span<const double> weights, std::size_t i) {
    return weights.empty() ? 1.0 : weights[i];
}

void check_weights(std::span<const CoefficientSample> samples,
                   std::span<const double> weights) {
    if (!weights.empty() && weights.size() != samples.size()) {
        throw ConfigError("weights length does not match samples");
    }
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ConfigError("weights must be finite and non-negative");
        }
    }
}

// Condition number of a symmetric positive 2x2 matrix from its eigenvalues.
double condition_2x2(double a, double b, double d) {
    const double tr = a + d;
    const double disc = std::sqrt(std::max(0.0, (a - d) * (a - d) + 4.0 * b * b));
    const double lmax = 0.5 * (tr + disc);
    const double lmin = 0.5 * (tr - disc);
    if (lmin <= 0.0) return std::numeric_limits<double>::infinity();
    return lmax / lmin;
}

}  // namespace

Sin2Fit fit_sin2_family(std::span<const CoefficientSample> samples,
                        std::span<const double> weights) {
    if (samples.size() < 2) {
        throw ConfigError("sin2 fit needs at least two samples");
    }
    check_weights(samples, weights);

    // Normal equations for min over (c0, c1) of
    //   sum w [(c0 + 2 c1 s^2 - cd)^2 + (c1 sin(2a) - cl)^2].
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double w = weight_at(weights, i);
        const double s2 = std::sin(samples[i].alpha_rad) * std::sin(samples[i].alpha_rad);
        const double s2a = std::sin(2.0 * samples[i].alpha_rad);
        a11 += w;
        a12 += w * 2.0 * s2;
        a22 += w * (4.0 * s2 * s2 + s2a * s2a);
        b1 += w * samples[i].cd;
        b2 += w * (2.0 * s2 * samples[i].cd + s2a * samples[i].cl);
    }
    const double det = a11 * a22 - a12 * a12;
    if (det <= 0.0 || condition_2x2(a11, a12, a22) > 1e12) {
        throw SingularFit("sin2 normal equations are rank-deficient");
    }
    Sin2Fit fit;
    fit.c0 = (a22 * b1 - a12 * b2) / det;
    fit.c1 = (a11 * b2 - a12 * b1) / det;

    double wsum = 0, rcd = 0, rcl = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double w = weight_at(weights, i);
        const double s2 = std::sin(samples[i].alpha_rad) * std::sin(samples[i].alpha_rad);
        const double ecd = fit.c0 + 2.0 * fit.c1 * s2 - samples[i].cd;
        const double ecl = fit.c1 * std::sin(2.0 * samples[i].alpha_rad) - samples[i].cl;
        wsum += w;
        rcd += w * ecd * ecd;
        rcl += w * ecl * ecl;
    }
    if (wsum > 0.0) {
        fit.cd_rms = std::sqrt(rcd / wsum);
        fit.cl_rms = std::sqrt(rcl / wsum);
    }
    return fit;
}

TanFit fit_tan_family(std::span<const CoefficientSample> samples,
                      double alpha_max_rad, std::span<const double> weights) {
    if (samples.empty()) throw ConfigError("tan fit needs at least one sample");
    if (!(alpha_max_rad > 0.0) || alpha_max_rad >= kPi / 2.0) {
        throw DomainError("alpha_max must lie in (0, pi/2)");
    }
    check_weights(samples, weights);
    for (const auto& s : samples) {
        if (s.alpha_rad >= alpha_max_rad) {
            throw DomainError("sample alpha at or beyond alpha_max (pre-stall fit)");
        }
    }

    double wsum = 0, cdsum = 0, t2sum = 0, tclsum = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double w = weight_at(weights, i);
        const double t = std::tan(samples[i].alpha_rad);
        wsum += w;
        cdsum += w * samples[i].cd;
        t2sum += w * t * t;
        tclsum += w * t * samples[i].cl;
    }
    if (wsum <= 0.0) throw SingularFit("tan fit has zero total weight");

    TanFit fit;
    fit.cbar0 = cdsum / wsum;
    if (t2sum > 0.0) {
        fit.cbar1 = tclsum / t2sum;
    } else {
        // All samples at alpha = 0 carry no lift information.
        bool any_cl = false;
        for (const auto& s : samples) any_cl = any_cl || s.cl != 0.0;
        if (any_cl) throw SingularFit("tan fit cannot identify cbar1 from alpha = 0 only");
        fit.cbar1 = 0.0;
    }

    double rcd = 0, rcl = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double w = weight_at(weights, i);
        const double ecd = fit.cbar0 - samples[i].cd;
        const double ecl = fit.cbar1 * std::tan(samples[i].alpha_rad) - samples[i].cl;
        rcd += w * ecd * ecd;
        rcl += w * ecl * ecl;
    }
    fit.cd_rms = std::sqrt(rcd / wsum);
    fit.cl_rms = std::sqrt(rcl / wsum);
    return fit;
}

std::vector<CoefficientSample> read_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty samples CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "alpha_deg,cd,cl") {
        throw ConfigError("samples CSV must start with header 'alpha_deg,cd,cl'");
    }
    std::vector<CoefficientSample> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        CoefficientSample s;
        char c1 = 0, c2 = 0;
        double alpha_deg = 0.0;
        if (!(ss >> alpha_deg >> c1 >> s.cd >> c2 >> s.cl) || c1 != ',' || c2 != ',') {
            throw ConfigError("malformed samples CSV at line " + std::to_string(lineno));
        }
        s.alpha_rad = alpha_deg * kPi / 180.0;
        out.push_back(s);
    }
    return out;
}

}  // namespace aerosym
