#include "aerosym/aero_model.hpp"

#include <algorithm>
#include <cmath>

#include "aerosym/errors.hpp"

namespace aerosym {

namespace {

constexpr double kZeroSpeed = 1e-12;     // below this the angles are undefined
constexpr double kAxisSinAlpha = 1e-9;   // below this beta defaults to 0
constexpr double kDefectTolerance = 1e-9;

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x < xs.front() || x > xs.back()) {
        throw DomainError("alpha outside the tabulated grid");
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return ys.back();
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    if (hi == 0) return ys.front();
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}

void validate_table(const TabulatedCoefficients& t) {
    const std::size_t n = t.alpha_rad.size();
    if (n < 2) throw ConfigError("tabulated model needs at least two grid points");
    if (t.cd.size() != n || t.cl.size() != n) {
        throw ConfigError("tabulated model columns have mismatched lengths");
    }
    if (t.lift_over_sine && t.lift_over_sine->size() != n) {
        throw ConfigError("tabulated lift_over_sine column has mismatched length");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(t.alpha_rad[i] > t.alpha_rad[i - 1])) {
            throw ConfigError("tabulated alpha grid must be strictly increasing");
        }
    }
    for (double v : t.cd) {
        if (v < 0.0) throw ConfigError("tabulated C_D must be non-negative");
    }
}

bool cl_all_zero(const TabulatedCoefficients& t) {
    return std::all_of(t.cl.begin(), t.cl.end(), [](double v) { return v == 0.0; });
}

}  // namespace

AeroModel::AeroModel(double ka, Family family, std::optional<SourceConditions> source)
    : ka_(ka), family_(std::move(family)), source_(source) {
    if (!(ka >= 0.0) || !std::isfinite(ka)) {
        throw ConfigError("k_a must be finite and non-negative");
    }
    if (const auto* s = std::get_if<Sin2Coefficients>(&family_)) {
        // C_D(a) = c0 + 2 c1 sin^2(a) >= 0 for all a.
        if (s->c0 < 0.0 || s->c0 + 2.0 * s->c1 < 0.0) {
            throw ConfigError("sin2 family has negative C_D somewhere on [0, pi]");
        }
        cd0_ = s->c0 + 2.0 * s->c1;
    } else if (const auto* t = std::get_if<TanCoefficients>(&family_)) {
        if (t->cbar0 < 0.0) throw ConfigError("tan family needs cbar0 >= 0");
        cd0_ = t->cbar0 + t->cbar1;
    } else {
        const auto& tab = std::get<TabulatedCoefficients>(family_);
        validate_table(tab);
        // A table is equivalent when C_D + C_L cot(a) is constant across its
        // own interior nodes.
        std::vector<double> grid;
        for (double a : tab.alpha_rad) {
            if (std::abs(std::sin(a)) > 1e-6) grid.push_back(a);
        }
        if (grid.size() >= 2) {
            const auto d = equivalency_defect(*this, grid);
            if (d.defect < kDefectTolerance) cd0_ = d.cd0;
        }
    }
}

double AeroModel::cd(double alpha) const {
    return std::visit(
        [alpha](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Sin2Coefficients>) {
                const double s = std::sin(alpha);
                return f.c0 + 2.0 * f.c1 * s * s;
            } else if constexpr (std::is_same_v<T, TanCoefficients>) {
                return f.cbar0;
            } else {
                return interp(f.alpha_rad, f.cd, alpha);
            }
        },
        family_);
}

double AeroModel::cl(double alpha) const {
    return std::visit(
        [alpha](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Sin2Coefficients>) {
                return f.c1 * std::sin(2.0 * alpha);
            } else if constexpr (std::is_same_v<T, TanCoefficients>) {
                return f.cbar1 * std::tan(alpha);
            } else {
                return interp(f.alpha_rad, f.cl, alpha);
            }
        },
        family_);
}

bool AeroModel::has_lift_over_sine() const {
    if (std::holds_alternative<TabulatedCoefficients>(family_)) {
        const auto& t = std::get<TabulatedCoefficients>(family_);
        return t.lift_over_sine.has_value() || cl_all_zero(t);
    }
    return true;
}

double AeroModel::lift_over_sine(double alpha) const {
    return std::visit(
        [alpha](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Sin2Coefficients>) {
                return 2.0 * f.c1 * std::cos(alpha);
            } else if constexpr (std::is_same_v<T, TanCoefficients>) {
                return f.cbar1 / std::cos(alpha);
            } else {
                if (f.lift_over_sine) {
                    return interp(f.alpha_rad, *f.lift_over_sine, alpha);
                }
                if (cl_all_zero(f)) return 0.0;
                throw DomainError("tabulated model has no lift_over_sine column");
            }
        },
        family_);
}

AeroAngles angles_from_airspeed(const Vec3& va) {
    const double speed = va.norm();
    if (speed < kZeroSpeed) {
        throw ZeroAirspeed("airspeed too small to define (alpha, beta)");
    }
    AeroAngles out;
    const double c = std::clamp(-va.z / speed, -1.0, 1.0);
    out.alpha = std::acos(c);
    const double sin_alpha = std::sqrt(va.x * va.x + va.y * va.y) / speed;
    out.beta = sin_alpha < kAxisSinAlpha ? 0.0 : std::atan2(va.y, va.x);
    return out;
}

AirState AirState::from_airspeed(const Vec3& va_body) {
    const auto angles = angles_from_airspeed(va_body);
    return AirState{va_body, angles.alpha, angles.beta, va_body.norm()};
}

AeroForces aero_force(const AeroModel& model, const Vec3& va) {
    const double speed = va.norm();
    if (speed < kZeroSpeed) {
        return AeroForces{};
    }
    const auto [alpha, beta] = angles_from_airspeed(va);
    AeroForces out;
    out.drag = -model.ka() * speed * model.cd(alpha) * va;

    const double sin_alpha = std::sqrt(va.x * va.x + va.y * va.y) / speed;
    if (sin_alpha >= kAxisSinAlpha || !model.has_lift_over_sine()) {
        const Vec3 r{-std::sin(beta), std::cos(beta), 0.0};
        out.lift = model.ka() * speed * model.cl(alpha) * r.cross(va);
    } else {
        // On the axis r(beta) is undefined; the combined expression
        // F_L = -ka |va| L(a) (cos(a) va + |va| e3) is exact and regular.
        const double lof = model.lift_over_sine(alpha);
        out.lift = -model.ka() * speed * lof * (std::cos(alpha) * va + speed * kE3);
    }
    return out;
}

EquivalencyDefect equivalency_defect(const AeroModel& model,
                                     std::span<const double> alpha_grid) {
    if (alpha_grid.empty()) throw DomainError("empty alpha grid");
    std::vector<double> values;
    values.reserve(alpha_grid.size());
    for (double a : alpha_grid) {
        const double s = std::sin(a);
        if (std::abs(s) < 1e-6) {
            throw DomainError("alpha grid point too close to sin(alpha) = 0");
        }
        values.push_back(model.cd(a) + model.cl(a) * std::cos(a) / s);
    }
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median =
        n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    double defect = 0.0;
    for (double v : values) defect = std::max(defect, std::abs(v - median));
    return {defect, median};
}

EquivalentActuation equivalent_actuation(const AeroModel& model,
                                         const Vec3& va_inertial, double alpha,
                                         double thrust, double speed) {
    const auto cd0 = model.equivalent_cd0();
    if (!cd0) {
        throw NotEquivalent("model does not satisfy the constant C_D0 condition");
    }
    if (!model.has_lift_over_sine()) {
        throw NotEquivalent("model has no lift_over_sine form for the equivalent thrust");
    }
    EquivalentActuation out;
    out.cd0 = *cd0;
    out.fp = -model.ka() * (*cd0) * speed * va_inertial;
    out.tp = speed < kZeroSpeed
                 ? thrust
                 : thrust + model.ka() * speed * speed * model.lift_over_sine(alpha);
    return out;
}

}  // namespace aerosym
