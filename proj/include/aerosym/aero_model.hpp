// Aerodynamic coefficient families for rotationally symmetric thrust-propelled
// bodies, lift/drag force evaluation, and the rewrite of the force balance as
// an orientation-independent drag plus an equivalent thrust.
#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "aerosym/math_core.hpp"

namespace aerosym {

// C_D(a) = c0 + 2 c1 sin^2(a),  C_L(a) = c1 sin(2a).
// Pi-periodic in the angle of attack; admits the equivalent drag constant
// C_D0 = c0 + 2 c1 for every (c0, c1).
struct Sin2Coefficients {
    double c0 = 0.0;
    double c1 = 0.0;
};

// C_D(a) = cbar0,  C_L(a) = cbar1 tan(a).  Linearly increasing lift at small
// angles of attack; intended pre-stall (a < pi/2). C_D0 = cbar0 + cbar1.
struct TanCoefficients {
    double cbar0 = 0.0;
    double cbar1 = 0.0;
};

// Coefficients sampled on an increasing alpha grid, interpolated linearly.
// Lookups outside the grid are a DomainError. An optional lift_over_sine
// column supplies C_L(a)/sin(a) where the source data provides it; without
// it the table only supports force evaluation away from the symmetry axis.
struct TabulatedCoefficients {
    std::vector<double> alpha_rad;
    std::vector<double> cd;
    std::vector<double> cl;
    std::optional<std::vector<double>> lift_over_sine;
};

// Flow conditions of the source data, carried as metadata only; the
// coefficients themselves are frozen per model instance.
struct SourceConditions {
    double reynolds = 0.0;
    double mach = 0.0;
};

/**
 * @brief Immutable aerodynamic model: a coefficient family plus the force
 *        scale k_a = rho * Sigma / 2 [kg/m].
 *
 * The lift-over-sine form L(a) = C_L(a)/sin(a) is kept as a closed form per
 * family (2 c1 cos(a) and cbar1 / cos(a)); the library never divides C_L by
 * sin(a) numerically.
 */
class AeroModel {
public:
    using Family = std::variant<Sin2Coefficients, TanCoefficients, TabulatedCoefficients>;

    AeroModel(double ka, Family family,
              std::optional<SourceConditions> source = std::nullopt);

    static AeroModel sin2(double ka, double c0, double c1,
                          std::optional<SourceConditions> source = std::nullopt) {
        return AeroModel(ka, Sin2Coefficients{c0, c1}, source);
    }
    static AeroModel tan_family(double ka, double cbar0, double cbar1,
                                std::optional<SourceConditions> source = std::nullopt) {
        return AeroModel(ka, TanCoefficients{cbar0, cbar1}, source);
    }
    static AeroModel tabulated(double ka, TabulatedCoefficients table,
                               std::optional<SourceConditions> source = std::nullopt) {
        return AeroModel(ka, std::move(table), source);
    }
    // Zero lift, constant drag.
    static AeroModel sphere(double ka, double cd0) { return sin2(ka, cd0, 0.0); }

    double ka() const { return ka_; }
    const Family& family() const { return family_; }
    const std::optional<SourceConditions>& source() const { return source_; }

    double cd(double alpha) const;
    double cl(double alpha) const;

    bool has_lift_over_sine() const;
    /// C_L(alpha)/sin(alpha) as a closed form; DomainError if the family
    /// does not provide one.
    double lift_over_sine(double alpha) const;

    /// The constant C_D0 with C_D + C_L cot(alpha) = C_D0, when the family
    /// admits one (always for sin2 and tan; for tables, when the sampled
    /// defect is below 1e-9).
    std::optional<double> equivalent_cd0() const { return cd0_; }

private:
    double ka_;
    Family family_;
    std::optional<SourceConditions> source_;
    std::optional<double> cd0_;
};

/// Angle of attack (between -k and the airspeed) and azimuth of the airspeed
/// projection onto the body {i, j} plane.
struct AeroAngles {
    double alpha = 0.0;  // [0, pi]
    double beta = 0.0;   // (-pi, pi]; 0 by convention on the symmetry axis
};

/**
 * @brief Extract (alpha, beta) from body-frame airspeed coordinates.
 *
 * alpha = acos(-va3/|va|); beta = atan2(va2, va1), returned as 0 when the
 * airspeed is within 1e-9 of the symmetry axis where beta is undefined.
 * Throws ZeroAirspeed below 1e-12 m/s.
 */
AeroAngles angles_from_airspeed(const Vec3& va_body);

// Body-frame airspeed with its spherical decomposition.
struct AirState {
    Vec3 va;
    double alpha = 0.0;
    double beta = 0.0;
    double speed = 0.0;

    static AirState from_airspeed(const Vec3& va_body);
};

struct AeroForces {
    Vec3 lift;   // orthogonal to the airspeed, body frame [N]
    Vec3 drag;   // anti-parallel to the airspeed, body frame [N]
    Vec3 total() const { return lift + drag; }
};

/**
 * @brief Lift and drag at the given body-frame airspeed.
 *
 * F_D = -ka |va| C_D(a) va and F_L = ka |va| C_L(a) r(b) x va with
 * r(b) = (-sin b, cos b, 0). Near the symmetry axis (sin a < 1e-9) the lift
 * switches to the lift-over-sine form, which is singularity-free. Zero
 * airspeed yields exactly zero forces.
 */
AeroForces aero_force(const AeroModel& model, const Vec3& va_body);

struct EquivalencyDefect {
    double defect = 0.0;  // max |C_D + C_L cot(a) - median| over the grid
    double cd0 = 0.0;     // the median, i.e. the best-fit constant
};

/**
 * @brief Measure how far a model is from admitting the spherical rewrite.
 *
 * Grid points within 1e-6 of sin(a) = 0 are rejected (DomainError).
 */
EquivalencyDefect equivalency_defect(const AeroModel& model,
                                     std::span<const double> alpha_grid);

struct EquivalentActuation {
    Vec3 fp;           // orientation-independent drag, inertial frame [N]
    double tp = 0.0;   // equivalent thrust intensity [N]
    double cd0 = 0.0;
};

/**
 * @brief Rewrite (aerodynamic force, thrust) as (equivalent drag, equivalent
 *        thrust): F_p = -ka C_D0 |va| va in inertial coordinates and
 *        T_p = T + ka |va|^2 L(alpha).
 *
 * Requires a model with equivalent_cd0() and a lift-over-sine form; throws
 * NotEquivalent otherwise.
 */
EquivalentActuation equivalent_actuation(const AeroModel& model,
                                         const Vec3& va_inertial, double alpha,
                                         double thrust, double speed);

}  // namespace aerosym
