// Error taxonomy shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace aerosym {

// Invalid configuration: bad scenario files, out-of-range parameters,
// malformed model cards.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Airspeed magnitude too small for the aerodynamic angles to be defined.
class ZeroAirspeed : public std::runtime_error {
public:
    explicit ZeroAirspeed(const std::string& msg) : std::runtime_error(msg) {}
};

// Quantity requested outside a model's declared domain (e.g. tabulated
// coefficient lookup beyond the grid, tan-family fit beyond alpha_max).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Normal-equation matrix rank-deficient in a coefficient fit.
class SingularFit : public std::runtime_error {
public:
    explicit SingularFit(const std::string& msg) : std::runtime_error(msg) {}
};

// Model does not admit the orientation-independent drag rewrite.
class NotEquivalent : public std::runtime_error {
public:
    explicit NotEquivalent(const std::string& msg) : std::runtime_error(msg) {}
};

// |f_p| fell below the stability guard; the controller is undefined.
class FpDegenerate : public std::runtime_error {
public:
    explicit FpDegenerate(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrust axis exactly opposite the required force direction; the
// controlled equilibrium's antipode is excluded from the attraction domain.
class ThrustConeSingularity : public std::runtime_error {
public:
    explicit ThrustConeSingularity(const std::string& msg) : std::runtime_error(msg) {}
};

// Integration produced a non-finite state component.
class NonFiniteState : public std::runtime_error {
public:
    explicit NonFiniteState(const std::string& msg) : std::runtime_error(msg) {}
};

// A simulation left the finite range (mapped from NonFiniteState at the
// scenario level).
class NumericalDivergence : public std::runtime_error {
public:
    explicit NumericalDivergence(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace aerosym
