#pragma once

#include <stdexcept>
#include <string>

namespace hardedge {

// Base for all numerical-contract failures.  The CLI maps these to exit
// code 3; configuration problems are reported as config_error (exit 2).
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation at (or too close to) a gamma pole, naming the offending factor.
struct pole_error : numeric_error {
    explicit pole_error(const std::string& msg) : numeric_error(msg) {}
};

// Argument outside a documented domain.
struct domain_error : numeric_error {
    explicit domain_error(const std::string& msg) : numeric_error(msg) {}
};

// Series or quadrature failed to reach the requested tolerance.
struct convergence_error : numeric_error {
    explicit convergence_error(const std::string& msg) : numeric_error(msg) {}
};

// Contour integrand does not decay enough at the truncation endpoints.
struct decay_error : numeric_error {
    explicit decay_error(const std::string& msg) : numeric_error(msg) {}
};

// Residue expansion refused (coincident or near-coincident poles).
struct coincident_pole_error : numeric_error {
    explicit coincident_pole_error(const std::string& msg) : numeric_error(msg) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hardedge
