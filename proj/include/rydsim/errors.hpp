#pragma once

#include <stdexcept>
#include <string>

namespace rydsim {

// Error categories mapped to distinct CLI exit codes.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parabola scan found no interior maximum; carries the fit coefficients.
struct no_maximum_error : std::runtime_error {
    double c0, c1, c2;
    no_maximum_error(const std::string& msg, double a0, double a1, double a2)
        : std::runtime_error(msg), c0(a0), c1(a1), c2(a2) {}
};

} // namespace rydsim
