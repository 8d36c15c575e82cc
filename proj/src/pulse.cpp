#include "rydsim/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rydsim {

namespace {

// log(cosh(x)) without overflow for large |x|
double log_cosh(double x) {
    double ax = std::fabs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

// sech(x)^a = exp(-a log cosh x)
double sech_pow(double x, double a) { return std::exp(-a * log_cosh(x)); }

} // namespace

void PulseParams::validate() const {
    if (!(duration > 0.0)) throw std::invalid_argument("pulse: duration must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("pulse: alpha must be positive");
    if (!(a_max > a_min)) throw std::invalid_argument("pulse: a_max must exceed a_min");
    if (std::fabs(omega_env) * duration < 1e-9)
        throw std::invalid_argument("pulse: omega_env*duration too small to pin the envelope");
    for (double c : cheb_coeffs)
        if (!std::isfinite(c)) throw std::invalid_argument("pulse: non-finite Chebyshev coefficient");
}

double apply_cheb(const std::vector<double>& coeffs, double t, double t_max,
                  bool full_domain) {
    if (!(t_max > 0.0)) throw std::domain_error("apply_cheb: t_max must be positive");
    double arg = full_domain ? 2.0 * t / t_max - 1.0 : t / t_max;
    if (arg < -1.0 - 1e-12 || arg > 1.0 + 1e-12)
        throw std::domain_error("apply_cheb: argument outside [-1,1]");
    arg = std::clamp(arg, -1.0, 1.0);
    double factor = 1.0;
    double theta = std::acos(arg);
    for (size_t n = 0; n < coeffs.size(); ++n)
        factor += coeffs[n] * std::cos(double(n + 1) * theta);
    return factor;
}

double amp_envelope(const PulseParams& p, double t) {
    if (t < -1e-12 || t > p.duration + 1e-12)
        throw std::domain_error("pulse: t outside [0, duration]");
    double tau = t - 0.5 * p.duration;
    // C = cosh(omega_env T/2)^alpha; the two endpoint conditions fix the
    // offset and scale of the sech envelope.
    double C = std::exp(p.alpha * log_cosh(0.5 * p.omega_env * p.duration));
    double off = (p.a_min * C - p.a_max) / (C - 1.0);
    double scale = (p.a_max - p.a_min) * C / (C - 1.0);
    return off + scale * sech_pow(p.omega_env * tau, p.alpha);
}

PulseSample sample_pulse(const PulseParams& p, double t) {
    double amp = amp_envelope(p, t);
    if (!p.cheb_coeffs.empty())
        amp *= apply_cheb(p.cheb_coeffs, t, p.duration, p.cheb_full_domain);
    double tau = t - 0.5 * p.duration;
    double phase = p.delta0 * tau + p.b_phase * std::tanh(p.lambda_rate * tau);
    return {amp, phase};
}

double pulse_detuning(const PulseParams& p, double t) {
    if (t < -1e-12 || t > p.duration + 1e-12)
        throw std::domain_error("pulse: t outside [0, duration]");
    double tau = t - 0.5 * p.duration;
    double s = 1.0 / std::cosh(p.lambda_rate * tau);
    return p.delta0 + p.b_phase * p.lambda_rate * s * s;
}

} // namespace rydsim
