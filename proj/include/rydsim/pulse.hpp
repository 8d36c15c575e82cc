#pragma once

#include <vector>

namespace rydsim {

// Smooth-amplitude CZ pulse: a sech^alpha envelope on the 420-nm Rabi
// amplitude plus a tanh phase ramp, both written in time symmetric about
// the pulse center (tau = t - T/2). Amplitude endpoints and peak are pinned
// algebraically: amp(0) = amp(T) = a_min, amp(T/2) = a_max, whatever the
// other parameters. Optional Chebyshev terms multiply the envelope; they
// model small drive-chain corrections and default to none.
struct PulseParams {
    double a_min = 0.0;      // envelope value at the pulse edges
    double a_max = 1.0;      // envelope value at the center
    double omega_env = 0.0;  // envelope rate, rad/us
    double alpha = 0.3;      // sech exponent
    double b_phase = 0.0;    // tanh phase amplitude, rad
    double lambda_rate = 0.0; // tanh phase rate, rad/us
    double delta0 = 0.0;     // linear phase slope, rad/us
    double duration = 0.0;   // gate time T, us
    std::vector<double> cheb_coeffs; // c_1..c_k, dimensionless
    bool cheb_full_domain = false;   // false: T_n arg = t/T in [0,1]; true: 2t/T-1

    void validate() const; // throws std::invalid_argument
};

struct PulseSample {
    double amp_fraction; // signed; |amp| <= ~1 by construction
    double phase;        // rad
};

// Chebyshev correction factor 1 + sum_n c_n cos(n arccos(arg)).
// Throws std::domain_error when the argument leaves [-1, 1].
double apply_cheb(const std::vector<double>& coeffs, double t, double t_max,
                  bool full_domain = false);

// Envelope before the Chebyshev factor.
double amp_envelope(const PulseParams& p, double t);

// Full sample: Chebyshev-corrected amplitude fraction and drive phase.
// Throws std::domain_error for t outside [0, duration].
PulseSample sample_pulse(const PulseParams& p, double t);

// d(phase)/dt: the instantaneous two-photon detuning seen in the rotating
// frame. Analytic, not finite-differenced.
double pulse_detuning(const PulseParams& p, double t);

} // namespace rydsim
