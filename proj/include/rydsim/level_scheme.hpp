#pragma once

#include <array>
#include <map>
#include <string>

namespace rydsim {

// Per-atom level indices. |0> and |1> are the qubit hyperfine clock pair;
// the 420-nm leg couples |1> to the three 6P3/2 hyperfine states, the
// 1015-nm leg couples those to the target Rydberg state |r> and, three
// times weaker, to the wrong-m_J state |r'>.
enum Level : int { lv_q0 = 0, lv_q1 = 1, lv_e1 = 2, lv_e2 = 3, lv_e3 = 4, lv_r = 5, lv_rp = 6 };
inline constexpr int n_levels = 7;
inline constexpr int pair_dim = n_levels * n_levels;

struct LevelScheme {
    double omega420_peak = 0.0;      // rad/us, per unit amplitude fraction
    double omega1015 = 0.0;          // rad/us (CW leg)
    double delta_intermediate = 0.0; // rad/us, detuning from the F=3 intermediate
    double zeeman_split = 0.0;       // rad/us, |r'> above |r>
    double b_field = 0.0;            // Gauss, metadata only
    double blockade = 0.0;           // rad/us, V at nominal spacing
    double spacing = 0.0;            // um
    std::array<double, 3> intermediate_couplings{}; // w_F for F=1,2,3
    std::array<double, 3> intermediate_offsets{};   // rad/us relative to F=3 (<= 0)
    double rprime_suppression = 3.0; // divides the 1015 coupling into |r'>
    bool rprime_enabled = true;
    double qubit_hyperfine_split = 0.0; // rad/us, |0> - |1> splitting
    double blockade_sign = 1.0;

    void validate() const;

    // Effective two-photon Rabi frequency per unit amplitude fraction,
    // summed over the three intermediate paths: (sum_F w_F^2) W420 W1015 / (2 Delta).
    double effective_rabi() const;

    // Sets w_F = sqrt(total * rel_F / sum rel) so that sum w_F^2 reproduces
    // `total` exactly; `rel` are the relative path strengths.
    void set_couplings(const std::array<double, 3>& rel, double total);

    // Blockade at perturbed spacing r, 1/r^6 about the (spacing, blockade) anchor.
    double blockade_at(double r_um) const;
};

struct Branching {
    double loss = 0.0, leak = 0.0, pauli = 0.0;
};

struct DecayRates {
    double gamma_r = 0.0;   // 1/us, Rydberg decay
    double gamma_e = 0.0;   // 1/us, intermediate-state decay
    double t2_doppler = 0.0; // us
    double t2_420 = 0.0;     // us, laser-only (Doppler removed in quadrature)
    double t2_1015 = 0.0;    // us, laser-only
    double temperature = 0.0;   // uK, metadata
    double trap_radial = 0.0;   // kHz, metadata
    double trap_axial = 0.0;    // kHz, metadata
    double pos_sigma_radial = 0.0; // um
    double pos_sigma_axial = 0.0;  // um
    std::map<std::string, Branching> branching; // decay source -> channel split

    void validate() const;
};

// Removes the Doppler share of a measured Ramsey time in quadrature:
// 1/T_laser^2 = 1/T_meas^2 - 1/T_doppler^2.
double laser_only_t2(double t_measured, double t_doppler);

} // namespace rydsim
