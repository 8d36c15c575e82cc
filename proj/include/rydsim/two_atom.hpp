#pragma once

#include "rydsim/level_scheme.hpp"
#include "rydsim/linalg.hpp"
#include "rydsim/pulse.hpp"

namespace rydsim {

// Single-atom 7x7 Hamiltonian in the rotating frame of the two-photon
// drive. The drive phase phi(t) is absorbed into the frame, so the Rydberg
// levels carry the phase advance rate: E_r = -dphi_dt - ls(t), E_r' =
// -dphi_dt + zeeman_split - ls'(t), where ls is the differential lightshift
// of the two-photon transition generated by the couplings themselves. The
// detuning is therefore referenced to the instantaneous dressed resonance,
// which is the frame a detuning calibration settles into. |0> is dark (its
// off-resonant scattering is handled perturbatively elsewhere).
CMat build_single_hamiltonian(const LevelScheme& s, double amp, double dphi_dt);

// Two-atom 49x49: H1 (x) I + I (x) H1 plus the blockade shift on the four
// doubly-Rydberg pair states.
CMat build_hamiltonian(const LevelScheme& s, double amp, double dphi_dt);

// Full propagator over the pulse: product of per-step exponentials of the
// midpoint-sampled Hamiltonian. Exactly unitary per step up to the
// exponentiation tolerance. Pass step = 0 for the default, duration/250000,
// chosen so halving the step moves every matrix element by < 1e-8 (the
// intermediate levels carry ~6e3 rad of phase over the pulse, which is what
// the fine default resolves; coarser explicit steps are fine whenever only
// the computational block matters).
CMat evolve(const LevelScheme& s, const PulseParams& p, double step = 0.0);

// Fast path used by calibration and the Monte Carlo error estimates:
// propagates only the |1> and |11> columns (the |0> blocks are trivial),
// accumulating the populations the incoherent error model needs.
struct BlockResult {
    cplx u01{};              // <1|u|1> single-atom amplitude
    cplx u11{};              // <11|U|11>
    double int_pe_01 = 0.0;  // time-integrated intermediate population, |01> input
    double int_pr_01 = 0.0;  // same for r + r'
    double int_pe_11 = 0.0;  // |11> input (counts both atoms)
    double int_pr_11 = 0.0;
    double end_pr_01 = 0.0;  // leftover r + r' population at t = T
    double end_pr_11 = 0.0;

    // Haar-averaged (uniform over the four computational basis states)
    // integrated populations and leftover Rydberg population.
    double avg_int_pe() const { return 0.5 * int_pe_01 + 0.25 * int_pe_11; }
    double avg_int_pr() const { return 0.5 * int_pr_01 + 0.25 * int_pr_11; }
    double avg_end_pr() const { return 0.5 * end_pr_01 + 0.25 * end_pr_11; }
};

// extra_detuning adds a static offset to the two-photon detuning (the
// quasi-static noise model); amp_scale multiplies the sampled amplitude.
BlockResult propagate_block(const LevelScheme& s, const PulseParams& p,
                            double step = 0.0, double extra_detuning = 0.0,
                            double amp_scale = 1.0);

// Average gate fidelity against CZ up to a free single-qubit phase phi:
// M(phi) = P CZ^dag diag(1, e^-i phi, e^-i phi, e^-2i phi) U P, fidelity =
// max_phi (Tr(M^dag M) + |Tr M|^2) / 20. Returns the maximizing phi.
struct GateFidelity {
    double fidelity = 0.0;
    double phase = 0.0; // rad
};
GateFidelity gate_fidelity(const CMat& u49);

// Same, from the computational-block amplitudes of a BlockResult.
GateFidelity block_fidelity(const BlockResult& b);
double block_fidelity_at(const BlockResult& b, double phase);

// Conditional phase arg<11|U|11> - 2 arg<01|U|01> mapped to (-pi, pi].
double conditional_phase(const BlockResult& b);

// Exchanges the two atoms of a pair propagator (testing helper).
CMat swap_atoms(const CMat& u49);

} // namespace rydsim
