#pragma once

#include "rydsim/circuits.hpp"

#include <cstdint>
#include <vector>

namespace rydsim {

// Per-location error probabilities for Monte Carlo trajectory sampling.
// "pauli" entries inject a uniformly chosen X/Y/Z on one qubit, "depol" a
// uniformly chosen nontrivial two-qubit Pauli on a gate pair. Loss projects
// the atom onto a Born-sampled Z outcome and drops it from the rest of the
// circuit: later rotations skip it, its CZ partners receive no conditional
// phase, and readout gives a coin flip. Leakage only sets a flag.
struct NoiseModel {
  double cz_pauli = 0;     // per qubit, per CZ gate
  double cz_loss = 0;      // per qubit, per CZ gate
  double cz_depol = 0;     // per pair, per CZ gate
  double leak_per_cz = 0;  // per qubit, per CZ gate
  double init_pauli = 0;   // per qubit, before the first layer
  double init_loss = 0;
  double meas_pauli = 0;  // per qubit, after the last layer
  double meas_loss = 0;
  double move_pauli = 0;  // per qubit, before every CZ layer
  double move_loss = 0;

  void validate() const;
  bool trivial() const;
};

struct ShotRecord {
  uint32_t bits = 0;        // readout bitstring, qubit q at bit q
  uint32_t lost = 0;        // atoms lost at any point before readout
  uint32_t leaked = 0;      // leakage flags, bookkeeping only
  uint16_t cz_applied = 0;  // CZ gates that ran with both atoms present
};

// reference: one statevector evolution per shot, the slow obviously-correct
//   baseline the others are tested against.
// grouped: shots sharing a fault pattern share the evolution, with branch
//   points only where a Born-sampled loss projection differs.
// tableau: stabilizer simulation, valid when every rotation angle is a
//   multiple of pi/2.
// automatic picks tableau for Clifford circuits above 12 qubits, grouped
// otherwise.
enum class TrajectoryBackend { automatic, reference, grouped, tableau };

// Samples n_shots records. Shot s draws faults from stream (seed, 2s) and
// state-dependent outcomes from stream (seed, 2s+1), in a fixed walk order
// over noise locations, so a given shot index reproduces exactly regardless
// of n_shots or backend.
std::vector<ShotRecord> run_trajectories(
    const CircuitSpec& spec, const NoiseModel& noise, int n_shots,
    uint64_t seed, TrajectoryBackend backend = TrajectoryBackend::automatic);

bool clifford_circuit(const CircuitSpec& spec);

// Fraction of single Pauli faults at gate noise sites (three Pauli types per
// CZ qubit site) that leave every measured bit unchanged once propagated
// through the remainder of the circuit. Used to translate a target gate
// fidelity into an injected per-site rate: a fault survives exactly when its
// propagated string is diagonal. Clifford circuits only.
struct SurvivalCount {
  int sites = 0;
  double fraction = 0;
};
SurvivalCount site_survival(const CircuitSpec& spec);

}  // namespace rydsim
