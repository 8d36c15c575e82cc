#pragma once

#include "rydsim/statevector.hpp"
#include "rydsim/units.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rydsim {

// One circuit layer: either a set of disjoint CZ pairs or an axis rotation
// on a target set (empty targets = every qubit).
struct Layer {
    bool is_rotation = false;
    std::vector<std::pair<int, int>> cz_pairs;
    Axis axis = Axis::X;
    double angle = 0.0;
    std::vector<int> targets;
    int range_label = 0; // gate range d for tagged nonlocal CZ layers
};

Layer cz_layer(std::vector<std::pair<int, int>> pairs, int range = 0);
Layer rotation_layer(Axis axis, double angle);

struct CircuitSpec {
    int n_qubits = 0;
    std::vector<Layer> layers;
    std::string family;
    std::uint64_t target_bits = 0; // noiseless return outcome
    int paired_cz_count = 0;       // cluster convention: edge-unpaired atoms excluded

    int total_cz() const;
    int n_cz_layers() const;
    int max_range() const;

    // throws config_error on out-of-range indices, overlapping pairs within
    // a layer, or a range label that does not match its pair distances
    void validate() const;
};

void apply_layer(StateVector& s, const Layer& layer);
StateVector run_circuit(const CircuitSpec& spec);
std::vector<double> ideal_probabilities(const CircuitSpec& spec);

// Benchmarking circuit on one two-qubit gate site: prepare |++>, n_cz/2
// repetitions of [CZ, global X(pi), CZ], and a closing rotation that returns
// the noiseless state to target_bits (checked at build time). extra_pi adds
// one more global X(pi) before readout, flipping the target to |11>.
CircuitSpec build_echo_rb(int n_cz, bool extra_pi = false);

// Symmetric stabilizer benchmarking: mirrored blocks of
// [CZ, Z(phase) x Z(phase), random symmetric Clifford c x c]. At the phase
// matching the gate's single-qubit phase (0 for the ideal CZ used here) the
// noiseless sequence returns |00> exactly.
CircuitSpec build_ssb(int n_cz, double phase, std::uint64_t seed = 12345);

// n_cycles repetitions of G G+ with G = [global Y(pi/2), CZ on even bonds,
// CZ on odd bonds]; 4 CZ layers per cycle, noiseless identity.
CircuitSpec build_cluster_cycle(int n_qubits, int n_cycles);

// Alternating [global X(theta)] and [range-d CZ layer] per schedule entry
// (d, offset): pairs (i, i+d) for floor((i-o)/d) even.
CircuitSpec build_nonlocal(int n_qubits,
                           const std::vector<std::pair<int, int>>& schedule,
                           double theta = 0.25 * pi);

// Ranges [1, 1, 2, 3, ...] with alternating offsets.
std::vector<std::pair<int, int>> default_nonlocal_schedule(int n_entries);

// Product of the layer unitaries as a dense matrix, n_qubits <= 8. This is
// the oracle the fast kernels are tested against.
CMat dense_unitary(const CircuitSpec& spec);

} // namespace rydsim
