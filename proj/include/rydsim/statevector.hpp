#pragma once

#include "rydsim/linalg.hpp"
#include "rydsim/rng.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace rydsim {

enum class Axis { X, Y, Z };

// n-qubit statevector; qubit q is bit q of the amplitude index.
struct StateVector {
    int n = 0;
    std::vector<cplx> amp;

    static StateVector zero(int n_qubits);
    double norm() const;
};

// 2x2 of exp(-i angle/2 sigma_axis)
void rotation_matrix(Axis axis, double angle, cplx m[4]);

// Gate kernels. The unqualified versions are the production path, parallel
// over amplitude stripes; serial:: holds the plain reference loops that the
// unit tests and bench/sv_bench compare against.
void apply_1q(StateVector& s, int q, const cplx m[4]);
// same 2x2 on two distinct qubits in one sweep; rounds identically to
// apply_1q(qa) followed by apply_1q(qb)
void apply_1q_both(StateVector& s, const cplx m[4], int qa, int qb);
void apply_cz(StateVector& s, int a, int b);
void apply_cz_pairs(StateVector& s, const std::vector<std::pair<int, int>>& pairs);
void apply_pauli(StateVector& s, int q, int which); // 1=X, 2=Y, 3=Z

namespace serial {
void apply_1q(StateVector& s, int q, const cplx m[4]);
void apply_cz(StateVector& s, int a, int b);
} // namespace serial

std::vector<double> probabilities(const StateVector& s);
double prob_of(const StateVector& s, std::uint64_t bits);

// Born sample of all qubits in the Z basis; the state is not modified.
std::uint64_t sample_bits(const StateVector& s, Rng& rng);

// Projects qubit q onto outcome (0 or 1) and renormalizes; returns the
// pre-projection probability of that outcome. Throws if it is ~0.
double project_qubit(StateVector& s, int q, int outcome);

} // namespace rydsim
