#include "rydsim/statevector.hpp"

#include "rydsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rydsim {

StateVector StateVector::zero(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 26)
        throw resource_error("statevector limited to 26 qubits, asked for " +
                            std::to_string(n_qubits));
    StateVector s;
    s.n = n_qubits;
    s.amp.assign(std::size_t(1) << n_qubits, cplx{0.0, 0.0});
    s.amp[0] = 1.0;
    return s;
}

double StateVector::norm() const { return norm2(amp); }

void rotation_matrix(Axis axis, double angle, cplx m[4]) {
    double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
    switch (axis) {
    case Axis::X:
        m[0] = c; m[1] = -iu * s;
        m[2] = -iu * s; m[3] = c;
        break;
    case Axis::Y:
        m[0] = c; m[1] = -s;
        m[2] = s; m[3] = c;
        break;
    case Axis::Z:
        m[0] = cplx{c, -s}; m[1] = 0.0;
        m[2] = 0.0; m[3] = cplx{c, s};
        break;
    }
}

void apply_1q(StateVector& s, int q, const cplx m[4]) {
    if (q < 0 || q >= s.n) throw std::out_of_range("apply_1q: qubit index");
    const std::size_t mask = std::size_t(1) << q;
    const std::int64_t half = std::int64_t(s.amp.size() >> 1);
    cplx* a = s.amp.data();
    const cplx m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < half; ++t) {
        // spread t over the indices with bit q clear
        std::size_t i = (std::size_t(t) & (mask - 1)) | ((std::size_t(t) & ~(mask - 1)) << 1);
        std::size_t j = i | mask;
        cplx lo = a[i], hi = a[j];
        a[i] = m00 * lo + m01 * hi;
        a[j] = m10 * lo + m11 * hi;
    }
}

void apply_1q_both(StateVector& s, const cplx m[4], int qa, int qb) {
    if (qa < 0 || qa >= s.n || qb < 0 || qb >= s.n || qa == qb)
        throw std::out_of_range("apply_1q_both: qubit indices");
    const std::size_t ma = std::size_t(1) << qa, mb = std::size_t(1) << qb;
    const std::size_t mlo = std::min(ma, mb), mhi = std::max(ma, mb);
    const std::int64_t quarter = std::int64_t(s.amp.size() >> 2);
    cplx* a = s.amp.data();
    const cplx m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < quarter; ++t) {
        std::size_t i = (std::size_t(t) & (mlo - 1)) | ((std::size_t(t) & ~(mlo - 1)) << 1);
        i = (i & (mhi - 1)) | ((i & ~(mhi - 1)) << 1);
        const std::size_t ia = i | ma, ib = i | mb, iab = i | ma | mb;
        // first the qa stage, then the qb stage, exactly as two passes would
        const cplx t00 = m00 * a[i] + m01 * a[ia];
        const cplx t10 = m10 * a[i] + m11 * a[ia];
        const cplx t01 = m00 * a[ib] + m01 * a[iab];
        const cplx t11 = m10 * a[ib] + m11 * a[iab];
        a[i] = m00 * t00 + m01 * t01;
        a[ib] = m10 * t00 + m11 * t01;
        a[ia] = m00 * t10 + m01 * t11;
        a[iab] = m10 * t10 + m11 * t11;
    }
}

void apply_cz(StateVector& s, int a, int b) {
    if (a < 0 || a >= s.n || b < 0 || b >= s.n || a == b)
        throw std::out_of_range("apply_cz: qubit indices");
    const std::size_t both = (std::size_t(1) << a) | (std::size_t(1) << b);
    cplx* p = s.amp.data();
    const std::int64_t size = std::int64_t(s.amp.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < size; ++i)
        if ((std::size_t(i) & both) == both) p[i] = -p[i];
}

void apply_cz_pairs(StateVector& s, const std::vector<std::pair<int, int>>& pairs) {
    if (pairs.empty()) return;
    // one pass: flip sign when any pair has both bits set
    std::vector<std::size_t> masks;
    masks.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        if (a < 0 || a >= s.n || b < 0 || b >= s.n || a == b)
            throw std::out_of_range("apply_cz_pairs: qubit indices");
        masks.push_back((std::size_t(1) << a) | (std::size_t(1) << b));
    }
    cplx* p = s.amp.data();
    const std::int64_t size = std::int64_t(s.amp.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < size; ++i) {
        int par = 0;
        for (std::size_t m : masks) par ^= ((std::size_t(i) & m) == m);
        if (par) p[i] = -p[i];
    }
}

void apply_pauli(StateVector& s, int q, int which) {
    static const cplx X[4] = {0.0, 1.0, 1.0, 0.0};
    static const cplx Y[4] = {0.0, -iu, iu, 0.0};
    static const cplx Z[4] = {1.0, 0.0, 0.0, -1.0};
    switch (which) {
    case 1: apply_1q(s, q, X); break;
    case 2: apply_1q(s, q, Y); break;
    case 3: apply_1q(s, q, Z); break;
    default: throw std::invalid_argument("apply_pauli: which must be 1..3");
    }
}

namespace serial {

void apply_1q(StateVector& s, int q, const cplx m[4]) {
    const std::size_t mask = std::size_t(1) << q;
    for (std::size_t i = 0; i < s.amp.size(); ++i) {
        if (i & mask) continue;
        cplx lo = s.amp[i], hi = s.amp[i | mask];
        s.amp[i] = m[0] * lo + m[1] * hi;
        s.amp[i | mask] = m[2] * lo + m[3] * hi;
    }
}

void apply_cz(StateVector& s, int a, int b) {
    const std::size_t both = (std::size_t(1) << a) | (std::size_t(1) << b);
    for (std::size_t i = 0; i < s.amp.size(); ++i)
        if ((i & both) == both) s.amp[i] = -s.amp[i];
}

} // namespace serial

std::vector<double> probabilities(const StateVector& s) {
    std::vector<double> p(s.amp.size());
    for (std::size_t i = 0; i < s.amp.size(); ++i) p[i] = std::norm(s.amp[i]);
    return p;
}

double prob_of(const StateVector& s, std::uint64_t bits) {
    return std::norm(s.amp[bits]);
}

std::uint64_t sample_bits(const StateVector& s, Rng& rng) {
    double u = rng.uniform();
    double acc = 0.0;
    std::size_t last = s.amp.size() - 1;
    for (std::size_t i = 0; i < last; ++i) {
        acc += std::norm(s.amp[i]);
        if (u < acc) return i;
    }
    return last;
}

double project_qubit(StateVector& s, int q, int outcome) {
    const std::size_t mask = std::size_t(1) << q;
    double p = 0.0;
    for (std::size_t i = 0; i < s.amp.size(); ++i)
        if (((i & mask) != 0) == (outcome != 0)) p += std::norm(s.amp[i]);
    if (p < 1e-300) throw numeric_error("project_qubit: outcome has zero probability");
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < s.amp.size(); ++i) {
        if (((i & mask) != 0) == (outcome != 0))
            s.amp[i] *= scale;
        else
            s.amp[i] = 0.0;
    }
    return p;
}

} // namespace rydsim
