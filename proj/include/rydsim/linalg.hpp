#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#define lapack_complex_float_real(z) ((z).real())
#define lapack_complex_float_imag(z) ((z).imag())
#define lapack_complex_double_real(z) ((z).real())
#define lapack_complex_double_imag(z) ((z).imag())
#include <lapacke.h>
#include <cblas.h>

namespace rydsim {

using cplx = std::complex<double>;
inline constexpr cplx iu{0.0, 1.0};

// Small dense row-major complex matrix. Dimensions here top out at 64
// (two-qubit circuit oracle) so everything stays simple and allocation-free
// hot paths can reuse buffers.
struct CMat {
    int n = 0;
    std::vector<cplx> a;

    CMat() = default;
    explicit CMat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim) {}

    cplx& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const cplx& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static CMat identity(int dim) {
        CMat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline CMat matmul(const CMat& A, const CMat& B) {
    CMat C(A.n);
    cplx one{1.0, 0.0}, zero{0.0, 0.0};
    cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, A.n, A.n, A.n,
                &one, A.a.data(), A.n, B.a.data(), B.n, &zero, C.a.data(), C.n);
    return C;
}

inline CMat dagger(const CMat& A) {
    CMat D(A.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) D(i, j) = std::conj(A(j, i));
    return D;
}

inline void matvec(const CMat& A, const cplx* x, cplx* y) {
    cplx one{1.0, 0.0}, zero{0.0, 0.0};
    cblas_zgemv(CblasRowMajor, CblasNoTrans, A.n, A.n, &one, A.a.data(), A.n,
                x, 1, &zero, y, 1);
}

// Hermitian eigendecomposition, ascending eigenvalues; H's rows are not
// touched (copy made). Eigenvector k sits in column k of `vecs`.
inline void eig_herm(const CMat& H, std::vector<double>& vals, CMat& vecs) {
    vecs = H;
    vals.assign(H.n, 0.0);
    int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', H.n,
                              vecs.a.data(), H.n, vals.data());
    if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
}

// U = exp(-i H dt) for Hermitian H, via full eigendecomposition. The slow
// reliable path; propagators that only need U|psi> use expi_apply below.
inline CMat expi_herm(const CMat& H, double dt) {
    std::vector<double> w;
    CMat V;
    eig_herm(H, w, V);
    CMat B(H.n);
    for (int i = 0; i < H.n; ++i)
        for (int k = 0; k < H.n; ++k)
            B(i, k) = V(i, k) * std::exp(-iu * w[k] * dt);
    CMat U(H.n);
    cplx one{1.0, 0.0}, zero{0.0, 0.0};
    cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasConjTrans, H.n, H.n, H.n,
                &one, B.a.data(), B.n, V.a.data(), V.n, &zero, U.a.data(), U.n);
    return U;
}

inline double norm2(const std::vector<cplx>& v) {
    return cblas_dznrm2(static_cast<int>(v.size()), v.data(), 1);
}

// psi <- exp(-i H dt) psi by scaled-and-shifted Taylor summation. The trace
// shift centers the spectrum so the step count follows the spectral spread,
// not the absolute energies.
inline void expi_apply(const CMat& H, double dt, std::vector<cplx>& psi,
                       std::vector<cplx>& term, std::vector<cplx>& accum) {
    const int n = H.n;
    cplx tr = 0.0;
    for (int i = 0; i < n; ++i) tr += H(i, i);
    const double mu = tr.real() / n;

    double radius = 0.0; // Gershgorin bound on |spectrum - mu|
    for (int i = 0; i < n; ++i) {
        double row = std::abs(H(i, i).real() - mu);
        for (int j = 0; j < n; ++j)
            if (j != i) row += std::abs(H(i, j));
        radius = std::max(radius, row);
    }
    int substeps = 1 + static_cast<int>(radius * std::abs(dt));
    const double h = dt / substeps;

    CMat Hs = H;
    for (int i = 0; i < n; ++i) Hs(i, i) -= mu;

    term.resize(n);
    accum.resize(n);
    for (int s = 0; s < substeps; ++s) {
        double ref = norm2(psi);
        accum = psi;
        term = psi;
        for (int k = 1; k <= 40; ++k) {
            matvec(Hs, term.data(), psi.data()); // psi used as scratch
            cplx f = -iu * h / double(k);
            for (int i = 0; i < n; ++i) term[i] = f * psi[i];
            for (int i = 0; i < n; ++i) accum[i] += term[i];
            if (norm2(term) < 1e-15 * ref) break;
        }
        psi = accum;
    }
    const cplx phase = std::exp(-iu * mu * dt);
    for (int i = 0; i < n; ++i) psi[i] *= phase;
}

} // namespace rydsim
