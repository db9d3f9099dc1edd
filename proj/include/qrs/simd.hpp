#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel inner kernels. Every kernel has a scalar reference
// implementation plus AVX2 (x86-64) and NEON (aarch64) variants; the active
// table is picked once at runtime from CPU features, overridable with the
// QRS_SIMD environment variable (scalar|avx2|neon|auto).

namespace qrs::simd {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2, Neon };

struct KernelTable {
    // sum of v[i]^2
    double (*sum_squares)(const double* v, std::size_t n);
    // sum of |z[i]|^2
    double (*sum_squares_cplx)(const cplx* z, std::size_t n);
    // sum of conj(a[i]) * b[i]
    cplx (*dot_conj)(const cplx* a, const cplx* b, std::size_t n);
    // out[i] = floor(in[i] * 2^bits) * 2^-bits   (bits <= 62)
    void (*floor_quantize)(const double* in, double* out, std::size_t n, int bits);
    // y = A x, A row-major n x n complex
    void (*matvec)(const cplx* a, const cplx* x, cplx* y, std::size_t n);
    // y = A^H x (column walk over the row-major A)
    void (*matvec_adj)(const cplx* a, const cplx* x, cplx* y, std::size_t n);
    // sum of |a[i] - b[i]|^2
    double (*diff_norm_sq)(const cplx* a, const cplx* b, std::size_t n);
};

const KernelTable& table(Backend b);
const KernelTable& active();
Backend active_backend();
std::string backend_name(Backend b);
bool backend_available(Backend b);

// Convenience wrappers over the active table.
double sum_squares(const double* v, std::size_t n);
double sum_squares(const cplx* z, std::size_t n);
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);
void floor_quantize(const double* in, double* out, std::size_t n, int bits);
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n);
void matvec_adj(const cplx* a, const cplx* x, cplx* y, std::size_t n);
double diff_norm_sq(const cplx* a, const cplx* b, std::size_t n);

} // namespace qrs::simd
