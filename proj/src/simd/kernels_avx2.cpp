#include "qrs/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace qrs::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sw = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sw));
}

// Per-complex product lanes: returns [re0, im0, re1, im1] of a*b, with the
// real part negated term handled by hsub/hadd interleaving.
inline __m256d cmul(__m256d va, __m256d vb) {
    __m256d vb_sw = _mm256_permute_pd(vb, 0b0101);
    __m256d t0 = _mm256_mul_pd(va, vb);    // [ar*br, ai*bi, ...]
    __m256d t1 = _mm256_mul_pd(va, vb_sw); // [ar*bi, ai*br, ...]
    __m256d re = _mm256_hsub_pd(t0, t0);   // [re0, re0, re1, re1]
    __m256d im = _mm256_hadd_pd(t1, t1);
    return _mm256_blend_pd(re, im, 0b1010);
}

// conj(a)*b lanes.
inline __m256d cmul_conj(__m256d va, __m256d vb) {
    __m256d vb_sw = _mm256_permute_pd(vb, 0b0101);
    __m256d t0 = _mm256_mul_pd(va, vb);
    __m256d t1 = _mm256_mul_pd(va, vb_sw);
    __m256d re = _mm256_hadd_pd(t0, t0); // ar*br + ai*bi
    __m256d im = _mm256_hsub_pd(t1, t1); // ar*bi - ai*br
    return _mm256_blend_pd(re, im, 0b1010);
}

inline cplx reduce_cplx(__m256d acc) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    return {lanes[0] + lanes[2], lanes[1] + lanes[3]};
}

} // namespace

double sum_squares(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(v + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += v[i] * v[i];
    return hsum(acc) + tail;
}

double sum_squares_cplx(const cplx* z, std::size_t n) {
    return sum_squares(reinterpret_cast<const double*>(z), 2 * n);
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        acc = _mm256_add_pd(acc, cmul_conj(va, vb));
    }
    cplx out = reduce_cplx(acc);
    for (; i < n; ++i) {
        out += cplx{a[i].real() * b[i].real() + a[i].imag() * b[i].imag(),
                    a[i].real() * b[i].imag() - a[i].imag() * b[i].real()};
    }
    return out;
}

void floor_quantize(const double* in, double* out, std::size_t n, int bits) {
    const double scale = std::ldexp(1.0, bits);
    const double inv = std::ldexp(1.0, -bits);
    const __m256d vs = _mm256_set1_pd(scale);
    const __m256d vi = _mm256_set1_pd(inv);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(in + i);
        x = _mm256_floor_pd(_mm256_mul_pd(x, vs));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(x, vi));
    }
    for (; i < n; ++i) out[i] = std::floor(in[i] * scale) * inv;
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = reinterpret_cast<const double*>(a + i * n);
        __m256d acc = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 2 <= n; j += 2) {
            __m256d va = _mm256_loadu_pd(row + 2 * j);
            __m256d vb = _mm256_loadu_pd(px + 2 * j);
            acc = _mm256_add_pd(acc, cmul(va, vb));
        }
        cplx out = reduce_cplx(acc);
        for (; j < n; ++j) {
            const cplx aij = a[i * n + j];
            out += cplx{aij.real() * x[j].real() - aij.imag() * x[j].imag(),
                        aij.real() * x[j].imag() + aij.imag() * x[j].real()};
        }
        y[i] = out;
    }
}

void matvec_adj(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) y[j] = {0.0, 0.0};
    double* py = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = reinterpret_cast<const double*>(a + i * n);
        const cplx xi = x[i];
        const __m256d vx = _mm256_set_pd(xi.imag(), xi.real(), xi.imag(), xi.real());
        std::size_t j = 0;
        for (; j + 2 <= n; j += 2) {
            __m256d va = _mm256_loadu_pd(row + 2 * j);
            __m256d prev = _mm256_loadu_pd(py + 2 * j);
            _mm256_storeu_pd(py + 2 * j, _mm256_add_pd(prev, cmul_conj(va, vx)));
        }
        for (; j < n; ++j) {
            const cplx aij = a[i * n + j];
            y[j] += cplx{aij.real() * xi.real() + aij.imag() * xi.imag(),
                         aij.real() * xi.imag() - aij.imag() * xi.real()};
        }
    }
}

double diff_norm_sq(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t n2 = 2 * n;
    for (; i + 4 <= n2; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double tail = 0.0;
    for (; i < n2; ++i) {
        double d = pa[i] - pb[i];
        tail += d * d;
    }
    return hsum(acc) + tail;
}

extern const KernelTable kTable;
const KernelTable kTable = {
    &sum_squares, &sum_squares_cplx, &dot_conj, &floor_quantize,
    &matvec,      &matvec_adj,       &diff_norm_sq,
};

} // namespace qrs::simd::avx2

#endif // x86-64
