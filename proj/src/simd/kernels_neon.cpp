#include "qrs/simd.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

namespace qrs::simd::neon {

double sum_squares(const double* v, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t x = vld1q_f64(v + i);
        acc = vaddq_f64(acc, vmulq_f64(x, x));
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += v[i] * v[i];
    return vaddvq_f64(acc) + tail;
}

double sum_squares_cplx(const cplx* z, std::size_t n) {
    return sum_squares(reinterpret_cast<const double*>(z), 2 * n);
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    float64x2_t re = vdupq_n_f64(0.0), im = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2x2_t va = vld2q_f64(pa + 2 * i); // val[0]=re, val[1]=im
        float64x2x2_t vb = vld2q_f64(pb + 2 * i);
        re = vaddq_f64(re, vaddq_f64(vmulq_f64(va.val[0], vb.val[0]),
                                     vmulq_f64(va.val[1], vb.val[1])));
        im = vaddq_f64(im, vsubq_f64(vmulq_f64(va.val[0], vb.val[1]),
                                     vmulq_f64(va.val[1], vb.val[0])));
    }
    cplx out{vaddvq_f64(re), vaddvq_f64(im)};
    for (; i < n; ++i) {
        out += cplx{a[i].real() * b[i].real() + a[i].imag() * b[i].imag(),
                    a[i].real() * b[i].imag() - a[i].imag() * b[i].real()};
    }
    return out;
}

void floor_quantize(const double* in, double* out, std::size_t n, int bits) {
    const double scale = std::ldexp(1.0, bits);
    const double inv = std::ldexp(1.0, -bits);
    const float64x2_t vs = vdupq_n_f64(scale);
    const float64x2_t vi = vdupq_n_f64(inv);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t x = vld1q_f64(in + i);
        x = vrndmq_f64(vmulq_f64(x, vs));
        vst1q_f64(out + i, vmulq_f64(x, vi));
    }
    for (; i < n; ++i) out[i] = std::floor(in[i] * scale) * inv;
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = reinterpret_cast<const double*>(a + i * n);
        float64x2_t re = vdupq_n_f64(0.0), im = vdupq_n_f64(0.0);
        std::size_t j = 0;
        for (; j + 2 <= n; j += 2) {
            float64x2x2_t va = vld2q_f64(row + 2 * j);
            float64x2x2_t vb = vld2q_f64(px + 2 * j);
            re = vaddq_f64(re, vsubq_f64(vmulq_f64(va.val[0], vb.val[0]),
                                         vmulq_f64(va.val[1], vb.val[1])));
            im = vaddq_f64(im, vaddq_f64(vmulq_f64(va.val[0], vb.val[1]),
                                         vmulq_f64(va.val[1], vb.val[0])));
        }
        cplx out{vaddvq_f64(re), vaddvq_f64(im)};
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
    for (std::size_t i = 0; i < n; ++i) {
        const cplx xi = x[i];
        const cplx* row = a + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            y[j] += cplx{row[j].real() * xi.real() + row[j].imag() * xi.imag(),
                         row[j].real() * xi.imag() - row[j].imag() * xi.real()};
        }
    }
}

double diff_norm_sq(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    const std::size_t n2 = 2 * n;
    for (; i + 2 <= n2; i += 2) {
        float64x2_t d = vsubq_f64(vld1q_f64(pa + i), vld1q_f64(pb + i));
        acc = vaddq_f64(acc, vmulq_f64(d, d));
    }
    double tail = 0.0;
    for (; i < n2; ++i) {
        double d = pa[i] - pb[i];
        tail += d * d;
    }
    return vaddvq_f64(acc) + tail;
}

extern const KernelTable kTable;
const KernelTable kTable = {
    &sum_squares, &sum_squares_cplx, &dot_conj, &floor_quantize,
    &matvec,      &matvec_adj,       &diff_norm_sq,
};

} // namespace qrs::simd::neon

#endif // aarch64
