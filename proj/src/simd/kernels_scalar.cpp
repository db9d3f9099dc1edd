#include <cmath>
#include <cstddef>

#include "qrs/simd.hpp"

// Reference kernels. The SIMD variants must agree with these within last-ulp
// accumulation-order differences (floor_quantize must agree exactly).

namespace qrs::simd::scalar {

double sum_squares(const double* v, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i] * v[i];
    return acc;
}

double sum_squares_cplx(const cplx* z, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
    }
    return acc;
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

void floor_quantize(const double* in, double* out, std::size_t n, int bits) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::ldexp(std::floor(std::ldexp(in[i], bits)), -bits);
    }
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double re = 0.0, im = 0.0;
        const cplx* row = a + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            re += row[j].real() * x[j].real() - row[j].imag() * x[j].imag();
            im += row[j].real() * x[j].imag() + row[j].imag() * x[j].real();
        }
        y[i] = {re, im};
    }
}

void matvec_adj(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
    // y_j = sum_i conj(a_ij) x_i; walk rows to keep the access pattern linear.
    for (std::size_t j = 0; j < n; ++j) y[j] = {0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const cplx* row = a + i * n;
        const cplx xi = x[i];
        for (std::size_t j = 0; j < n; ++j) {
            double re = row[j].real() * xi.real() + row[j].imag() * xi.imag();
            double im = row[j].real() * xi.imag() - row[j].imag() * xi.real();
            y[j] += cplx{re, im};
        }
    }
}

double diff_norm_sq(const cplx* a, const cplx* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dr = a[i].real() - b[i].real();
        double di = a[i].imag() - b[i].imag();
        acc += dr * dr + di * di;
    }
    return acc;
}

extern const KernelTable kTable;
const KernelTable kTable = {
    &sum_squares, &sum_squares_cplx, &dot_conj, &floor_quantize,
    &matvec,      &matvec_adj,       &diff_norm_sq,
};

} // namespace qrs::simd::scalar
