#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qrs/errors.hpp"

namespace qrs {

using cplx = std::complex<double>;

// Complex amplitude vector over a discretized domain. Immutable by
// convention: operations return new vectors.
struct AmplitudeVector {
    std::vector<cplx> entries;

    AmplitudeVector() = default;
    explicit AmplitudeVector(std::size_t dim) : entries(dim) {}
    explicit AmplitudeVector(std::vector<cplx> e) : entries(std::move(e)) {}

    std::size_t dim() const { return entries.size(); }
    cplx& operator[](std::size_t i) { return entries[i]; }
    const cplx& operator[](std::size_t i) const { return entries[i]; }
};

// b-bit fixed-point value on the grid {k * 2^-b}, floor semantics.
struct FixedPointValue {
    int bits = 0;
    double value = 0.0;
};

double norm(const AmplitudeVector& v);

/// Unit-normalized copy; throws DegenerateInput on the zero vector.
AmplitudeVector normalize(const AmplitudeVector& v);

/// Euclidean distance; throws ShapeError on dimension mismatch.
double distance(const AmplitudeVector& a, const AmplitudeVector& b);

/// floor(v * 2^bits) / 2^bits for v >= 0; throws DomainError for v < 0.
FixedPointValue quantize(double v, int bits);

/// Scalar convenience for the quantized value itself.
double quantize_value(double v, int bits);

std::uint64_t next_pow2(std::uint64_t v);
bool is_pow2(std::uint64_t v);

/// ceil(log2(1/x)) for x in (0, 1], capped at 62 bits.
int bits_for_accuracy(double x);

} // namespace qrs
