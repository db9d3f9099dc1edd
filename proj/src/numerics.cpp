#include "qrs/numerics.hpp"

#include <bit>
#include <cmath>

#include "qrs/simd.hpp"

namespace qrs {

double norm(const AmplitudeVector& v) {
    return std::sqrt(simd::sum_squares(v.entries.data(), v.entries.size()));
}

AmplitudeVector normalize(const AmplitudeVector& v) {
    double nrm = norm(v);
    if (!(nrm > 0.0)) {
        throw DegenerateInput("normalize: zero vector");
    }
    AmplitudeVector out(v.entries);
    double inv = 1.0 / nrm;
    for (auto& z : out.entries) z *= inv;
    return out;
}

double distance(const AmplitudeVector& a, const AmplitudeVector& b) {
    if (a.dim() != b.dim()) {
        throw ShapeError("distance: dimension mismatch " + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()));
    }
    return std::sqrt(simd::diff_norm_sq(a.entries.data(), b.entries.data(), a.dim()));
}

FixedPointValue quantize(double v, int bits) {
    if (v < 0.0) {
        throw DomainError("quantize: negative value " + std::to_string(v));
    }
    if (bits < 1) {
        throw DomainError("quantize: bits must be >= 1");
    }
    return FixedPointValue{bits, quantize_value(v, bits)};
}

double quantize_value(double v, int bits) {
    // Power-of-two scaling is exact; only the floor discards information.
    return std::ldexp(std::floor(std::ldexp(v, bits)), -bits);
}

std::uint64_t next_pow2(std::uint64_t v) {
    if (v <= 1) return 1;
    return std::bit_ceil(v);
}

bool is_pow2(std::uint64_t v) { return v != 0 && std::has_single_bit(v); }

int bits_for_accuracy(double x) {
    if (!(x > 0.0)) return 62;
    // -log2(x) stays finite for subnormal x where 1/x would overflow
    double b = std::ceil(-std::log2(x) - 1e-12);
    if (!(b >= 1.0)) return 1;
    if (b > 62.0) return 62;
    return static_cast<int>(b);
}

} // namespace qrs
