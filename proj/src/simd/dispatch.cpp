#include "qrs/simd.hpp"

#include <cstdlib>
#include <mutex>

#include "qrs/errors.hpp"

namespace qrs::simd {

namespace scalar {
extern const KernelTable kTable;
}
#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
extern const KernelTable kTable;
}
#endif
#if defined(__aarch64__)
namespace neon {
extern const KernelTable kTable;
}
#endif

bool backend_available(Backend b) {
    switch (b) {
    case Backend::Scalar:
        return true;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Backend::Neon:
#if defined(__aarch64__)
        return true;
#else
        return false;
#endif
    }
    return false;
}

const KernelTable& table(Backend b) {
    switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::Avx2:
        if (backend_available(Backend::Avx2)) return avx2::kTable;
        break;
#endif
#if defined(__aarch64__)
    case Backend::Neon:
        return neon::kTable;
#endif
    default:
        break;
    }
    return scalar::kTable;
}

namespace {

Backend pick_backend() {
    if (const char* env = std::getenv("QRS_SIMD")) {
        std::string s(env);
        if (s == "scalar") return Backend::Scalar;
        if (s == "avx2" && backend_available(Backend::Avx2)) return Backend::Avx2;
        if (s == "neon" && backend_available(Backend::Neon)) return Backend::Neon;
        // "auto" or an unavailable request falls through to detection
    }
    if (backend_available(Backend::Avx2)) return Backend::Avx2;
    if (backend_available(Backend::Neon)) return Backend::Neon;
    return Backend::Scalar;
}

struct Active {
    Backend backend;
    const KernelTable* kernels;
};

const Active& active_state() {
    static const Active state = [] {
        Backend b = pick_backend();
        return Active{b, &table(b)};
    }();
    return state;
}

} // namespace

const KernelTable& active() { return *active_state().kernels; }
Backend active_backend() { return active_state().backend; }

std::string backend_name(Backend b) {
    switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
    }
    return "scalar";
}

double sum_squares(const double* v, std::size_t n) { return active().sum_squares(v, n); }
double sum_squares(const cplx* z, std::size_t n) { return active().sum_squares_cplx(z, n); }
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) { return active().dot_conj(a, b, n); }
void floor_quantize(const double* in, double* out, std::size_t n, int bits) {
    active().floor_quantize(in, out, n, bits);
}
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) { active().matvec(a, x, y, n); }
void matvec_adj(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
    active().matvec_adj(a, x, y, n);
}
double diff_norm_sq(const cplx* a, const cplx* b, std::size_t n) {
    return active().diff_norm_sq(a, b, n);
}

} // namespace qrs::simd
