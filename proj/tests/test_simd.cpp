#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qrs/simd.hpp"

using namespace qrs;
using simd::Backend;

namespace {

std::vector<double> random_reals(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

std::vector<simd::cplx> random_cplx(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<simd::cplx> v(n);
    for (auto& z : v) z = {dist(rng), dist(rng)};
    return v;
}

std::vector<Backend> backends_under_test() {
    std::vector<Backend> out{Backend::Scalar};
    if (simd::backend_available(Backend::Avx2)) out.push_back(Backend::Avx2);
    if (simd::backend_available(Backend::Neon)) out.push_back(Backend::Neon);
    return out;
}

} // namespace

TEST_CASE("active backend reports something available") {
    CHECK(simd::backend_available(simd::active_backend()));
}

TEST_CASE("sum_squares equivalence across backends") {
    const auto& ref = simd::table(Backend::Scalar);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
        auto v = random_reals(n, 10 + static_cast<unsigned>(n));
        double want = ref.sum_squares(v.data(), n);
        for (Backend b : backends_under_test()) {
            double got = simd::table(b).sum_squares(v.data(), n);
            CHECK(got == doctest::Approx(want).epsilon(1e-13));
        }
    }
}

TEST_CASE("complex kernels equivalence across backends") {
    const auto& ref = simd::table(Backend::Scalar);
    for (std::size_t n : {1u, 2u, 5u, 33u, 128u}) {
        auto a = random_cplx(n, 3 + static_cast<unsigned>(n));
        auto b = random_cplx(n, 77 + static_cast<unsigned>(n));
        auto want_dot = ref.dot_conj(a.data(), b.data(), n);
        double want_diff = ref.diff_norm_sq(a.data(), b.data(), n);
        for (Backend be : backends_under_test()) {
            auto got = simd::table(be).dot_conj(a.data(), b.data(), n);
            CHECK(std::abs(got - want_dot) < 1e-11 * (1.0 + std::abs(want_dot)));
            double gd = simd::table(be).diff_norm_sq(a.data(), b.data(), n);
            CHECK(gd == doctest::Approx(want_diff).epsilon(1e-13));
        }
    }
}

TEST_CASE("floor_quantize is bit-exact across backends") {
    auto v = random_reals(257, 5);
    for (auto& x : v) x = std::abs(x);
    std::vector<double> want(v.size()), got(v.size());
    for (int bits : {1, 7, 15, 40}) {
        simd::table(Backend::Scalar).floor_quantize(v.data(), want.data(), v.size(), bits);
        for (Backend b : backends_under_test()) {
            simd::table(b).floor_quantize(v.data(), got.data(), v.size(), bits);
            for (std::size_t i = 0; i < v.size(); ++i) CHECK(got[i] == want[i]);
        }
    }
}

TEST_CASE("matvec equivalence across backends") {
    const std::size_t n = 37;
    auto a = random_cplx(n * n, 11);
    auto x = random_cplx(n, 12);
    std::vector<simd::cplx> want(n), got(n);
    simd::table(Backend::Scalar).matvec(a.data(), x.data(), want.data(), n);
    for (Backend b : backends_under_test()) {
        simd::table(b).matvec(a.data(), x.data(), got.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(got[i] - want[i]) < 1e-11 * (1.0 + std::abs(want[i])));
        }
    }
    simd::table(Backend::Scalar).matvec_adj(a.data(), x.data(), want.data(), n);
    for (Backend b : backends_under_test()) {
        simd::table(b).matvec_adj(a.data(), x.data(), got.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(got[i] - want[i]) < 1e-11 * (1.0 + std::abs(want[i])));
        }
    }
}

TEST_CASE("matvec_adj matches conjugate-transpose matvec") {
    const std::size_t n = 16;
    auto a = random_cplx(n * n, 21);
    auto x = random_cplx(n, 22);
    std::vector<simd::cplx> at(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) at[j * n + i] = std::conj(a[i * n + j]);
    std::vector<simd::cplx> via_adj(n), via_transpose(n);
    simd::matvec_adj(a.data(), x.data(), via_adj.data(), n);
    simd::matvec(at.data(), x.data(), via_transpose.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(via_adj[i] - via_transpose[i]) < 1e-11);
    }
}
