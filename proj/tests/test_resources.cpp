#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qrs/resources.hpp"

using namespace qrs;

TEST_CASE("1d power-law table rows") {
    auto r = cost_powerlaw_1d(4, 10, std::ldexp(1.0, -10));
    CHECK(r.u_g == 70);   // 2 b_M n - max{b_M, n}
    CHECK(r.comp == 14);  // b_M + n
    // PREP_c = (1 + 2(n-1)) ceil(log2(1/eps')) = 70, mu-select = 2n-3 = 5
    CHECK(r.prep_g == 75);
    CHECK(r.u_f == 0);
    CHECK(r.rounds == 1);

    auto r2 = cost_powerlaw_1d(2, 10, std::ldexp(1.0, -10));
    CHECK(r2.prep_g == 3 * 10 + 1); // mu-select collapses to a single gate pair
}

TEST_CASE("3d power-law table rows") {
    auto r1 = cost_powerlaw_3d(1, 12);
    CHECK(r1.prep_g == 3); // PREP_c vanishes at l = 1

    auto r = cost_powerlaw_3d(4, 12);
    CHECK(r.prep_g == 3 + 21);
    // 3l^2 - l - 1 + 2 b^2 - b + 2(2b)(2l+2) - max{2b, 2l+2}
    CHECK(r.u_g == 43 + 276 + 480 - 24);
    CHECK(r.comp == 12 + 8 + 2);
    CHECK(r.rounds == 1);
}

TEST_CASE("gaussian cost report") {
    auto r = cost_gaussian(20, 1e-4);
    CHECK(r.prep_g == 17); // ceil(log2(8/eps))
    CHECK(r.comp == 2 * (2 * static_cast<std::int64_t>(r.b_m) - 1));
    CHECK(r.u_g == 0);
    CHECK(r.rounds == 1);
    CHECK(r.b <= r.b_m);

    // frozen from independent evaluation of both published row variants
    CHECK(cost_gaussian(30, 1e-9, false).k_opt == 7);
    CHECK(cost_gaussian(30, 1e-9, true).k_opt == 7);
    CHECK(cost_gaussian(30, 1e-9, false).u_f == 1653 + 16692);
    CHECK(cost_gaussian(30, 1e-9, true).u_f == 1653 + 15417);
}

TEST_CASE("gaussian k scan is exhaustive") {
    for (double eps : {1e-3, 1e-6, 1e-9}) {
        for (int n : {10, 20, 30}) {
            auto r = cost_gaussian(n, eps);
            // re-evaluate the row at every k with an independent expression
            const std::int64_t square = 2 * std::int64_t(n - 1) * (n - 1) - (n - 1);
            const std::int64_t b = r.b;
            for (int k = 2; k <= 2 * (n - 1); ++k) {
                std::int64_t qrom =
                    std::int64_t(k - 1) *
                    (((std::int64_t{1} << ((2 * (n - 1) + k - 1) / k)) - 1) +
                     ((std::int64_t{1} << ((2 * n) / k)) - 1));
                std::int64_t uf = square + qrom + (k - 1) * (2 * b * b - b);
                CHECK(r.u_f <= uf);
            }
        }
    }
}

TEST_CASE("tanh cost report") {
    for (int n : {10, 20, 30}) {
        for (double eps : {1e-3, 1e-9}) {
            auto r = cost_tanh(n, eps);
            CHECK(r.comp == 1);
            CHECK(r.prep_g == 0);
            CHECK(r.rounds == 1);
            // independent re-evaluation of the chosen row
            std::int64_t bd = r.b_delta;
            int bq = (n + r.k_opt - 1) / r.k_opt;
            std::int64_t want = std::int64_t(r.k_opt) * ((std::int64_t{1} << bq) - 2) +
                                std::int64_t(r.k_opt - 1) * (2 * (bd + 2) * (bd + 2) - bd - 2) +
                                (2 * (bd + 2) * (bd + 2) - (bd + 2)) + (bd + 1);
            CHECK(r.u_f == want);
            // and the scan is a minimum
            for (int k = 1; k <= n; ++k) {
                int bqk = (n + k - 1) / k;
                std::int64_t alt = std::int64_t(k) * ((std::int64_t{1} << bqk) - 2) +
                                   std::int64_t(k - 1) * (2 * (bd + 2) * (bd + 2) - bd - 2) +
                                   (2 * (bd + 2) * (bd + 2) - (bd + 2)) + (bd + 1);
                CHECK(r.u_f <= alt);
            }
        }
    }
    // b_delta realizes ceil(log2 1/min{eps/4, 1/N})
    CHECK(cost_tanh(20, 1e-9).b_delta == 32);
    CHECK(cost_tanh(10, 1e-2).b_delta == 10); // 1/N = 2^-10 dominates
    // the large-N, high-precision corner runs at the k = 3 split
    CHECK(cost_tanh(30, 1e-9).k_opt == 3);
}

TEST_CASE("exponential product-state cost") {
    CHECK(cost_exponential(20, 1e-6) == 540); // 20 * ceil(log2(2 pi 20 1e6))
    CHECK(cost_exponential(1, 0.4) == 4);
    // heatmap trend: nondecreasing in n and in 1/eps
    for (int n = 2; n <= 30; ++n) {
        CHECK(cost_exponential(n, 1e-4) >= cost_exponential(n - 1, 1e-4));
        CHECK(cost_exponential(n, 1e-6) >= cost_exponential(n, 1e-3));
    }
}

TEST_CASE("lks baseline") {
    CHECK(cost_lks(1, 0.4) == 4); // b = 4: 1 + 0 + 1 + 0 + 2
    for (double eps : {1e-3, 1e-9}) {
        std::int64_t prev = 0;
        for (int n = 1; n <= 24; ++n) {
            std::int64_t c = cost_lks(n, eps);
            CHECK(c >= prev);
            prev = c;
        }
    }
}

TEST_CASE("call multiplicities") {
    CostReport r;
    r.prep_g = 1;
    r.usp = 1;
    r.u_f = 1;
    r.u_g = 1;
    r.comp = 1;
    r.phase = 1;
    r.rounds = 0;
    CHECK(r.total() == 1 + 2 + 2 + 2 + 1 + 1);
    r.rounds = 1;
    CHECK(r.total() == 3 + 6 + 4 + 4 + 3 + 1);
    CHECK(r.comparison_total() == 3 * 4 + 1);
    // linear in R: equal increments
    CostReport s = r;
    s.rounds = 1;
    std::int64_t t1 = s.total();
    s.rounds = 2;
    std::int64_t t2 = s.total();
    s.rounds = 3;
    CHECK(s.total() - t2 == t2 - t1);
}

TEST_CASE("cost totals are nonnegative and monotone in n") {
    for (auto target : {CostTarget::Inverse1d, CostTarget::Inverse3d, CostTarget::Gaussian,
                        CostTarget::Tanh}) {
        std::int64_t prev = 0;
        for (int n = 4; n <= 28; n += 3) {
            auto r = qrs_cost(target, n, 1e-4);
            CHECK(r.prep_g >= 0);
            CHECK(r.u_f >= 0);
            CHECK(r.u_g >= 0);
            CHECK(r.comp >= 0);
            std::int64_t t = r.total();
            CHECK(t >= prev);
            prev = t;
        }
    }
}

TEST_CASE("crossover examples") {
    CHECK(crossover(CostTarget::Inverse1d, 1e-3) == 16384);
    CHECK(crossover(CostTarget::Inverse3d, 1e-3) == 16384);
    CHECK(crossover(CostTarget::Tanh, 1e-9) == 262144);
}

TEST_CASE("ziggurat boundary overhead") {
    CHECK(ziggurat_boundary_overhead(12, true) == 0);
    CHECK(ziggurat_boundary_overhead(12, false) == 12);
}

TEST_CASE("csv emitter shape") {
    auto rows = sweep(CostTarget::Tanh, 10, 12, 1e-3);
    REQUIRE(rows.size() == 9); // three methods per grid point
    auto csv = to_csv(rows);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "method,targetKind,N,eps,toffoli,k_opt,R");
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (!line.empty()) ++count;
    }
    CHECK(count == rows.size());
    CHECK(csv.find("qrs,tanh,1024,0.001,") != std::string::npos);
}
