#include <doctest.h>

#include <cmath>

#include "qrs/numerics.hpp"
#include "qrs/targets.hpp"

using namespace qrs;

TEST_CASE("interval domain enumerates integers") {
    auto d = DomainSpec::interval_1d(1, 3);
    REQUIRE(d.size() == 3);
    CHECK(d.point(0) == 1.0);
    CHECK(d.point(2) == 3.0);
}

TEST_CASE("scaled domain is symmetric, zero-free, spacing delta") {
    auto d = DomainSpec::scaled_interval_1d(8);
    REQUIRE(d.size() == 8);
    CHECK(d.point(0) == doctest::Approx(-0.5 + 0.5 / 8.0));
    CHECK(d.point(3) == doctest::Approx(-1.0 / 16.0));
    CHECK(d.point(4) == doctest::Approx(1.0 / 16.0));
    CHECK(d.point(7) == doctest::Approx(0.5 - 0.5 / 8.0));
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        CHECK(d.point(i + 1) - d.point(i) == doctest::Approx(d.delta));
    }
    auto h = DomainSpec::scaled_interval_1d(8, true);
    REQUIRE(h.size() == 4);
    CHECK(h.point(0) == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("3d octant excludes the origin") {
    auto d = DomainSpec::grid3d_octant(2);
    REQUIRE(d.size() == 63);
    auto p0 = d.point3(0);
    CHECK(p0[0] == 1);
    CHECK(p0[1] == 0);
    CHECK(p0[2] == 0);
    auto last = d.point3(62);
    CHECK(last[0] == 3);
    CHECK(last[1] == 3);
    CHECK(last[2] == 3);
}

TEST_CASE("power law tabulation on [1,3]") {
    auto v = tabulate(TargetSpec::power_law(1.0), DomainSpec::interval_1d(1, 3));
    CHECK(v[0].real() == doctest::Approx(1.0));
    CHECK(v[1].real() == doctest::Approx(0.5));
    CHECK(v[2].real() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("power law undefined at zero") {
    auto d = DomainSpec::interval_1d(0, 3);
    CHECK_THROWS_AS(tabulate(TargetSpec::power_law(1.0), d), DomainError);
}

TEST_CASE("tanh entry at delta/2 and sign phase") {
    auto d = DomainSpec::scaled_interval_1d(1 << 10);
    auto t = TargetSpec::tanh_target();
    std::size_t first_pos = d.size() / 2;
    CHECK(t.magnitude(d, first_pos) == doctest::Approx(std::tanh(d.delta / 2.0)));
    CHECK(t.phase(d, first_pos) == 0.0);
    CHECK(t.phase(d, 0) == doctest::Approx(std::acos(-1.0)));
    auto v = tabulate(t, d);
    CHECK(v[0].real() < 0.0); // phase pi realizes the odd sign
}

TEST_CASE("mesh2d_eval") {
    CHECK(mesh2d_eval(0.0, 1.7) == doctest::Approx(0.0));
    // direct long-double evaluation as the oracle
    auto oracle = [](long double x, long double y) {
        long double t = x * (1 - x) * (1 - x) * (1 - x) * (1 - x);
        long double s = x * x + y * x;
        long double v = std::exp(-x * y + std::sin(y)) * std::sin(t) +
                        std::sin(9.0L * s) / 9.0L + std::sin(16.0L * s) / 16.0L;
        return static_cast<double>(std::fabs(v));
    };
    CHECK(mesh2d_eval(1.0, 0.0) == doctest::Approx(oracle(1.0L, 0.0L)).epsilon(1e-14));
    CHECK(mesh2d_eval(0.5, 0.0) == doctest::Approx(oracle(0.5L, 0.0L)).epsilon(1e-14));
    CHECK(mesh2d_eval(0.25, -4.0) == doctest::Approx(oracle(0.25L, -4.0L)).epsilon(1e-14));
    CHECK_THROWS_AS(mesh2d_eval(1.5, 0.0), DomainError);
    CHECK_THROWS_AS(mesh2d_eval(0.5, 4.5), DomainError);
}

TEST_CASE("norm_squared: constant, tanh, gaussian") {
    const std::size_t n = 64;
    auto ones = TargetSpec::custom_table(std::vector<double>(n, 1.0));
    CHECK(norm_squared(ones, DomainSpec::interval_1d(1, n)) == doctest::Approx(64.0));

    // quadrature value (2/delta) * (1/2 - tanh(1/2)) for the symmetric grid
    auto d20 = DomainSpec::scaled_interval_1d(std::uint64_t{1} << 20);
    double nf2 = norm_squared(TargetSpec::tanh_target(), d20);
    double want = 2.0 * (0.5 - std::tanh(0.5)) / d20.delta;
    CHECK(std::abs(nf2 - want) / want < 0.01);

    double sigma = 1.0 / 64.0;
    double gf2 = norm_squared(TargetSpec::gaussian(sigma), d20);
    CHECK(gf2 >= (sigma / d20.delta) * std::sqrt(std::acos(-1.0) / 2.0) * (1.0 - 1e-3));
}

TEST_CASE("norm_squared consistent with tabulate") {
    struct Case {
        TargetSpec t;
        DomainSpec d;
    };
    std::vector<Case> cases = {
        {TargetSpec::power_law(1.0), DomainSpec::interval_1d(1, (1 << 16) - 1)},
        {TargetSpec::power_law(0.5), DomainSpec::interval_1d(1, (1 << 12) - 1)},
        {TargetSpec::gaussian(0.125), DomainSpec::scaled_interval_1d(1 << 16)},
        {TargetSpec::tanh_target(), DomainSpec::scaled_interval_1d(1 << 16)},
        {TargetSpec::exponential(1.0), DomainSpec::scaled_interval_1d(1 << 16)},
        {TargetSpec::power_law(1.0), DomainSpec::grid3d_octant(4)},
    };
    for (const auto& c : cases) {
        auto v = tabulate(c.t, c.d);
        double direct = norm(v);
        double via = std::sqrt(norm_squared(c.t, c.d));
        CHECK(std::abs(direct - via) / via < 1e-9);
    }
}

TEST_CASE("symmetric targets have even magnitude") {
    auto d = DomainSpec::scaled_interval_1d(1 << 8);
    for (auto t : {TargetSpec::gaussian(0.1), TargetSpec::tanh_target()}) {
        for (std::size_t i = 0; i < d.size() / 2; ++i) {
            std::size_t mirror = d.size() - 1 - i;
            CHECK(t.magnitude(d, i) == doctest::Approx(t.magnitude(d, mirror)));
        }
    }
}

TEST_CASE("power law strictly decreasing for beta > 0") {
    auto d = DomainSpec::interval_1d(1, 255);
    for (double beta : {0.5, 1.0, 2.0}) {
        auto t = TargetSpec::power_law(beta);
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            CHECK(t.magnitude(d, i) > t.magnitude(d, i + 1));
        }
    }
}

TEST_CASE("target table parsing") {
    auto t = parse_target_table("# qrs-target v1\n1 0.5\n2 0.25 1.5\n3 1.0\n");
    REQUIRE(t.table_magnitude.size() == 3);
    CHECK(t.table_magnitude[1] == doctest::Approx(0.25));
    CHECK(t.table_phase[1] == doctest::Approx(1.5));

    CHECK_THROWS_AS(parse_target_table("1 0.5\n"), DomainError);
    CHECK_THROWS_AS(parse_target_table("# qrs-target v1\nbogus\n"), DomainError);
    CHECK_THROWS_AS(parse_target_table("# qrs-target v1\n1 -2.0\n"), DomainError);
}
