#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrs/numerics.hpp"

namespace qrs {

// Discretized domain. Three kinds:
//  - Interval1d:       x in {lo, lo+1, ..., hi} (integers)
//  - ScaledInterval1d: x = +-(k + 1/2) * delta, delta = 1/N, zero-free grid
//    covering (-1/2, 1/2); half = true keeps only the positive side
//  - Grid3d: the nonnegative octant [0, L-1]^3 minus the origin, L = 2^l
struct DomainSpec {
    enum class Kind { Interval1d, ScaledInterval1d, Grid3d };

    Kind kind = Kind::Interval1d;
    std::int64_t lo = 1;
    std::int64_t hi = 1;
    std::uint64_t n_points = 0; // ScaledInterval1d: full-domain N (= 1/delta)
    double delta = 0.0;
    int l = 0;                  // Grid3d: L = 2^l
    bool half = false;

    static DomainSpec interval_1d(std::int64_t lo, std::int64_t hi);
    static DomainSpec scaled_interval_1d(std::uint64_t n, bool half = false);
    static DomainSpec grid3d_octant(int l);

    std::size_t size() const;
    /// 1d point value (integer domains return the integer as double).
    double point(std::size_t i) const;
    /// Grid3d coordinate of flattened index.
    std::array<std::int64_t, 3> point3(std::size_t i) const;
};

struct TargetSpec {
    enum class Kind { PowerLaw, Gaussian, Tanh, Exponential, Mesh2d, CustomTable };

    Kind kind = Kind::PowerLaw;
    double beta = 1.0;   // PowerLaw / Exponential
    double sigma = 0.125;
    double center = 0.0; // Gaussian center a
    std::vector<double> table_magnitude;
    std::vector<double> table_phase;

    static TargetSpec power_law(double beta);
    static TargetSpec gaussian(double sigma, double center = 0.0);
    static TargetSpec tanh_target();
    static TargetSpec exponential(double beta);
    static TargetSpec mesh2d();
    static TargetSpec custom_table(std::vector<double> magnitude,
                                   std::vector<double> phase = {});

    double magnitude(const DomainSpec& d, std::size_t i) const;
    double phase(const DomainSpec& d, std::size_t i) const;
};

/// Unnormalized tabulation |f(x)| e^{i phi(x)} over the domain points.
AmplitudeVector tabulate(const TargetSpec& t, const DomainSpec& d);

/// N_f^2 = sum_x |f(x)|^2.
double norm_squared(const TargetSpec& t, const DomainSpec& d);

/// The 2d demo function on [0,1] x [-4,4]; DomainError outside.
double mesh2d_eval(double x, double y);

// Uniform cell-centered 2d discretization for the mesh demo. The default is
// the demo's N = 512-point target state.
struct Mesh2dGrid {
    std::size_t nx = 16;
    std::size_t ny = 32;

    std::size_t size() const { return nx * ny; }
    double x_at(std::size_t i) const { return (static_cast<double>(i) + 0.5) / static_cast<double>(nx); }
    double y_at(std::size_t j) const {
        return -4.0 + (static_cast<double>(j) + 0.5) * 8.0 / static_cast<double>(ny);
    }
};

/// Tabulates mesh2d_eval over the flattened grid (row index i varies fastest).
std::vector<double> tabulate_mesh2d(const Mesh2dGrid& grid);

/// Parses the `# qrs-target v1` two/three-column text format.
TargetSpec parse_target_table(const std::string& text);

} // namespace qrs
