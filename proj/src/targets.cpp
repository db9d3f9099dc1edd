#include "qrs/targets.hpp"

#include <cmath>
#include <sstream>

#include "qrs/simd.hpp"

namespace qrs {

DomainSpec DomainSpec::interval_1d(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) throw DomainError("interval_1d: need hi > lo");
    DomainSpec d;
    d.kind = Kind::Interval1d;
    d.lo = lo;
    d.hi = hi;
    return d;
}

DomainSpec DomainSpec::scaled_interval_1d(std::uint64_t n, bool half) {
    if (n < 2 || n % 2 != 0) throw DomainError("scaled_interval_1d: N must be even and > 1");
    DomainSpec d;
    d.kind = Kind::ScaledInterval1d;
    d.n_points = n;
    d.delta = 1.0 / static_cast<double>(n);
    d.half = half;
    return d;
}

DomainSpec DomainSpec::grid3d_octant(int l) {
    if (l < 1) throw DomainError("grid3d_octant: l must be >= 1");
    DomainSpec d;
    d.kind = Kind::Grid3d;
    d.l = l;
    return d;
}

std::size_t DomainSpec::size() const {
    switch (kind) {
    case Kind::Interval1d:
        return static_cast<std::size_t>(hi - lo + 1);
    case Kind::ScaledInterval1d:
        return half ? n_points / 2 : n_points;
    case Kind::Grid3d: {
        std::size_t L = std::size_t{1} << l;
        return L * L * L - 1;
    }
    }
    return 0;
}

double DomainSpec::point(std::size_t i) const {
    switch (kind) {
    case Kind::Interval1d:
        return static_cast<double>(lo + static_cast<std::int64_t>(i));
    case Kind::ScaledInterval1d:
        if (half) {
            return (static_cast<double>(i) + 0.5) * delta;
        }
        return (static_cast<double>(i) + 0.5 - static_cast<double>(n_points) / 2.0) * delta;
    case Kind::Grid3d:
        throw DomainError("point: 3d domain, use point3");
    }
    return 0.0;
}

std::array<std::int64_t, 3> DomainSpec::point3(std::size_t i) const {
    if (kind != Kind::Grid3d) throw DomainError("point3: not a 3d domain");
    const std::size_t L = std::size_t{1} << l;
    std::size_t linear = i + 1; // origin excluded
    return {static_cast<std::int64_t>(linear % L),
            static_cast<std::int64_t>((linear / L) % L),
            static_cast<std::int64_t>(linear / (L * L))};
}

TargetSpec TargetSpec::power_law(double beta) {
    TargetSpec t;
    t.kind = Kind::PowerLaw;
    t.beta = beta;
    return t;
}

TargetSpec TargetSpec::gaussian(double sigma, double center) {
    if (!(sigma > 0.0)) throw DomainError("gaussian: sigma must be positive");
    TargetSpec t;
    t.kind = Kind::Gaussian;
    t.sigma = sigma;
    t.center = center;
    return t;
}

TargetSpec TargetSpec::tanh_target() {
    TargetSpec t;
    t.kind = Kind::Tanh;
    return t;
}

TargetSpec TargetSpec::exponential(double beta) {
    TargetSpec t;
    t.kind = Kind::Exponential;
    t.beta = beta;
    return t;
}

TargetSpec TargetSpec::mesh2d() {
    TargetSpec t;
    t.kind = Kind::Mesh2d;
    return t;
}

TargetSpec TargetSpec::custom_table(std::vector<double> magnitude, std::vector<double> phase) {
    TargetSpec t;
    t.kind = Kind::CustomTable;
    t.table_magnitude = std::move(magnitude);
    t.table_phase = std::move(phase);
    return t;
}

double TargetSpec::magnitude(const DomainSpec& d, std::size_t i) const {
    switch (kind) {
    case Kind::PowerLaw: {
        if (d.kind == DomainSpec::Kind::Grid3d) {
            auto p = d.point3(i);
            double r2 = static_cast<double>(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
            return std::pow(r2, -beta / 2.0);
        }
        double x = d.point(i);
        if (x <= 0.0) {
            throw DomainError("power law undefined at x = " + std::to_string(x));
        }
        return std::pow(x, -beta);
    }
    case Kind::Gaussian: {
        double x = d.point(i) - center;
        return std::exp(-x * x / (sigma * sigma));
    }
    case Kind::Tanh:
        return std::abs(std::tanh(d.point(i)));
    case Kind::Exponential:
        return std::exp(-beta * std::abs(d.point(i)));
    case Kind::Mesh2d:
        throw DomainError("mesh2d target tabulates over a Mesh2dGrid");
    case Kind::CustomTable:
        if (i >= table_magnitude.size()) {
            throw ShapeError("custom table shorter than domain");
        }
        return table_magnitude[i];
    }
    return 0.0;
}

double TargetSpec::phase(const DomainSpec& d, std::size_t i) const {
    switch (kind) {
    case Kind::Tanh:
        // tanh is odd; the amplitude catalog carries the sign as a phase
        return d.point(i) < 0.0 ? std::acos(-1.0) : 0.0;
    case Kind::CustomTable:
        if (table_phase.empty()) return 0.0;
        if (i >= table_phase.size()) throw ShapeError("custom phase table shorter than domain");
        return table_phase[i];
    default:
        return 0.0;
    }
}

AmplitudeVector tabulate(const TargetSpec& t, const DomainSpec& d) {
    const std::size_t n = d.size();
    AmplitudeVector out(n);
    bool any_positive = false;
    for (std::size_t i = 0; i < n; ++i) {
        double mag = t.magnitude(d, i);
        if (!std::isfinite(mag) || mag < 0.0) {
            throw DomainError("target magnitude not finite/nonnegative at index " +
                              std::to_string(i));
        }
        any_positive = any_positive || mag > 0.0;
        double ph = t.phase(d, i);
        out[i] = std::polar(mag, ph);
    }
    if (!any_positive) throw DegenerateInput("tabulate: target vanishes on the whole domain");
    return out;
}

double norm_squared(const TargetSpec& t, const DomainSpec& d) {
    const std::size_t n = d.size();
    std::vector<double> mags(n);
    for (std::size_t i = 0; i < n; ++i) mags[i] = t.magnitude(d, i);
    return simd::sum_squares(mags.data(), n);
}

double mesh2d_eval(double x, double y) {
    if (x < 0.0 || x > 1.0 || y < -4.0 || y > 4.0) {
        throw DomainError("mesh2d_eval: point outside [0,1] x [-4,4]");
    }
    double u = 1.0 - x;
    double t = x * u * u * u * u;
    double s = x * x + y * x;
    double v = std::exp(-x * y + std::sin(y)) * std::sin(t) + std::sin(9.0 * s) / 9.0 +
               std::sin(16.0 * s) / 16.0;
    return std::abs(v);
}

std::vector<double> tabulate_mesh2d(const Mesh2dGrid& grid) {
    std::vector<double> out(grid.size());
    for (std::size_t j = 0; j < grid.ny; ++j) {
        for (std::size_t i = 0; i < grid.nx; ++i) {
            out[j * grid.nx + i] = mesh2d_eval(grid.x_at(i), grid.y_at(j));
        }
    }
    return out;
}

TargetSpec parse_target_table(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::vector<double> mags;
    std::vector<double> phases;
    bool any_phase = false;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (!header_seen) {
            if (line.find("# qrs-target v1") == std::string::npos) {
                throw DomainError("target table: missing '# qrs-target v1' header");
            }
            header_seen = true;
            continue;
        }
        if (line[first] == '#') continue;
        std::istringstream row(line);
        double index = 0.0, mag = 0.0, ph = 0.0;
        if (!(row >> index >> mag)) {
            throw DomainError("target table: malformed row '" + line + "'");
        }
        if (row >> ph) any_phase = true;
        if (!std::isfinite(mag) || mag < 0.0) {
            throw DomainError("target table: magnitude must be finite and >= 0");
        }
        mags.push_back(mag);
        phases.push_back(ph);
    }
    if (!header_seen) throw DomainError("target table: empty input");
    if (mags.empty()) throw DomainError("target table: no rows");
    return TargetSpec::custom_table(std::move(mags), any_phase ? std::move(phases)
                                                               : std::vector<double>{});
}

} // namespace qrs
