#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qrs/refdesign.hpp"

namespace qrs {

// Plan for one rejection-sampling run: sampling dimension M (a power of 2),
// ratio accuracy budget eps_tilde, fixed-point bits b, and amplification
// rounds R for the target accuracy eps.
struct SamplingPlan {
    std::uint64_t m = 0;
    double eps = 0.0;
    double eps_tilde = 0.0;
    int bits = 0;
    int rounds = 0; // from the ideal norms
    double nf = 0.0;
    double ng = 0.0;
    double p_succ = 0.0;
};

// Acceptance clause C(f~, g~, m). The Standard clause counts
// m <= M * q_b(f/g); the rearranged kinds evaluate the equivalent
// integer/exponential forms. bits == 0 means exact (unquantized) arithmetic.
struct ClauseSpec {
    enum class Kind { Standard, Inverse1d, Inverse3d, TanhExp, Custom };

    Kind kind = Kind::Standard;
    // Custom predicate on (accept m?) given x-index and m; must be a
    // threshold clause in m.
    std::function<bool(std::size_t, std::uint64_t)> custom;

    static ClauseSpec standard() { return {Kind::Standard, nullptr}; }
    static ClauseSpec inverse_1d() { return {Kind::Inverse1d, nullptr}; }
    static ClauseSpec inverse_3d() { return {Kind::Inverse3d, nullptr}; }
    static ClauseSpec tanh_exp() { return {Kind::TanhExp, nullptr}; }
};

struct PreparedState {
    AmplitudeVector output;
    double p0 = 0.0;
    double p_r = 0.0;
    double dist = 0.0;
    int rounds_used = 0;      // planned from the ideal norms
    int rounds_quantized = 0; // recomputed from the quantized norm
    std::uint64_t m = 0;
    std::vector<std::string> warnings;
};

/// R = ceil(pi / (4 asin(Nf/Ng)) - 1/2); PreconditionError unless 0 < Nf <= Ng.
int rounds(double nf, double ng);

/// Smallest power-of-2 M meeting the sampling-dimension bound, with the
/// matching eps_tilde and bit budget. Points with f(x) = 0 are excluded from
/// the ratio extrema. PreconditionError on a dominance violation.
SamplingPlan choose_m(const TargetSpec& f, const ReferenceSpec& g, const DomainSpec& d,
                      double eps);

/// N_f^2 / N_g^2; PreconditionError on a dominance violation.
double success_probability(const TargetSpec& f, const ReferenceSpec& g, const DomainSpec& d);

/// Amplitude-level run of the sampling circuit: quantized acceptance counts,
/// normalized output with phases, distance to the direct-normalization oracle.
PreparedState simulate(const TargetSpec& f, const ReferenceSpec& g, const DomainSpec& d,
                       const SamplingPlan& plan, const ClauseSpec& clause = ClauseSpec::standard());

struct ClauseValidation {
    double max_error = 0.0; // max_x |A(x) - M f(x)/g(x)|
    bool pass = false;      // max_error <= M eps_tilde + 1 everywhere
};

/// Exhaustive m-scan of the clause; ClauseShapeError if not a threshold clause.
ClauseValidation validate_clause(const ClauseSpec& clause, const TargetSpec& f,
                                 const ReferenceSpec& g, const DomainSpec& d,
                                 std::uint64_t m, double eps_tilde, int bits);

/// Acceptance count A(x) for one domain point (closed form, no m loop).
std::uint64_t acceptance_count(const ClauseSpec& clause, const TargetSpec& f,
                               const ReferenceSpec& g, const DomainSpec& d,
                               std::size_t index, std::uint64_t m, int bits);

/// Comparator replaced by a coherent rotation with a b_delta-bit angle.
PreparedState simulate_rotation_variant(const TargetSpec& f, const ReferenceSpec& g,
                                        const DomainSpec& d, int b_delta);

/// Per-round success probabilities sin^2((2r+1) theta), r = 0..R.
std::vector<double> amplify_trace(double p0, int r);

// Named target + reference + clause bundles used by the CLI and tests.
struct CatalogEntry {
    std::string name;
    TargetSpec target;
    DomainSpec domain;
    ReferenceSpec reference;
    ClauseSpec clause;
};

CatalogEntry catalog_powerlaw_1d(double beta, int n);
CatalogEntry catalog_powerlaw_3d(int l);
CatalogEntry catalog_gaussian(double sigma, std::uint64_t n_points);
CatalogEntry catalog_tanh(std::uint64_t n_points);
CatalogEntry catalog_exponential(double beta, std::uint64_t n_points);
/// Flattened mesh demo: custom-table target over the discretization with the
/// cell levels as a run-length constant reference.
CatalogEntry catalog_mesh2d(int n, const Mesh2dGrid& grid = {});

} // namespace qrs
