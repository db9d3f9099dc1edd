#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrs/numerics.hpp"
#include "qrs/targets.hpp"

namespace qrs {

// One piece g_mu of a piecewise reference, defined over a contiguous range of
// domain indices [lo, hi]. Constant pieces hold `level`; exponential pieces
// evaluate level * exp(-rate * |x - anchor_x|) at the domain point x.
struct ReferencePiece {
    enum class Kind { Constant, Exponential };

    Kind kind = Kind::Constant;
    std::size_t lo = 0;
    std::size_t hi = 0; // inclusive
    double level = 1.0;
    double rate = 0.0;
    double anchor_x = 0.0;
};

struct ReferenceSpec {
    std::vector<ReferencePiece> pieces;
    // 3d shell mode: piece mu covers 2^{mu-1} <= max|x_i| < 2^mu instead of an
    // index range (the shells interleave in the flattened octant order).
    bool shells3d = false;

    std::size_t piece_count() const { return pieces.size(); }
    /// Piece index mu(x) - 1 for a domain index; DomainError if uncovered.
    std::size_t piece_of(const DomainSpec& d, std::size_t index) const;
    double value(const DomainSpec& d, std::size_t index) const;
    /// Pieces must be disjoint, ordered, positive, and cover [0, d.size()).
    void validate(const DomainSpec& d) const;

    std::string to_json() const;
    static ReferenceSpec from_json(const std::string& text);
};

struct CoarseState {
    std::vector<double> coefficients; // c_mu = N_{g_mu}
};

struct DominanceReport {
    bool ok = true;
    std::size_t violation_index = 0;
    double f_value = 0.0;
    double g_value = 0.0;
};

struct LabeledState {
    AmplitudeVector amplitudes;     // indexed by x
    std::vector<std::uint32_t> mu;  // label mu(x) per entry
};

DominanceReport validate_dominance(const ReferenceSpec& g, const TargetSpec& f,
                                   const DomainSpec& d);

/// Normalized reference state; keep_label returns the (mu, x)-indexed form.
AmplitudeVector build_reference_state(const ReferenceSpec& g, const DomainSpec& d);
LabeledState build_reference_state_labeled(const ReferenceSpec& g, const DomainSpec& d);

CoarseState coarse_coefficients(const ReferenceSpec& g, const DomainSpec& d);

/// n constant pieces 2^{-beta(mu-1)} on [2^{mu-1}, 2^mu) for x in [1, 2^n - 1].
ReferenceSpec design_ziggurat_powerlaw(double beta, int n);

/// Max-norm shell ziggurat for 1/|x| on the 3d octant, mu in [1, l].
ReferenceSpec design_ziggurat_powerlaw_3d(double beta, int l);

enum class GaussianTailAnchor {
    HalfSigma, // tail sqrt(e) * exp(-|x|/sigma); value 1 at |x| = sigma/2
    AtSigma,   // tail exp(-|x|/sigma) verbatim
};

struct GaussianReference {
    ReferenceSpec spec;
    std::vector<std::string> warnings;
};

/// Constant-1 core on |x| <= sigma with exponential tails; RegimeError when
/// sigma <= delta.
GaussianReference design_gaussian_reference(double sigma, const DomainSpec& d,
                                            GaussianTailAnchor anchor = GaussianTailAnchor::HalfSigma);

// 2d cell ziggurat over [0,1] x [-4,4].
struct Mesh2dReference {
    std::size_t cells_x = 0;
    std::size_t cells_y = 0;
    std::vector<double> levels;    // cells_x * cells_y, row (x) fastest
    double inflation = 0.0;        // safety margin applied to the levels

    std::size_t cell_count() const { return cells_x * cells_y; }
    std::size_t cell_of(double x, double y) const;
    double level_at(double x, double y) const;
    std::string to_json() const;
};

/// ceil(5n/4) x ceil(2n) cells; each level is the exact maximum of f over the
/// discretization points inside the cell (the tight dominating choice for the
/// discretized target state).
Mesh2dReference design_mesh2d(int n, const Mesh2dGrid& grid = {}, double inflation = 0.0);

/// P_succ = sum f^2 / sum g^2 over the discretization.
double mesh2d_success_probability(const Mesh2dReference& ref, const Mesh2dGrid& grid = {});

} // namespace qrs
