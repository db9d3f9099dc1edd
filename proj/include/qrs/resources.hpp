#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qrs/errors.hpp"

namespace qrs {

// Toffoli-count report for one prepared state. `total()` applies the
// per-subroutine call multiplicities of the sampling circuit with R
// amplification rounds; `comparison_total()` is the per-iteration count
// (1+2R)(PREP_g + U_f + U_g + Comp) used for the method-vs-method curves.
struct CostReport {
    std::int64_t prep_g = 0;
    std::int64_t u_f = 0;
    std::int64_t u_g = 0;
    std::int64_t comp = 0;
    std::int64_t usp = 0;
    std::int64_t phase = 0;
    int rounds = 1;

    // parameters the formulas were evaluated at
    int n = 0;
    int l = 0;
    int b_m = 0;
    int b = 0;
    int b_delta = 0;
    int b_qrom = 0;
    int k_opt = 0;
    double eps = 0.0;
    double eps_prime = 0.0;

    std::int64_t total() const;
    std::int64_t comparison_total() const;
};

enum class CostTarget { Inverse1d, Inverse3d, Gaussian, Tanh };

/// Table rows for the 1d power-law (beta = 1) preparation.
CostReport cost_powerlaw_1d(int n, int b_m, double eps_prime);

/// Table rows for the 3d power-law (beta = 1) preparation.
CostReport cost_powerlaw_3d(int l, int b_m);

/// Gaussian preparation with the internal QROM split k scanned for minimum.
/// `text_variant` switches the QROM row to the body-text exponent form.
CostReport cost_gaussian(int n, double eps, bool text_variant = false);

/// tanh preparation, k scanned for minimum.
CostReport cost_tanh(int n, double eps);

/// Product-state exponential reference: n * ceil(log2(2 pi n / eps)).
std::int64_t cost_exponential(int n, double eps);

/// QROM-based multiplexed-rotation baseline.
std::int64_t cost_lks(int n, double eps);

std::int64_t total_qrs_cost(const CostReport& report);

/// Report for a named comparison target at N = 2^n (fills b_m etc. from the
/// planning formulas).
CostReport qrs_cost(CostTarget target, int n, double eps);

/// O(n) Toffoli surcharge for ziggurat region boundaries that are not powers
/// of two; zero otherwise.
std::int64_t ziggurat_boundary_overhead(int n, bool pow2_boundaries);

/// Smallest N = 2^n in [2^2, 2^30] with QRS comparison cost <= LKS cost;
/// throws NoCrossover if none.
std::uint64_t crossover(CostTarget target, double eps);

struct SweepRow {
    std::string method;  // "qrs" | "lks"
    std::string target_kind;
    std::uint64_t n_points = 0;
    double eps = 0.0;
    std::int64_t toffoli = 0;
    int k_opt = 0;
    int rounds = 0;
};

std::vector<SweepRow> sweep(CostTarget target, int n_lo, int n_hi, double eps);

/// CSV emitter: header + one row per grid point.
std::string to_csv(const std::vector<SweepRow>& rows);

/// Least-squares slope of log2(cost) vs log2(N) over n in [n_lo, n_hi].
double loglog_slope_qrs(CostTarget target, int n_lo, int n_hi, double eps);
double loglog_slope_lks(int n_lo, int n_hi, double eps);

} // namespace qrs
