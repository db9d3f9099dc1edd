#include "qrs/blockenc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "qrs/numerics.hpp"
#include "qrs/simd.hpp"

namespace qrs {

namespace {

constexpr std::size_t kDenseCap = 1536; // dense assembly/verification limit

void check_dense_cap(std::size_t n) {
    if (n > kDenseCap) {
        throw ModelError("dense block-encoding verification capped at N = " +
                         std::to_string(kDenseCap));
    }
}

int shell_index_inf(std::int64_t m) {
    // k >= 1 with 2^{k-1} <= m < 2^k
    int k = 1;
    while ((std::int64_t{1} << k) <= m) ++k;
    return k;
}

struct Coords {
    std::int64_t a, b, c;
};

Coords decode3(std::size_t idx, std::int64_t side) {
    auto s = static_cast<std::int64_t>(idx);
    return {s % side, (s / side) % side, s / (side * side)};
}

} // namespace

MatrixSpec MatrixSpec::dense(std::size_t n, std::vector<cplx> entries) {
    if (entries.size() != n * n) throw ShapeError("dense matrix: wrong entry count");
    MatrixSpec a;
    a.structure = Structure::Dense;
    a.n = n;
    a.entries = std::move(entries);
    return a;
}

MatrixSpec MatrixSpec::toeplitz_1d(std::size_t n, std::vector<double> magnitude,
                                   std::vector<double> phase) {
    if (magnitude.size() != 2 * n - 1) {
        throw ShapeError("toeplitz_1d: need 2N-1 diagonal values");
    }
    if (!phase.empty() && phase.size() != magnitude.size()) {
        throw ShapeError("toeplitz_1d: phase table size mismatch");
    }
    MatrixSpec a;
    a.structure = Structure::Toeplitz1d;
    a.n = n;
    a.toeplitz_magnitude = std::move(magnitude);
    a.toeplitz_phase = std::move(phase);
    return a;
}

MatrixSpec MatrixSpec::coulomb_3d(int nu) {
    if (nu < 1) throw DomainError("coulomb_3d: nu must be >= 1");
    MatrixSpec a;
    a.structure = Structure::Coulomb3d;
    a.nu = nu;
    a.side = (1 << nu) + 1;
    a.n = static_cast<std::size_t>(a.side) * a.side * a.side;
    return a;
}

cplx MatrixSpec::at(std::size_t i, std::size_t j) const {
    switch (structure) {
    case Structure::Dense:
        return entries[i * n + j];
    case Structure::Toeplitz1d: {
        std::int64_t delta = static_cast<std::int64_t>(j) - static_cast<std::int64_t>(i);
        std::size_t idx = static_cast<std::size_t>(delta + static_cast<std::int64_t>(n) - 1);
        double ph = toeplitz_phase.empty() ? 0.0 : toeplitz_phase[idx];
        return std::polar(toeplitz_magnitude[idx], ph);
    }
    case Structure::Toeplitz3d:
    case Structure::Coulomb3d: {
        Coords ci = decode3(i, side), cj = decode3(j, side);
        std::int64_t d0 = ci.a - cj.a, d1 = ci.b - cj.b, d2 = ci.c - cj.c;
        if (d0 == 0 && d1 == 0 && d2 == 0) return {1.0, 0.0};
        double r2 = static_cast<double>(d0 * d0 + d1 * d1 + d2 * d2);
        return {1.0 / r2, 0.0};
    }
    }
    return {};
}

double MatrixSpec::magnitude_at(std::size_t i, std::size_t j) const { return std::abs(at(i, j)); }

BlockModel BlockModel::lcu_implicit() { return {Kind::LcuImplicit, {}, {}, 0, false}; }
BlockModel BlockModel::lcu_explicit(std::vector<double> g_over_delta) {
    return {Kind::LcuExplicit, std::move(g_over_delta), {}, 0, false};
}
BlockModel BlockModel::ziggurat() { return {Kind::Ziggurat, {}, {}, 0, false}; }
BlockModel BlockModel::ziggurat_single() { return {Kind::Ziggurat, {}, {}, 0, true}; }
BlockModel BlockModel::row_column(std::vector<double> g_dense) {
    return {Kind::RowColumn, {}, std::move(g_dense), 0, false};
}
BlockModel BlockModel::column(std::vector<double> g_dense) {
    return {Kind::Column, {}, std::move(g_dense), 0, false};
}

namespace {

// Shell-based reference value for the Coulomb kernel in the difference index.
double coulomb_shell_g(std::int64_t d0, std::int64_t d1, std::int64_t d2) {
    std::int64_t m = std::max({std::llabs(d0), std::llabs(d1), std::llabs(d2)});
    if (m == 0) return 1.0;
    int k = shell_index_inf(m);
    return std::ldexp(1.0, -2 * (k - 1));
}

// Dyadic shell ziggurat over |delta| for a generic 1d Toeplitz kernel:
// g(delta) = max |f| over the shell 2^{k-1} <= |delta| < 2^k.
std::vector<double> default_delta_ziggurat(const MatrixSpec& a) {
    const auto n = static_cast<std::int64_t>(a.n);
    std::vector<double> g(2 * a.n - 1, 0.0);
    std::vector<double> shell_max;
    for (std::int64_t delta = -(n - 1); delta <= n - 1; ++delta) {
        double fv = a.toeplitz_magnitude[static_cast<std::size_t>(delta + n - 1)];
        int k = delta == 0 ? 0 : shell_index_inf(std::llabs(delta));
        if (shell_max.size() <= static_cast<std::size_t>(k)) shell_max.resize(k + 1, 0.0);
        shell_max[k] = std::max(shell_max[k], fv);
    }
    for (std::int64_t delta = -(n - 1); delta <= n - 1; ++delta) {
        int k = delta == 0 ? 0 : shell_index_inf(std::llabs(delta));
        g[static_cast<std::size_t>(delta + n - 1)] = shell_max[k];
    }
    return g;
}

// Elementwise reference used by the explicit-sampling models.
struct ElementReference {
    std::vector<double> g; // row-major
    std::size_t n = 0;

    double at(std::size_t i, std::size_t j) const { return g[i * n + j]; }
};

ElementReference dense_reference(const BlockModel& model, const MatrixSpec& a) {
    ElementReference ref;
    ref.n = a.n;
    ref.g.resize(a.n * a.n);
    if (!model.g_dense.empty()) {
        if (model.g_dense.size() != a.n * a.n) {
            throw ShapeError("model reference G: wrong size");
        }
        ref.g = model.g_dense;
        return ref;
    }
    for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t j = 0; j < a.n; ++j) {
            double v;
            if (a.structure == MatrixSpec::Structure::Coulomb3d) {
                Coords ci = decode3(i, a.side), cj = decode3(j, a.side);
                v = coulomb_shell_g(ci.a - cj.a, ci.b - cj.b, ci.c - cj.c);
            } else {
                v = a.magnitude_at(i, j);
            }
            ref.g[i * a.n + j] = v;
        }
    }
    return ref;
}

double norm_one(const ElementReference& r) { // max column absolute sum
    double best = 0.0;
    for (std::size_t j = 0; j < r.n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.n; ++i) s += r.at(i, j);
        best = std::max(best, s);
    }
    return best;
}

double norm_inf(const ElementReference& r) { // max row absolute sum
    double best = 0.0;
    for (std::size_t i = 0; i < r.n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < r.n; ++j) s += r.at(i, j);
        best = std::max(best, s);
    }
    return best;
}

double norm_frob(const ElementReference& r) {
    return std::sqrt(simd::sum_squares(r.g.data(), r.g.size()));
}

// Max-norm shell partition of the matrix into submatrices S_k with uniform
// bounds g_k and padded sparsities d_k, d'_k.
struct ZigguratPartition {
    std::vector<double> g_k;
    std::vector<std::size_t> d_k;      // padded row count per column
    std::vector<std::size_t> d_prime;  // padded column count per row
    std::vector<int> part;             // k(i,j), row-major
    double alpha = 0.0;
};

ZigguratPartition shell_partition(const MatrixSpec& a, bool single) {
    ZigguratPartition z;
    const std::size_t n = a.n;
    z.part.resize(n * n);
    int kmax = 0;
    auto classify = [&](std::size_t i, std::size_t j) -> int {
        if (a.magnitude_at(i, j) <= 0.0) return -1; // outside the support
        if (single) return 0;
        if (i == j) return 0;
        if (a.structure == MatrixSpec::Structure::Coulomb3d ||
            a.structure == MatrixSpec::Structure::Toeplitz3d) {
            Coords ci = decode3(i, a.side), cj = decode3(j, a.side);
            std::int64_t m = std::max({std::llabs(ci.a - cj.a), std::llabs(ci.b - cj.b),
                                       std::llabs(ci.c - cj.c)});
            return shell_index_inf(m);
        }
        std::int64_t delta = static_cast<std::int64_t>(j) - static_cast<std::int64_t>(i);
        return shell_index_inf(std::llabs(delta));
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            int k = classify(i, j);
            z.part[i * n + j] = k;
            kmax = std::max(kmax, k);
        }
    }
    z.g_k.assign(kmax + 1, 0.0);
    z.d_k.assign(kmax + 1, 0);
    z.d_prime.assign(kmax + 1, 0);
    std::vector<std::size_t> col_count(static_cast<std::size_t>(kmax + 1) * n, 0);
    std::vector<std::size_t> row_count(static_cast<std::size_t>(kmax + 1) * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            int k = z.part[i * n + j];
            if (k < 0) continue;
            z.g_k[k] = std::max(z.g_k[k], a.magnitude_at(i, j));
            ++col_count[static_cast<std::size_t>(k) * n + j];
            ++row_count[static_cast<std::size_t>(k) * n + i];
        }
    }
    for (int k = 0; k <= kmax; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            z.d_k[k] = std::max(z.d_k[k], col_count[static_cast<std::size_t>(k) * n + j]);
            z.d_prime[k] = std::max(z.d_prime[k], row_count[static_cast<std::size_t>(k) * n + j]);
        }
        z.alpha += std::sqrt(static_cast<double>(z.d_k[k]) * static_cast<double>(z.d_prime[k])) *
                   z.g_k[k];
    }
    return z;
}

void require_toeplitz(const BlockModel&, const MatrixSpec& a) {
    if (a.structure != MatrixSpec::Structure::Toeplitz1d &&
        a.structure != MatrixSpec::Structure::Toeplitz3d &&
        a.structure != MatrixSpec::Structure::Coulomb3d) {
        throw ModelError("lcu models need a Toeplitz-structured matrix");
    }
}

std::vector<double> explicit_delta_reference(const BlockModel& model, const MatrixSpec& a) {
    if (a.structure == MatrixSpec::Structure::Toeplitz1d) {
        std::vector<double> g =
            model.g_over_delta.empty() ? default_delta_ziggurat(a) : model.g_over_delta;
        if (g.size() != 2 * a.n - 1) throw ShapeError("g(delta): wrong size");
        for (std::size_t idx = 0; idx < g.size(); ++idx) {
            if (g[idx] < a.toeplitz_magnitude[idx] * (1.0 - 1e-12)) {
                throw PreconditionError("g(delta) does not dominate |f(delta)|");
            }
        }
        return g;
    }
    // coulomb: shell reference in delta space, enumerated on demand
    return {};
}

std::string model_name(BlockModel::Kind k) {
    switch (k) {
    case BlockModel::Kind::LcuImplicit: return "lcu-implicit";
    case BlockModel::Kind::LcuExplicit: return "lcu-explicit";
    case BlockModel::Kind::Ziggurat: return "ziggurat";
    case BlockModel::Kind::RowColumn: return "row-column";
    case BlockModel::Kind::Column: return "column";
    }
    return "?";
}

struct SamplingBudget {
    std::uint64_t m = 0;
    int bits = 0;
};

// Entrywise transplant of the sampling-dimension rule: the operator-norm
// budget comes through sqrt(|G|_1 |G|_inf) on the elementwise reference.
SamplingBudget matrix_budget(double g1, double ginf, double max_g_over_a, double min_a_over_g,
                             double eps) {
    SamplingBudget b;
    double s = std::sqrt(g1 * ginf);
    double bound = std::max(2.0 * s / eps, 2.0 * max_g_over_a);
    b.m = bound >= std::ldexp(1.0, 62) ? (std::uint64_t{1} << 62)
                                       : next_pow2(static_cast<std::uint64_t>(std::ceil(bound)));
    b.bits = bits_for_accuracy(std::min(eps / (2.0 * s), min_a_over_g / 2.0));
    return b;
}

double sampled_ratio(double a_mag, double g_val, std::uint64_t m, int bits) {
    if (a_mag <= 0.0 || g_val <= 0.0) return 0.0;
    double r = std::min(1.0, a_mag / g_val);
    double rq = quantize_value(r, bits);
    double t = static_cast<double>(m) * rq;
    if (t >= 9.007199254740992e15) return rq;
    return std::floor(t) / static_cast<double>(m);
}

} // namespace

double rescale_factor(const BlockModel& model, const MatrixSpec& a) {
    switch (model.kind) {
    case BlockModel::Kind::LcuImplicit: {
        require_toeplitz(model, a);
        double alpha = 0.0;
        if (a.structure == MatrixSpec::Structure::Toeplitz1d) {
            for (double v : a.toeplitz_magnitude) alpha += v;
        } else {
            std::int64_t s = a.side;
            for (std::int64_t d0 = -(s - 1); d0 <= s - 1; ++d0)
                for (std::int64_t d1 = -(s - 1); d1 <= s - 1; ++d1)
                    for (std::int64_t d2 = -(s - 1); d2 <= s - 1; ++d2) {
                        if (d0 == 0 && d1 == 0 && d2 == 0) {
                            alpha += 1.0;
                        } else {
                            alpha += 1.0 / static_cast<double>(d0 * d0 + d1 * d1 + d2 * d2);
                        }
                    }
        }
        return alpha;
    }
    case BlockModel::Kind::LcuExplicit: {
        require_toeplitz(model, a);
        if (a.structure == MatrixSpec::Structure::Toeplitz1d) {
            std::vector<double> g = explicit_delta_reference(model, a);
            double alpha = 0.0;
            for (double v : g) alpha += v;
            return alpha;
        }
        std::int64_t s = a.side;
        double alpha = 0.0;
        for (std::int64_t d0 = -(s - 1); d0 <= s - 1; ++d0)
            for (std::int64_t d1 = -(s - 1); d1 <= s - 1; ++d1)
                for (std::int64_t d2 = -(s - 1); d2 <= s - 1; ++d2)
                    alpha += coulomb_shell_g(d0, d1, d2);
        return alpha;
    }
    case BlockModel::Kind::Ziggurat:
        return shell_partition(a, model.zig_single).alpha;
    case BlockModel::Kind::RowColumn: {
        ElementReference ref = dense_reference(model, a);
        return std::sqrt(norm_one(ref) * norm_inf(ref));
    }
    case BlockModel::Kind::Column:
        return norm_frob(dense_reference(model, a));
    }
    throw ModelError("unknown model");
}

BlockEncodingResult build(const BlockModel& model, const MatrixSpec& a, double eps) {
    check_dense_cap(a.n);
    if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("build: eps must be in (0,1)");
    BlockEncodingResult res;
    res.n = a.n;
    res.model_name = model_name(model.kind);
    res.alpha = rescale_factor(model, a);
    if (!(res.alpha > 0.0)) throw DegenerateInput("build: matrix has no support");
    res.effective.assign(a.n * a.n, cplx{0.0, 0.0});

    const bool explicit_sampling = model.kind != BlockModel::Kind::LcuImplicit;

    if (model.kind == BlockModel::Kind::LcuImplicit ||
        model.kind == BlockModel::Kind::LcuExplicit) {
        // Assemble through the circulant embedding: enumerate delta, flag the
        // output index in range, and drop flagged branches.
        if (a.structure == MatrixSpec::Structure::Toeplitz1d) {
            const auto n = static_cast<std::int64_t>(a.n);
            std::vector<double> g;
            SamplingBudget budget;
            if (explicit_sampling) {
                g = explicit_delta_reference(model, a);
                double alpha_g = res.alpha;
                double max_goa = 0.0, min_aog = 1.0;
                for (std::size_t idx = 0; idx < g.size(); ++idx) {
                    double fv = a.toeplitz_magnitude[idx];
                    if (fv <= 0.0) continue;
                    max_goa = std::max(max_goa, g[idx] / fv);
                    min_aog = std::min(min_aog, fv / g[idx]);
                }
                budget = matrix_budget(alpha_g, alpha_g, max_goa, min_aog, eps);
                res.m = budget.m;
                res.bits = budget.bits;
            }
            for (std::int64_t delta = -(n - 1); delta <= n - 1; ++delta) {
                std::size_t idx = static_cast<std::size_t>(delta + n - 1);
                double mag = a.toeplitz_magnitude[idx];
                double ph = a.toeplitz_phase.empty() ? 0.0 : a.toeplitz_phase[idx];
                double weight;
                if (explicit_sampling) {
                    weight = g[idx] * sampled_ratio(mag, g[idx], budget.m, budget.bits);
                } else {
                    weight = mag;
                }
                cplx value = std::polar(weight / res.alpha, ph);
                for (std::int64_t j = 0; j < n; ++j) {
                    std::int64_t i = j - delta;
                    if (i < 0 || i >= n) continue; // flagged out of range
                    res.effective[static_cast<std::size_t>(i) * a.n +
                                  static_cast<std::size_t>(j)] = value;
                }
            }
        } else {
            require_toeplitz(model, a);
            const std::int64_t s = a.side;
            SamplingBudget budget;
            if (explicit_sampling) {
                double alpha_g = res.alpha;
                double max_goa = 0.0, min_aog = 1.0;
                for (std::int64_t d0 = -(s - 1); d0 <= s - 1; ++d0)
                    for (std::int64_t d1 = -(s - 1); d1 <= s - 1; ++d1)
                        for (std::int64_t d2 = -(s - 1); d2 <= s - 1; ++d2) {
                            if (d0 == 0 && d1 == 0 && d2 == 0) continue;
                            double fv = 1.0 / static_cast<double>(d0 * d0 + d1 * d1 + d2 * d2);
                            double gv = coulomb_shell_g(d0, d1, d2);
                            max_goa = std::max(max_goa, gv / fv);
                            min_aog = std::min(min_aog, fv / gv);
                        }
                budget = matrix_budget(alpha_g, alpha_g, max_goa, min_aog, eps);
                res.m = budget.m;
                res.bits = budget.bits;
            }
            for (std::int64_t d0 = -(s - 1); d0 <= s - 1; ++d0) {
                for (std::int64_t d1 = -(s - 1); d1 <= s - 1; ++d1) {
                    for (std::int64_t d2 = -(s - 1); d2 <= s - 1; ++d2) {
                        bool diag = d0 == 0 && d1 == 0 && d2 == 0;
                        double mag =
                            diag ? 1.0 : 1.0 / static_cast<double>(d0 * d0 + d1 * d1 + d2 * d2);
                        double weight;
                        if (explicit_sampling) {
                            double gv = coulomb_shell_g(d0, d1, d2);
                            weight = gv * sampled_ratio(mag, gv, budget.m, budget.bits);
                        } else {
                            weight = mag;
                        }
                        double value = weight / res.alpha;
                        for (std::int64_t jc = 0; jc < s; ++jc)
                            for (std::int64_t jb = 0; jb < s; ++jb)
                                for (std::int64_t ja = 0; ja < s; ++ja) {
                                    std::int64_t ia = ja - d0, ib = jb - d1, ic = jc - d2;
                                    if (ia < 0 || ia >= s || ib < 0 || ib >= s || ic < 0 ||
                                        ic >= s) {
                                        continue; // flagged out of range
                                    }
                                    std::size_t i = static_cast<std::size_t>(
                                        (ic * s + ib) * s + ia);
                                    std::size_t j = static_cast<std::size_t>(
                                        (jc * s + jb) * s + ja);
                                    res.effective[i * a.n + j] = cplx{value, 0.0};
                                }
                    }
                }
            }
        }
    } else {
        // elementwise reference models
        ElementReference ref;
        if (model.kind == BlockModel::Kind::Ziggurat) {
            ZigguratPartition z = shell_partition(a, model.zig_single);
            ref.n = a.n;
            ref.g.resize(a.n * a.n);
            for (std::size_t ij = 0; ij < a.n * a.n; ++ij) {
                ref.g[ij] = z.part[ij] < 0 ? 0.0 : z.g_k[static_cast<std::size_t>(z.part[ij])];
            }
        } else {
            ref = dense_reference(model, a);
        }
        double max_goa = 0.0, min_aog = 1.0;
        for (std::size_t i = 0; i < a.n; ++i) {
            for (std::size_t j = 0; j < a.n; ++j) {
                double av = a.magnitude_at(i, j);
                double gv = ref.at(i, j);
                if (av > gv * (1.0 + 1e-12)) {
                    throw PreconditionError("reference matrix does not dominate |A| at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
                }
                if (av <= 0.0) continue;
                max_goa = std::max(max_goa, gv / av);
                min_aog = std::min(min_aog, av / gv);
            }
        }
        SamplingBudget budget =
            matrix_budget(norm_one(ref), norm_inf(ref), max_goa, min_aog, eps);
        if (model.m != 0) budget.m = model.m;
        res.m = budget.m;
        res.bits = budget.bits;
        for (std::size_t i = 0; i < a.n; ++i) {
            for (std::size_t j = 0; j < a.n; ++j) {
                cplx av = a.at(i, j);
                double mag = std::abs(av);
                double gv = ref.at(i, j);
                double weight = gv * sampled_ratio(mag, gv, budget.m, budget.bits);
                double ph = mag > 0.0 ? std::arg(av) : 0.0;
                res.effective[i * a.n + j] = std::polar(weight / res.alpha, ph);
            }
        }
    }

    res.op_error = verify(res, a);
    return res;
}

double operator_norm(const std::vector<cplx>& mat, std::size_t n) {
    if (mat.size() != n * n) throw ShapeError("operator_norm: matrix size mismatch");
    std::vector<cplx> v(n), y(n), z(n);
    for (std::size_t j = 0; j < n; ++j) {
        v[j] = cplx{1.0 + 1e-6 * static_cast<double>(j) / static_cast<double>(n), 0.0};
    }
    double nv = std::sqrt(simd::sum_squares(v.data(), n));
    for (auto& e : v) e /= nv;

    double sigma_prev = -1.0;
    for (int it = 0; it < 10000; ++it) {
        simd::matvec(mat.data(), v.data(), y.data(), n);
        // Rayleigh quotient of B^H B at the unit vector v
        simd::matvec_adj(mat.data(), y.data(), z.data(), n);
        double lambda = simd::dot_conj(v.data(), z.data(), n).real();
        if (!(lambda > 1e-300)) return 0.0;
        double sigma = std::sqrt(lambda);
        double nz = std::sqrt(simd::sum_squares(z.data(), n));
        if (nz < 1e-300) return sigma;
        for (std::size_t j = 0; j < n; ++j) v[j] = z[j] / nz;
        if (sigma_prev >= 0.0 && std::abs(sigma - sigma_prev) <= 1e-10 * std::max(1.0, sigma)) {
            return sigma;
        }
        sigma_prev = sigma;
    }
    throw NumericalError("operator_norm: power iteration did not converge");
}

double verify(const BlockEncodingResult& res, const MatrixSpec& a) {
    if (res.n != a.n) throw ShapeError("verify: dimension mismatch");
    check_dense_cap(a.n);
    std::vector<cplx> diff(a.n * a.n);
    const double inv_alpha = 1.0 / res.alpha;
    for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t j = 0; j < a.n; ++j) {
            diff[i * a.n + j] = res.effective[i * a.n + j] - a.at(i, j) * inv_alpha;
        }
    }
    return operator_norm(diff, a.n);
}

CoulombAlphas coulomb_alphas(int nu) {
    if (nu < 2) throw DomainError("coulomb_alphas: nu must be >= 2");
    CoulombAlphas out;
    // sum_{k=1}^{K} 2^k = 2^{K+1} - 2
    out.alpha_f = 1.0 + 28.0 * (std::ldexp(1.0, nu + 2) - 2.0);
    out.alpha_zig = 27.0 + 189.0 * (std::ldexp(1.0, nu - 1) - 1.0);
    out.alpha_rc = 1.0 + 28.0 * (std::ldexp(1.0, nu + 1) - 2.0);
    out.alpha_c = std::sqrt(std::ldexp(1.0, 3 * nu) * out.alpha_rc);
    return out;
}

double model_identity_residual(const BlockModel& model, const MatrixSpec& a) {
    check_dense_cap(a.n);
    double alpha = rescale_factor(model, a);
    double worst = 0.0;
    switch (model.kind) {
    case BlockModel::Kind::LcuImplicit:
    case BlockModel::Kind::LcuExplicit: {
        // chi_{1 delta j} = phi_{1 j delta} = sqrt(w(delta)); N^2 = alpha
        require_toeplitz(model, a);
        if (a.structure != MatrixSpec::Structure::Toeplitz1d) {
            const std::int64_t s = a.side;
            for (std::int64_t d0 = -(s - 1); d0 <= s - 1; ++d0)
                for (std::int64_t d1 = -(s - 1); d1 <= s - 1; ++d1)
                    for (std::int64_t d2 = -(s - 1); d2 <= s - 1; ++d2) {
                        bool diag = d0 == 0 && d1 == 0 && d2 == 0;
                        double w = model.kind == BlockModel::Kind::LcuExplicit
                                       ? coulomb_shell_g(d0, d1, d2)
                                       : (diag ? 1.0
                                               : 1.0 / static_cast<double>(d0 * d0 + d1 * d1 +
                                                                           d2 * d2));
                        double chi = std::sqrt(w);
                        worst = std::max(worst, std::abs(chi * chi / alpha - w / alpha));
                    }
            return worst;
        }
        std::vector<double> w = model.kind == BlockModel::Kind::LcuExplicit
                                    ? explicit_delta_reference(model, a)
                                    : a.toeplitz_magnitude;
        for (double v : w) {
            double chi = std::sqrt(v);
            worst = std::max(worst, std::abs(chi * chi / alpha - v / alpha));
        }
        return worst;
    }
    case BlockModel::Kind::Ziggurat: {
        ZigguratPartition z = shell_partition(a, model.zig_single);
        double norm_sq = 0.0;
        for (std::size_t k = 0; k < z.g_k.size(); ++k) {
            norm_sq += std::sqrt(static_cast<double>(z.d_k[k]) *
                                 static_cast<double>(z.d_prime[k])) *
                       z.g_k[k];
        }
        for (std::size_t i = 0; i < a.n; ++i) {
            for (std::size_t j = 0; j < a.n; ++j) {
                int k = z.part[i * a.n + j];
                if (k < 0) continue;
                double dk = static_cast<double>(z.d_k[k]);
                double dpk = static_cast<double>(z.d_prime[k]);
                double chi = std::pow(dpk / dk, 0.25) * std::sqrt(z.g_k[k]);
                double phi = std::pow(dk / dpk, 0.25) * std::sqrt(z.g_k[k]);
                double lhs = chi * phi / norm_sq;
                worst = std::max(worst, std::abs(lhs - z.g_k[k] / alpha));
            }
        }
        return worst;
    }
    case BlockModel::Kind::RowColumn: {
        ElementReference ref = dense_reference(model, a);
        double g1 = norm_one(ref), ginf = norm_inf(ref);
        for (std::size_t i = 0; i < a.n; ++i) {
            for (std::size_t j = 0; j < a.n; ++j) {
                double gij = ref.at(i, j);
                double lhs = std::sqrt(gij / ginf) * std::sqrt(gij / g1);
                worst = std::max(worst, std::abs(lhs - gij / alpha));
            }
        }
        return worst;
    }
    case BlockModel::Kind::Column: {
        ElementReference ref = dense_reference(model, a);
        double gf = norm_frob(ref);
        for (std::size_t j = 0; j < a.n; ++j) {
            double col = 0.0;
            for (std::size_t i = 0; i < a.n; ++i) col += ref.at(i, j) * ref.at(i, j);
            col = std::sqrt(col);
            if (col <= 0.0) continue;
            for (std::size_t i = 0; i < a.n; ++i) {
                double lhs = (ref.at(i, j) / col) * (col / gf);
                worst = std::max(worst, std::abs(lhs - ref.at(i, j) / alpha));
            }
        }
        return worst;
    }
    }
    return worst;
}

void export_effective(const BlockEncodingResult& res, const std::string& path) {
    std::ofstream bin(path, std::ios::binary);
    if (!bin) throw DomainError("export: cannot open " + path);
    static_assert(sizeof(cplx) == 2 * sizeof(double));
    for (const cplx& z : res.effective) {
        double re = z.real(), im = z.imag();
        bin.write(reinterpret_cast<const char*>(&re), sizeof re);
        bin.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
    bin.close();
    nlohmann::json sidecar;
    sidecar["N"] = res.n;
    sidecar["alpha"] = res.alpha;
    sidecar["model"] = res.model_name;
    std::ofstream js(path + ".json");
    if (!js) throw DomainError("export: cannot open " + path + ".json");
    js << sidecar.dump(2) << "\n";
}

} // namespace qrs
