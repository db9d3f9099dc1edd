#include "qrs/resources.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "qrs/numerics.hpp"
#include "qrs/parallel.hpp"

namespace qrs {

namespace {

int ceil_log2(double v) {
    if (!(v > 0.0)) throw DomainError("ceil_log2: nonpositive argument");
    return static_cast<int>(std::ceil(std::log2(v) - 1e-12));
}

std::int64_t pow2_i64(int e) { return std::int64_t{1} << e; }

// Exact partial sum of 1/x^2 with an integral tail for the remainder.
double inverse1d_nf_sq(std::uint64_t n_points) {
    const std::uint64_t cutoff = std::min<std::uint64_t>(n_points, std::uint64_t{1} << 20);
    double s = 0.0;
    for (std::uint64_t x = cutoff; x >= 1; --x) s += 1.0 / (static_cast<double>(x) * x);
    if (n_points > cutoff) {
        s += 1.0 / static_cast<double>(cutoff) - 1.0 / static_cast<double>(n_points);
    }
    return s;
}

// Max-norm shell sums of 1/|x|^2 on the nonnegative octant; exact up to shell
// 7, geometric continuation (S_k ~ gamma 2^k) beyond.
const std::array<double, 8>& octant_shell_sums() {
    static std::array<double, 8> sums{};
    static std::once_flag once;
    std::call_once(once, [] {
        for (int k = 1; k <= 7; ++k) {
            std::int64_t lo = std::int64_t{1} << (k - 1);
            std::int64_t hi = std::int64_t{1} << k;
            double s = 0.0;
            for (std::int64_t z = 0; z < hi; ++z)
                for (std::int64_t y = 0; y < hi; ++y)
                    for (std::int64_t x = 0; x < hi; ++x) {
                        if (std::max({x, y, z}) < lo) continue;
                        s += 1.0 / static_cast<double>(x * x + y * y + z * z);
                    }
            sums[static_cast<std::size_t>(k)] = s;
        }
    });
    return sums;
}

double inverse3d_nf_sq(int l) {
    const auto& sums = octant_shell_sums();
    double s = 0.0;
    for (int k = 1; k <= std::min(l, 7); ++k) s += sums[static_cast<std::size_t>(k)];
    if (l > 7) {
        double gamma = sums[7] / std::ldexp(1.0, 7);
        for (int k = 8; k <= l; ++k) s += gamma * std::ldexp(1.0, k);
    }
    return s;
}

int b_m_from_bound(double bound) { return ceil_log2(bound); }

} // namespace

std::int64_t CostReport::total() const {
    const std::int64_t r = rounds;
    return prep_g * (1 + 2 * r) + usp * (2 + 4 * r) + u_f * (2 + 2 * r) +
           u_g * (2 + 2 * r) + comp * (1 + 2 * r) + phase;
}

std::int64_t CostReport::comparison_total() const {
    const std::int64_t r = rounds;
    return (1 + 2 * r) * (prep_g + u_f + u_g + comp) + phase;
}

std::int64_t total_qrs_cost(const CostReport& report) { return report.total(); }

CostReport cost_powerlaw_1d(int n, int b_m, double eps_prime) {
    if (n < 2) throw DomainError("cost_powerlaw_1d: n must be >= 2");
    CostReport r;
    r.n = n;
    r.b_m = b_m;
    r.eps_prime = eps_prime;
    std::int64_t prep_c = static_cast<std::int64_t>(1 + 2 * (n - 1)) * ceil_log2(1.0 / eps_prime);
    std::int64_t mu_select = 2 * n - 3;
    r.prep_g = prep_c + mu_select;
    r.u_g = 2 * static_cast<std::int64_t>(b_m) * n - std::max(b_m, n);
    r.u_f = 0;
    r.comp = b_m + n;
    r.rounds = 1;
    return r;
}

CostReport cost_powerlaw_3d(int l, int b_m) {
    if (l < 1) throw DomainError("cost_powerlaw_3d: l must be >= 1");
    CostReport r;
    r.l = l;
    r.b_m = b_m;
    std::int64_t prep_c = l - 1;
    std::int64_t select = 6 * l - 3;
    r.prep_g = prep_c + select;
    r.u_g = 3 * static_cast<std::int64_t>(l) * l - l - 1 +
            2 * static_cast<std::int64_t>(b_m) * b_m - b_m +
            2 * (2 * static_cast<std::int64_t>(b_m)) * (2 * l + 2) -
            std::max(2 * b_m, 2 * l + 2);
    r.u_f = 0;
    r.comp = b_m + 2 * l + 2;
    r.rounds = 1;
    return r;
}

CostReport cost_gaussian(int n, double eps, bool text_variant) {
    if (n < 2) throw DomainError("cost_gaussian: n must be >= 2");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("cost_gaussian: eps in (0,1)");
    CostReport r;
    r.n = n;
    r.eps = eps;
    r.rounds = 1;
    r.prep_g = ceil_log2(8.0 / eps);
    const double m_real = std::max(4.0 / eps, 2.0 * std::exp(12.0));
    r.b_m = b_m_from_bound(m_real);
    const double eps_tilde = std::min(eps / 4.0, std::exp(-12.0) / 2.0);
    r.b = std::min(r.b_m, ceil_log2(1.0 / eps_tilde));
    r.comp = 2 * (2 * static_cast<std::int64_t>(r.b_m) - 1);
    r.u_g = 0;

    const std::int64_t square_cost =
        2 * static_cast<std::int64_t>(n - 1) * (n - 1) - (n - 1);
    const std::int64_t b64 = r.b;
    const std::int64_t mult_per = 2 * b64 * b64 - b64;
    std::int64_t best = -1;
    int best_k = 1;
    const int reg = 2 * (n - 1);
    for (int k = 1; k <= std::max(1, reg); ++k) {
        std::int64_t qrom;
        if (k == 1) {
            // single lookup over the whole register (both published forms
            // degenerate to this)
            qrom = pow2_i64(std::min(reg, 60)) - 1;
        } else if (text_variant) {
            qrom = static_cast<std::int64_t>(k - 1) * (pow2_i64((reg + k - 1) / k) - 1) +
                   (pow2_i64(reg / k) - 1);
        } else {
            qrom = static_cast<std::int64_t>(k - 1) *
                   ((pow2_i64((reg + k - 1) / k) - 1) + (pow2_i64((2 * n) / k) - 1));
        }
        std::int64_t uf = square_cost + qrom + mult_per * (k - 1);
        if (best < 0 || uf < best) {
            best = uf;
            best_k = k;
        }
    }
    r.u_f = best;
    r.k_opt = best_k;
    return r;
}

CostReport cost_tanh(int n, double eps) {
    if (n < 2) throw DomainError("cost_tanh: n must be >= 2");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("cost_tanh: eps in (0,1)");
    CostReport r;
    r.n = n;
    r.eps = eps;
    r.rounds = 1;
    r.prep_g = 0;
    r.u_g = 0;
    r.comp = 1;
    const double eps_tilde = std::min(eps / 4.0, std::ldexp(1.0, -n));
    r.b_delta = ceil_log2(1.0 / eps_tilde);
    const std::int64_t bd = r.b_delta;
    const std::int64_t mult_per = 2 * (bd + 2) * (bd + 2) - bd - 2;
    const std::int64_t final_mult = 2 * (bd + 2) * (bd + 2) - (bd + 2);
    const std::int64_t subtract = bd + 1;
    std::int64_t best = -1;
    int best_k = 1;
    for (int k = 1; k <= n; ++k) {
        int b_qrom = (n + k - 1) / k;
        std::int64_t uf = static_cast<std::int64_t>(k) * (pow2_i64(b_qrom) - 2) +
                          static_cast<std::int64_t>(k - 1) * mult_per + final_mult + subtract;
        if (best < 0 || uf < best) {
            best = uf;
            best_k = k;
            r.b_qrom = b_qrom;
        }
    }
    r.u_f = best;
    r.k_opt = best_k;
    return r;
}

std::int64_t cost_exponential(int n, double eps) {
    if (n < 1) throw DomainError("cost_exponential: n must be >= 1");
    return static_cast<std::int64_t>(n) * ceil_log2(2.0 * std::numbers::pi * n / eps);
}

std::int64_t cost_lks(int n, double eps) {
    if (n < 1) throw DomainError("cost_lks: n must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("cost_lks: eps in (0,1)");
    const int b = ceil_log2(2.0 * std::numbers::pi * n / eps);
    std::int64_t total = 0;
    for (int k = 0; k < n; ++k) {
        const std::int64_t angles = pow2_i64(k);
        auto stage_min = [&](double target, std::int64_t weight) {
            double root = std::sqrt(target);
            std::int64_t lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(root)));
            std::int64_t hi = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(root)));
            std::int64_t best = -1;
            for (std::int64_t lambda : {lo, hi}) {
                std::int64_t c = (angles + lambda - 1) / lambda + weight * (lambda - 1);
                if (best < 0 || c < best) best = c;
            }
            return best;
        };
        total += stage_min(static_cast<double>(angles) / b, b); // data lookup
        total += stage_min(static_cast<double>(angles), 1);     // uncompute
        total += b - 2;                                         // Fourier-state adder
    }
    return total;
}

std::int64_t ziggurat_boundary_overhead(int n, bool pow2_boundaries) {
    return pow2_boundaries ? 0 : n;
}

CostReport qrs_cost(CostTarget target, int n, double eps) {
    switch (target) {
    case CostTarget::Inverse1d: {
        const auto n_points = (std::uint64_t{1} << n) - 1;
        const double nf = std::sqrt(inverse1d_nf_sq(n_points));
        const double ng = std::sqrt(2.0 * (1.0 - std::ldexp(1.0, -n)));
        const double max_2g_over_f = 2.0 * static_cast<double>(n_points) * std::ldexp(1.0, -(n - 1));
        const double bound = std::max(2.0 * ng / (eps * nf), max_2g_over_f);
        const int b_m = b_m_from_bound(bound);
        const double eps_prime = eps / (3.0 * n); // rotations across all rounds, R = 1
        return cost_powerlaw_1d(n, b_m, eps_prime);
    }
    case CostTarget::Inverse3d: {
        const int l = (n + 2) / 3;
        const double ng = std::sqrt(7.0 * (std::ldexp(1.0, l) - 1.0));
        const double nf = std::sqrt(inverse3d_nf_sq(l));
        const double bound =
            std::max(2.0 * ng / (eps * nf), 4.0 * std::sqrt(3.0));
        const int b_m = b_m_from_bound(bound);
        CostReport r = cost_powerlaw_3d(l, b_m);
        r.n = n;
        r.eps = eps;
        return r;
    }
    case CostTarget::Gaussian:
        return cost_gaussian(n, eps);
    case CostTarget::Tanh:
        return cost_tanh(n, eps);
    }
    throw DomainError("qrs_cost: unknown target");
}

std::uint64_t crossover(CostTarget target, double eps) {
    for (int n = 2; n <= 30; ++n) {
        std::int64_t qrs = qrs_cost(target, n, eps).comparison_total();
        std::int64_t lks = cost_lks(n, eps);
        if (qrs <= lks) return std::uint64_t{1} << n;
    }
    throw NoCrossover("no crossover for this target in N <= 2^30");
}

std::vector<SweepRow> sweep(CostTarget target, int n_lo, int n_hi, double eps) {
    if (n_lo < 2 || n_hi < n_lo || n_hi > 62) throw DomainError("sweep: bad n range");
    std::string kind;
    switch (target) {
    case CostTarget::Inverse1d: kind = "inverse1d"; break;
    case CostTarget::Inverse3d: kind = "inverse3d"; break;
    case CostTarget::Gaussian: kind = "gaussian"; break;
    case CostTarget::Tanh: kind = "tanh"; break;
    }
    // grid points are independent; rows land in deterministic parameter order
    const std::size_t count = static_cast<std::size_t>(n_hi - n_lo + 1);
    std::vector<SweepRow> rows(3 * count);
    parallel_for(count, [&](std::size_t idx) {
        const int n = n_lo + static_cast<int>(idx);
        CostReport r = qrs_cost(target, n, eps);
        const auto n_points = std::uint64_t{1} << n;
        rows[3 * idx + 0] = {"qrs", kind, n_points, eps, r.comparison_total(), r.k_opt, r.rounds};
        rows[3 * idx + 1] = {"qrs-table1", kind, n_points, eps, r.total(), r.k_opt, r.rounds};
        rows[3 * idx + 2] = {"lks", kind, n_points, eps, cost_lks(n, eps), 0, 0};
    });
    return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "method,targetKind,N,eps,toffoli,k_opt,R\n";
    for (const auto& r : rows) {
        out << r.method << ',' << r.target_kind << ',' << r.n_points << ',' << r.eps << ','
            << r.toffoli << ',' << r.k_opt << ',' << r.rounds << '\n';
    }
    return out.str();
}

namespace {

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

} // namespace

double loglog_slope_qrs(CostTarget target, int n_lo, int n_hi, double eps) {
    std::vector<double> xs, ys;
    for (int n = n_lo; n <= n_hi; ++n) {
        xs.push_back(static_cast<double>(n));
        ys.push_back(std::log2(static_cast<double>(qrs_cost(target, n, eps).total())));
    }
    return fit_slope(xs, ys);
}

double loglog_slope_lks(int n_lo, int n_hi, double eps) {
    std::vector<double> xs, ys;
    for (int n = n_lo; n <= n_hi; ++n) {
        xs.push_back(static_cast<double>(n));
        ys.push_back(std::log2(static_cast<double>(cost_lks(n, eps))));
    }
    return fit_slope(xs, ys);
}

} // namespace qrs
