#include "qrs/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qrs/simd.hpp"

namespace qrs {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

std::uint64_t isqrt_u128(unsigned __int128 v) {
    if (v == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (static_cast<unsigned __int128>(r) * r > v) --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= v) ++r;
    return r;
}

struct TabulatedPair {
    std::vector<double> f;
    std::vector<double> g;
    double nf = 0.0;
    double ng = 0.0;
};

TabulatedPair tabulate_pair(const TargetSpec& f, const ReferenceSpec& g, const DomainSpec& d) {
    TabulatedPair out;
    const std::size_t n = d.size();
    out.f.resize(n);
    out.g.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.f[i] = f.magnitude(d, i);
        out.g[i] = g.value(d, i);
    }
    out.nf = std::sqrt(simd::sum_squares(out.f.data(), n));
    out.ng = std::sqrt(simd::sum_squares(out.g.data(), n));
    return out;
}

void require_dominance(const TargetSpec& f, const ReferenceSpec& g, const DomainSpec& d) {
    DominanceReport rep = validate_dominance(g, f, d);
    if (!rep.ok) {
        throw PreconditionError("reference does not dominate the target at index " +
                                std::to_string(rep.violation_index) + " (f=" +
                                std::to_string(rep.f_value) + ", g=" +
                                std::to_string(rep.g_value) + ")");
    }
}

// mu(x) in zero-based form for the clause rearrangements.
int shell_exponent(const ReferenceSpec& g, const DomainSpec& d, std::size_t i) {
    return static_cast<int>(g.piece_of(d, i));
}

} // namespace

int rounds(double nf, double ng) {
    if (!(nf > 0.0) || !(ng > 0.0) || nf > ng * (1.0 + 1e-12)) {
        throw PreconditionError("rounds: need 0 < Nf <= Ng");
    }
    double theta = std::asin(clamp01(nf / ng));
    double v = std::numbers::pi / (4.0 * theta) - 0.5;
    double r = std::ceil(v - 1e-9);
    return r < 0.0 ? 0 : static_cast<int>(r);
}

SamplingPlan choose_m(const TargetSpec& f, const ReferenceSpec& g, const DomainSpec& d,
                      double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("choose_m: eps must be in (0,1)");
    require_dominance(f, g, d);
    TabulatedPair t = tabulate_pair(f, g, d);
    double max_g_over_f = 0.0;
    double min_f_over_g = 1.0;
    bool any_positive = false;
    for (std::size_t i = 0; i < t.f.size(); ++i) {
        if (t.f[i] <= 0.0) continue; // zero-amplitude points never accept
        any_positive = true;
        max_g_over_f = std::max(max_g_over_f, t.g[i] / t.f[i]);
        min_f_over_g = std::min(min_f_over_g, t.f[i] / t.g[i]);
    }
    if (!any_positive) throw DegenerateInput("choose_m: target vanishes everywhere");

    SamplingPlan plan;
    plan.eps = eps;
    plan.nf = t.nf;
    plan.ng = t.ng;
    plan.p_succ = (t.nf / t.ng) * (t.nf / t.ng);
    double bound = std::max(2.0 * t.ng / (eps * t.nf), 2.0 * max_g_over_f);
    if (bound >= std::ldexp(1.0, 62)) {
        plan.m = std::uint64_t{1} << 62;
    } else {
        plan.m = next_pow2(static_cast<std::uint64_t>(std::ceil(bound)));
    }
    plan.eps_tilde = std::min(eps * t.nf / (2.0 * t.ng), min_f_over_g / 2.0);
    plan.bits = bits_for_accuracy(plan.eps_tilde);
    plan.rounds = rounds(t.nf, t.ng);
    return plan;
}

double success_probability(const TargetSpec& f, const ReferenceSpec& g, const DomainSpec& d) {
    require_dominance(f, g, d);
    TabulatedPair t = tabulate_pair(f, g, d);
    return (t.nf / t.ng) * (t.nf / t.ng);
}

std::uint64_t acceptance_count(const ClauseSpec& clause, const TargetSpec& f,
                               const ReferenceSpec& g, const DomainSpec& d,
                               std::size_t index, std::uint64_t m, int bits) {
    switch (clause.kind) {
    case ClauseSpec::Kind::Standard: {
        double fv = f.magnitude(d, index);
        if (fv <= 0.0) return 0;
        double r = clamp01(fv / g.value(d, index));
        double rq = bits > 0 ? quantize_value(r, bits) : r;
        double t = static_cast<double>(m) * rq;
        if (t >= 9.007199254740992e15) { // 2^53: floor is identity at this scale
            return static_cast<std::uint64_t>(t);
        }
        auto a = static_cast<std::uint64_t>(std::floor(t));
        return std::min(a, m);
    }
    case ClauseSpec::Kind::Inverse1d: {
        if (d.kind != DomainSpec::Kind::Interval1d) {
            throw ClauseShapeError("inverse-1d clause needs an integer interval domain");
        }
        auto x = static_cast<std::uint64_t>(d.point(index));
        int k = shell_exponent(g, d, index);
        unsigned __int128 num = static_cast<unsigned __int128>(m) << k;
        auto a = static_cast<std::uint64_t>(num / x);
        return std::min(a, m);
    }
    case ClauseSpec::Kind::Inverse3d: {
        if (d.kind != DomainSpec::Kind::Grid3d) {
            throw ClauseShapeError("inverse-3d clause needs the 3d grid domain");
        }
        auto p = d.point3(index);
        auto s = static_cast<std::uint64_t>(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        int k = shell_exponent(g, d, index);
        unsigned __int128 num = (static_cast<unsigned __int128>(m) * m) << (2 * k);
        auto a = isqrt_u128(num / s);
        return std::min(a, m);
    }
    case ClauseSpec::Kind::TanhExp: {
        double x = std::abs(d.point(index));
        double e2x = std::exp(2.0 * x);
        double eq = bits > 0 ? quantize_value(e2x, bits) : e2x;
        auto predicate = [&](std::uint64_t mm) {
            double u = static_cast<double>(mm) / (2.0 * static_cast<double>(m));
            return eq * (1.0 - u) - u >= 1.0;
        };
        if (eq <= 1.0) return 0;
        double t = 2.0 * static_cast<double>(m) * (eq - 1.0) / (eq + 1.0);
        auto a = static_cast<std::uint64_t>(std::max(0.0, std::floor(t)));
        a = std::min(a, m);
        while (a > 0 && !predicate(a)) --a;
        while (a < m && predicate(a + 1)) ++a;
        return a;
    }
    case ClauseSpec::Kind::Custom: {
        if (!clause.custom) throw ClauseShapeError("custom clause has no predicate");
        if (!clause.custom(index, 1)) return 0;
        std::uint64_t lo = 1, hi = m; // largest accepted m, assuming threshold shape
        while (lo < hi) {
            std::uint64_t mid = lo + (hi - lo + 1) / 2;
            if (clause.custom(index, mid)) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        return lo;
    }
    }
    return 0;
}

PreparedState simulate(const TargetSpec& f, const ReferenceSpec& g, const DomainSpec& d,
                       const SamplingPlan& plan, const ClauseSpec& clause) {
    if (plan.m < 1) throw PreconditionError("simulate: plan has no sampling dimension");
    require_dominance(f, g, d);

    const std::size_t n = d.size();
    PreparedState st;
    st.m = plan.m;
    std::vector<double> fbar(n);
    const double m_real = static_cast<double>(plan.m);
    if (clause.kind == ClauseSpec::Kind::Standard && plan.bits > 0) {
        // batch path: quantize the whole ratio vector, then floor against M
        std::vector<double> ratio(n);
        for (std::size_t i = 0; i < n; ++i) {
            double fv = f.magnitude(d, i);
            ratio[i] = fv <= 0.0 ? 0.0 : clamp01(fv / g.value(d, i));
        }
        simd::floor_quantize(ratio.data(), ratio.data(), n, plan.bits);
        for (std::size_t i = 0; i < n; ++i) {
            double t = m_real * ratio[i];
            double accepted = t >= 9.007199254740992e15
                                  ? t
                                  : std::min(std::floor(t), m_real);
            fbar[i] = g.value(d, i) * (accepted / m_real);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t a = acceptance_count(clause, f, g, d, i, plan.m, plan.bits);
            fbar[i] = g.value(d, i) * (static_cast<double>(a) / m_real);
        }
    }
    double fbar_norm_sq = simd::sum_squares(fbar.data(), n);
    if (!(fbar_norm_sq > 0.0)) {
        throw DegenerateOutput("simulate: the comparator accepted nothing");
    }
    double ng_sq = 0.0;
    {
        std::vector<double> gv(n);
        for (std::size_t i = 0; i < n; ++i) gv[i] = g.value(d, i);
        ng_sq = simd::sum_squares(gv.data(), n);
    }
    st.p0 = fbar_norm_sq / ng_sq;

    AmplitudeVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::polar(fbar[i], f.phase(d, i));
    st.output = normalize(out);
    st.dist = distance(st.output, normalize(tabulate(f, d)));

    st.rounds_used = plan.rounds;
    st.rounds_quantized = rounds(std::sqrt(st.p0), 1.0);
    double theta = std::asin(clamp01(std::sqrt(st.p0)));
    st.p_r = std::sin((2.0 * st.rounds_used + 1.0) * theta);
    st.p_r *= st.p_r;
    return st;
}

ClauseValidation validate_clause(const ClauseSpec& clause, const TargetSpec& f,
                                 const ReferenceSpec& g, const DomainSpec& d,
                                 std::uint64_t m, double eps_tilde, int bits) {
    const std::size_t n = d.size();
    ClauseValidation out;
    for (std::size_t i = 0; i < n; ++i) {
        // Evaluate the raw inequality per m (not the closed-form count), so the
        // scan genuinely checks the clause as written.
        auto predicate = [&](std::uint64_t mm) -> bool {
            switch (clause.kind) {
            case ClauseSpec::Kind::Standard: {
                double fv = f.magnitude(d, i);
                if (fv <= 0.0) return false;
                double r = clamp01(fv / g.value(d, i));
                double rq = bits > 0 ? quantize_value(r, bits) : r;
                return static_cast<double>(mm) <= static_cast<double>(m) * rq;
            }
            case ClauseSpec::Kind::Inverse1d: {
                auto x = static_cast<std::uint64_t>(d.point(i));
                int k = shell_exponent(g, d, i);
                return static_cast<unsigned __int128>(mm) * x <=
                       static_cast<unsigned __int128>(m) << k;
            }
            case ClauseSpec::Kind::Inverse3d: {
                auto p = d.point3(i);
                auto s = static_cast<std::uint64_t>(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
                int k = shell_exponent(g, d, i);
                return static_cast<unsigned __int128>(mm) * mm * s <=
                       (static_cast<unsigned __int128>(m) * m) << (2 * k);
            }
            case ClauseSpec::Kind::TanhExp: {
                double e2x = std::exp(2.0 * std::abs(d.point(i)));
                double eq = bits > 0 ? quantize_value(e2x, bits) : e2x;
                double u = static_cast<double>(mm) / (2.0 * static_cast<double>(m));
                return eq * (1.0 - u) - u >= 1.0;
            }
            case ClauseSpec::Kind::Custom:
                if (!clause.custom) throw ClauseShapeError("custom clause has no predicate");
                return clause.custom(i, mm);
            }
            return false;
        };
        std::uint64_t count = 0;
        bool rejected = false;
        for (std::uint64_t mm = 1; mm <= m; ++mm) {
            if (predicate(mm)) {
                if (rejected) {
                    throw ClauseShapeError("clause is not a threshold in m at index " +
                                           std::to_string(i));
                }
                ++count;
            } else {
                rejected = true;
            }
        }
        double fv = f.magnitude(d, i);
        double gv = g.value(d, i);
        double ideal = fv <= 0.0 ? 0.0 : static_cast<double>(m) * fv / gv;
        out.max_error = std::max(out.max_error, std::abs(static_cast<double>(count) - ideal));
    }
    out.pass = out.max_error <= static_cast<double>(m) * eps_tilde + 1.0 + 1e-6;
    return out;
}

PreparedState simulate_rotation_variant(const TargetSpec& f, const ReferenceSpec& g,
                                        const DomainSpec& d, int b_delta) {
    if (b_delta < 1) throw PreconditionError("rotation variant: b_delta must be >= 1");
    require_dominance(f, g, d);
    const std::size_t n = d.size();
    PreparedState st;
    std::size_t clamped = 0;
    std::vector<double> fbar(n);
    std::vector<double> gv(n);
    for (std::size_t i = 0; i < n; ++i) {
        gv[i] = g.value(d, i);
        double r = f.magnitude(d, i) / gv[i];
        if (r > 1.0) {
            ++clamped;
            r = 1.0;
        }
        double angle = quantize_value(std::asin(r), b_delta);
        fbar[i] = gv[i] * std::sin(angle);
    }
    if (clamped > 0) {
        st.warnings.push_back("ratio clamped to 1 at " + std::to_string(clamped) + " points");
    }
    double fbar_norm_sq = simd::sum_squares(fbar.data(), n);
    if (!(fbar_norm_sq > 0.0)) throw DegenerateOutput("rotation variant: zero output");
    st.p0 = fbar_norm_sq / simd::sum_squares(gv.data(), n);

    AmplitudeVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::polar(fbar[i], f.phase(d, i));
    st.output = normalize(out);
    st.dist = distance(st.output, normalize(tabulate(f, d)));

    TabulatedPair t = tabulate_pair(f, g, d);
    st.rounds_used = rounds(std::min(t.nf, t.ng), t.ng);
    st.rounds_quantized = rounds(std::sqrt(st.p0), 1.0);
    double theta = std::asin(clamp01(std::sqrt(st.p0)));
    st.p_r = std::sin((2.0 * st.rounds_used + 1.0) * theta);
    st.p_r *= st.p_r;
    return st;
}

std::vector<double> amplify_trace(double p0, int r) {
    if (!(p0 > 0.0 && p0 <= 1.0)) throw PreconditionError("amplify_trace: p0 must be in (0,1]");
    double theta = std::asin(clamp01(std::sqrt(p0)));
    std::vector<double> trace;
    trace.reserve(static_cast<std::size_t>(r) + 1);
    for (int k = 0; k <= r; ++k) {
        double s = std::sin((2.0 * k + 1.0) * theta);
        trace.push_back(s * s);
    }
    return trace;
}

CatalogEntry catalog_powerlaw_1d(double beta, int n) {
    CatalogEntry e;
    e.name = "powerlaw1d";
    e.target = TargetSpec::power_law(beta);
    e.domain = DomainSpec::interval_1d(1, (std::int64_t{1} << n) - 1);
    e.reference = design_ziggurat_powerlaw(beta, n);
    e.clause = beta == 1.0 ? ClauseSpec::inverse_1d() : ClauseSpec::standard();
    return e;
}

CatalogEntry catalog_powerlaw_3d(int l) {
    CatalogEntry e;
    e.name = "powerlaw3d";
    e.target = TargetSpec::power_law(1.0);
    e.domain = DomainSpec::grid3d_octant(l);
    e.reference = design_ziggurat_powerlaw_3d(1.0, l);
    e.clause = ClauseSpec::inverse_3d();
    return e;
}

CatalogEntry catalog_gaussian(double sigma, std::uint64_t n_points) {
    CatalogEntry e;
    e.name = "gaussian";
    e.target = TargetSpec::gaussian(sigma);
    e.domain = DomainSpec::scaled_interval_1d(n_points);
    e.reference = design_gaussian_reference(sigma, e.domain).spec;
    e.clause = ClauseSpec::standard();
    return e;
}

CatalogEntry catalog_tanh(std::uint64_t n_points) {
    CatalogEntry e;
    e.name = "tanh";
    e.target = TargetSpec::tanh_target();
    e.domain = DomainSpec::scaled_interval_1d(n_points);
    ReferencePiece p;
    p.kind = ReferencePiece::Kind::Constant;
    p.lo = 0;
    p.hi = e.domain.size() - 1;
    p.level = 0.5;
    e.reference.pieces.push_back(p);
    e.clause = ClauseSpec::tanh_exp();
    return e;
}

CatalogEntry catalog_mesh2d(int n, const Mesh2dGrid& grid) {
    Mesh2dReference mesh = design_mesh2d(n, grid);
    CatalogEntry e;
    e.name = "mesh2d";
    e.target = TargetSpec::custom_table(tabulate_mesh2d(grid));
    e.domain = DomainSpec::interval_1d(1, static_cast<std::int64_t>(grid.size()));
    // row-major flattening: the cell level is constant along runs within a row
    std::size_t run_start = 0;
    double run_level = mesh.level_at(grid.x_at(0), grid.y_at(0));
    auto flush = [&](std::size_t end) {
        ReferencePiece p;
        p.kind = ReferencePiece::Kind::Constant;
        p.lo = run_start;
        p.hi = end;
        p.level = run_level;
        e.reference.pieces.push_back(p);
    };
    for (std::size_t idx = 1; idx < grid.size(); ++idx) {
        double lvl = mesh.level_at(grid.x_at(idx % grid.nx), grid.y_at(idx / grid.nx));
        if (lvl != run_level) {
            flush(idx - 1);
            run_start = idx;
            run_level = lvl;
        }
    }
    flush(grid.size() - 1);
    e.clause = ClauseSpec::standard();
    return e;
}

CatalogEntry catalog_exponential(double beta, std::uint64_t n_points) {
    CatalogEntry e;
    e.name = "exponential";
    e.target = TargetSpec::exponential(beta);
    e.domain = DomainSpec::scaled_interval_1d(n_points);
    ReferencePiece p;
    p.kind = ReferencePiece::Kind::Constant;
    p.lo = 0;
    p.hi = e.domain.size() - 1;
    p.level = 1.0;
    e.reference.pieces.push_back(p);
    e.clause = ClauseSpec::standard();
    return e;
}

} // namespace qrs
