#include "qrs/refdesign.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "qrs/simd.hpp"

namespace qrs {

namespace {

std::size_t shell_of_point3(const DomainSpec& d, std::size_t index) {
    auto p = d.point3(index);
    std::int64_t m = std::max({std::llabs(p[0]), std::llabs(p[1]), std::llabs(p[2])});
    std::size_t mu = 0;
    while ((std::int64_t{1} << (mu + 1)) <= m) ++mu;
    return mu; // zero-based: shell mu+1 in 1-based counting
}

} // namespace

std::size_t ReferenceSpec::piece_of(const DomainSpec& d, std::size_t index) const {
    if (shells3d) {
        std::size_t mu = shell_of_point3(d, index);
        if (mu >= pieces.size()) {
            throw DomainError("reference: point outside the shell pieces");
        }
        return mu;
    }
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (index >= pieces[k].lo && index <= pieces[k].hi) return k;
    }
    throw DomainError("reference: index " + std::to_string(index) + " not covered");
}

double ReferenceSpec::value(const DomainSpec& d, std::size_t index) const {
    const ReferencePiece& p = pieces[piece_of(d, index)];
    if (p.kind == ReferencePiece::Kind::Constant) return p.level;
    double x = d.point(index);
    return p.level * std::exp(-p.rate * std::abs(x - p.anchor_x));
}

void ReferenceSpec::validate(const DomainSpec& d) const {
    if (pieces.empty()) throw DegenerateInput("reference: no pieces");
    if (shells3d) {
        for (const auto& p : pieces) {
            if (!(p.level > 0.0)) throw DegenerateInput("reference: nonpositive shell level");
        }
        // every point must land in a shell
        std::size_t worst = shell_of_point3(d, d.size() - 1);
        if (worst >= pieces.size()) {
            throw DomainError("reference: shells do not cover the grid");
        }
        return;
    }
    std::size_t expect = 0;
    for (const auto& p : pieces) {
        if (p.hi < p.lo) throw DegenerateInput("reference: empty piece");
        if (p.lo != expect) {
            throw DomainError("reference: pieces must tile the domain without gaps");
        }
        if (!(p.level > 0.0)) throw DegenerateInput("reference: nonpositive piece value");
        expect = p.hi + 1;
    }
    if (expect != d.size()) {
        throw DomainError("reference: pieces cover " + std::to_string(expect) +
                          " of " + std::to_string(d.size()) + " points");
    }
}

DominanceReport validate_dominance(const ReferenceSpec& g, const TargetSpec& f,
                                   const DomainSpec& d) {
    g.validate(d);
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
        double fv = f.magnitude(d, i);
        double gv = g.value(d, i);
        if (fv > gv * (1.0 + 1e-12)) {
            return {false, i, fv, gv};
        }
    }
    return {};
}

AmplitudeVector build_reference_state(const ReferenceSpec& g, const DomainSpec& d) {
    g.validate(d);
    const std::size_t n = d.size();
    AmplitudeVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = g.value(d, i);
    return normalize(out);
}

LabeledState build_reference_state_labeled(const ReferenceSpec& g, const DomainSpec& d) {
    LabeledState st;
    st.amplitudes = build_reference_state(g, d);
    st.mu.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        st.mu[i] = static_cast<std::uint32_t>(g.piece_of(d, i));
    }
    return st;
}

CoarseState coarse_coefficients(const ReferenceSpec& g, const DomainSpec& d) {
    g.validate(d);
    CoarseState cs;
    cs.coefficients.assign(g.piece_count(), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        double v = g.value(d, i);
        cs.coefficients[g.piece_of(d, i)] += v * v;
    }
    for (auto& c : cs.coefficients) c = std::sqrt(c);
    return cs;
}

ReferenceSpec design_ziggurat_powerlaw(double beta, int n) {
    if (n < 1) throw DomainError("ziggurat: n must be >= 1");
    ReferenceSpec g;
    for (int mu = 1; mu <= n; ++mu) {
        ReferencePiece p;
        p.kind = ReferencePiece::Kind::Constant;
        // domain [1, 2^n - 1] with index = x - 1
        p.lo = (std::size_t{1} << (mu - 1)) - 1;
        p.hi = (std::size_t{1} << mu) - 2;
        p.level = std::pow(2.0, -beta * (mu - 1));
        g.pieces.push_back(p);
    }
    return g;
}

ReferenceSpec design_ziggurat_powerlaw_3d(double beta, int l) {
    if (l < 1) throw DomainError("ziggurat3d: l must be >= 1");
    ReferenceSpec g;
    g.shells3d = true;
    for (int mu = 1; mu <= l; ++mu) {
        ReferencePiece p;
        p.kind = ReferencePiece::Kind::Constant;
        p.lo = static_cast<std::size_t>(mu - 1);
        p.hi = static_cast<std::size_t>(mu - 1);
        p.level = std::pow(2.0, -beta * (mu - 1));
        g.pieces.push_back(p);
    }
    return g;
}

GaussianReference design_gaussian_reference(double sigma, const DomainSpec& d,
                                            GaussianTailAnchor anchor) {
    if (d.kind != DomainSpec::Kind::ScaledInterval1d || d.half) {
        throw DomainError("gaussian reference: needs the full scaled 1d domain");
    }
    if (sigma <= d.delta) {
        throw RegimeError("gaussian reference: sigma <= delta; prepare the "
                          "small-support state directly instead");
    }
    GaussianReference out;
    if (sigma < 8.0 * d.delta) {
        out.warnings.push_back("sigma is within 8 grid spacings of delta; the "
                               "delta << sigma regime is marginal");
    }
    if (sigma >= 0.25) {
        out.warnings.push_back("sigma is not small against the domain half-width");
    }
    const std::size_t n = d.size();
    // points ascend; locate the core |x| <= sigma
    std::size_t core_lo = n, core_hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(d.point(i)) <= sigma) {
            core_lo = std::min(core_lo, i);
            core_hi = std::max(core_hi, i);
        }
    }
    if (core_lo > core_hi) {
        throw RegimeError("gaussian reference: no grid point inside |x| <= sigma");
    }
    const double tail_scale = anchor == GaussianTailAnchor::HalfSigma ? std::sqrt(std::exp(1.0)) : 1.0;
    auto tail = [&](std::size_t lo, std::size_t hi) {
        ReferencePiece p;
        p.kind = ReferencePiece::Kind::Exponential;
        p.lo = lo;
        p.hi = hi;
        p.level = tail_scale;
        p.rate = 1.0 / sigma;
        p.anchor_x = 0.0;
        return p;
    };
    if (core_lo > 0) out.spec.pieces.push_back(tail(0, core_lo - 1));
    ReferencePiece core;
    core.kind = ReferencePiece::Kind::Constant;
    core.lo = core_lo;
    core.hi = core_hi;
    core.level = 1.0;
    out.spec.pieces.push_back(core);
    if (core_hi + 1 < n) out.spec.pieces.push_back(tail(core_hi + 1, n - 1));
    if (out.spec.pieces.size() == 1) {
        out.warnings.push_back("sigma covers the whole domain; reference is uniform");
    }
    return out;
}

std::string ReferenceSpec::to_json() const {
    nlohmann::json j;
    j["shells3d"] = shells3d;
    j["pieces"] = nlohmann::json::array();
    for (const auto& p : pieces) {
        nlohmann::json pj;
        pj["range"] = {p.lo, p.hi};
        if (p.kind == ReferencePiece::Kind::Constant) {
            pj["kind"] = "constant";
            pj["params"] = {{"level", p.level}};
        } else {
            pj["kind"] = "exponential";
            pj["params"] = {{"level", p.level}, {"rate", p.rate}, {"anchor_x", p.anchor_x}};
        }
        j["pieces"].push_back(pj);
    }
    return j.dump();
}

ReferenceSpec ReferenceSpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ReferenceSpec g;
    g.shells3d = j.value("shells3d", false);
    for (const auto& pj : j.at("pieces")) {
        ReferencePiece p;
        p.lo = pj.at("range").at(0).get<std::size_t>();
        p.hi = pj.at("range").at(1).get<std::size_t>();
        std::string kind = pj.at("kind").get<std::string>();
        const auto& params = pj.at("params");
        p.level = params.at("level").get<double>();
        if (kind == "constant") {
            p.kind = ReferencePiece::Kind::Constant;
        } else if (kind == "exponential") {
            p.kind = ReferencePiece::Kind::Exponential;
            p.rate = params.at("rate").get<double>();
            p.anchor_x = params.at("anchor_x").get<double>();
        } else {
            throw DomainError("reference json: unknown piece kind '" + kind + "'");
        }
        g.pieces.push_back(p);
    }
    return g;
}

std::size_t Mesh2dReference::cell_of(double x, double y) const {
    auto clamp_idx = [](double v, std::size_t n) {
        auto i = static_cast<std::int64_t>(v);
        if (i < 0) i = 0;
        if (i >= static_cast<std::int64_t>(n)) i = static_cast<std::int64_t>(n) - 1;
        return static_cast<std::size_t>(i);
    };
    std::size_t ix = clamp_idx(x * static_cast<double>(cells_x), cells_x);
    std::size_t iy = clamp_idx((y + 4.0) / 8.0 * static_cast<double>(cells_y), cells_y);
    return iy * cells_x + ix;
}

double Mesh2dReference::level_at(double x, double y) const { return levels[cell_of(x, y)]; }

std::string Mesh2dReference::to_json() const {
    nlohmann::json j;
    j["cells_x"] = cells_x;
    j["cells_y"] = cells_y;
    j["inflation"] = inflation;
    j["levels"] = levels;
    return j.dump();
}

Mesh2dReference design_mesh2d(int n, const Mesh2dGrid& grid, double inflation) {
    if (n < 1) throw DomainError("design_mesh2d: n must be >= 1");
    Mesh2dReference ref;
    ref.cells_x = static_cast<std::size_t>((5 * n + 3) / 4); // ceil(5n/4)
    ref.cells_y = static_cast<std::size_t>(2 * n);
    ref.inflation = inflation;
    ref.levels.assign(ref.cell_count(), 0.0);

    std::vector<double> f = tabulate_mesh2d(grid);
    for (std::size_t j = 0; j < grid.ny; ++j) {
        for (std::size_t i = 0; i < grid.nx; ++i) {
            std::size_t c = ref.cell_of(grid.x_at(i), grid.y_at(j));
            ref.levels[c] = std::max(ref.levels[c], f[j * grid.nx + i]);
        }
    }
    for (auto& lvl : ref.levels) lvl *= 1.0 + inflation;
    return ref;
}

double mesh2d_success_probability(const Mesh2dReference& ref, const Mesh2dGrid& grid) {
    double nf2 = 0.0, ng2 = 0.0;
    for (std::size_t j = 0; j < grid.ny; ++j) {
        for (std::size_t i = 0; i < grid.nx; ++i) {
            double f = mesh2d_eval(grid.x_at(i), grid.y_at(j));
            double g = ref.level_at(grid.x_at(i), grid.y_at(j));
            nf2 += f * f;
            ng2 += g * g;
        }
    }
    if (!(ng2 > 0.0)) throw DegenerateInput("mesh reference vanishes");
    return nf2 / ng2;
}

} // namespace qrs
