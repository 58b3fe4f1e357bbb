#ifndef HEXACURVE_PIPELINE_HPP
#define HEXACURVE_PIPELINE_HPP

#include "lifting.hpp"

namespace hexacurve {

struct LegStageResult {
    bool ran = false;
    u64 prime = 0;
    int found = 0;
    int interior = 0;
    int missing_mass = 0;  // 20 - found for span codimension 10
    bool all_vanish_on_samples = false;
    bool truncated = false;
    std::vector<SegrePoint<GF>> points;
};

struct PipelineResult {
    std::string name;
    u64 seed = 0;
    u64 prime = 0;
    CertReport cert;
    int h0_tangent = -1;        // measured section-space dimension
    int h0_tangent_table = -1;  // tabulated value, -1 if blank
    int lift_dim = -1;
    int lift_dim_bound = -1;    // h0 - 2d + d'
    bool q7_ok = false;
    bool on_variety_ok = false;
    int span_codim = -1;
    int span_codim_expected = -1;  // c + 7
    bool misses_center = false;
    int deg_D = -1;
    int genus_D = -1;
    BondCensus census;
    FamilyDims dims{0, 0, 0};
    LegStageResult legs;
    std::string failure;  // stage-tagged failure, empty on success
};

struct PipelineOptions {
    bool with_legs = false;
    std::vector<u64> leg_primes{10007, 10009, 10037, 10039, 10061};
    int max_ext_degree = 16;
    std::size_t max_leg_results = 64;
    int samples = 24;
};

namespace detail {

inline GFElem reduce_mod_p(GF fld, const Rat& a) {
    Int num = numerator(a), den = denominator(a);
    Int p(fld.p());
    Int nm = num % p;
    if (nm < 0) nm += p;
    Int dm = den % p;
    require(dm != 0, errc::config_error, "denominator divisible by the search prime");
    u64 n = nm.convert_to<u64>();
    u64 d = dm.convert_to<u64>();
    return fld.from_int(i64(n)) / fld.from_int(i64(d));
}

inline GFElem reduce_mod_p(GF fld, const GFElem& a) {
    require(a.ctx()->p == fld.p() && a.ctx()->k == 1, errc::field_mismatch,
            "cross-characteristic reduction");
    return fld.from_int(i64(a.coeffs()[0]));
}

}  // namespace detail

// The 17-coefficient dual vectors of the hyperplanes containing the lift:
// kernel of the restricted coordinate matrix.
template <class FrameT>
std::vector<Vec<typename FrameT::Field>> span_perp(const FrameT& frame, const Lift<FrameT>& lift) {
    auto cols_fn = span_columns(frame, lift.tuple);
    std::vector<typename FrameT::Vec> cols;
    for (auto& c : cols_fn) {
        if constexpr (is_param_frame_v<FrameT>)
            cols.push_back(c.c);
        else
            cols.push_back(frame.restrict(c, 4));
    }
    auto rk = mat_rank_kernel(frame.to_matrix(cols));
    return rk.kernel;
}

// run the leg search over a retry list of primes; stops at the first prime
// finding at least `goal` rational points
template <class FrameT>
LegStageResult leg_stage(const FrameT& frame, const Lift<FrameT>& lift,
                         const PipelineOptions& opts, u64 seed, int goal = 6) {
    LegStageResult out;
    out.ran = true;
    auto fld = frame.field();
    auto perp = span_perp(frame, lift);
    for (u64 q : opts.leg_primes) {
        GF fq = GF::prime(q);
        std::vector<LegForm<GF>> basis;
        bool reducible = true;
        try {
            for (auto& kv : perp) {
                LegForm<GF> f;
                for (int i = 0; i < 17; ++i) f.w[i] = detail::reduce_mod_p(fq, kv[i]);
                basis.push_back(std::move(f));
            }
        } catch (const hx_error&) {
            reducible = false;
        }
        if (!reducible) continue;
        // the reduction must keep the full span (same codimension)
        {
            std::vector<Vec<GF>> rows;
            for (auto& f : basis) rows.emplace_back(f.w.begin(), f.w.end());
            if (mat_rank(Mat<GF>::from_rows(fq, rows)) != int(perp.size())) continue;
        }
        LegSearchOptions sopts;
        sopts.seed = seed ^ q;
        sopts.max_results = opts.max_leg_results;
        auto res = search_legs(fq, basis, sopts);
        out.prime = q;
        out.found = int(res.points.size());
        out.truncated = res.truncated;
        out.interior = 0;
        for (auto& pt : res.points)
            if (pt.interior) ++out.interior;
        out.missing_mass = std::max(0, 20 - out.found);
        // every found leg form must vanish at the reduced lift samples
        out.all_vanish_on_samples = true;
        for (auto& pt : res.points) {
            auto form = segre_coords(fq, pt.u, pt.v);
            for (auto& s : lift.samples) {
                WeightedPoint<GF> sred{};
                for (int i = 0; i < 11; ++i) sred.c[i] = detail::reduce_mod_p(fq, s.c[i]);
                if (!is_zero(eval_form(fq, form, weighted_to_p16(fq, sred))))
                    out.all_vanish_on_samples = false;
            }
        }
        out.points = res.points;
        if (out.found >= goal) break;
    }
    return out;
}

// end-to-end run on a certified curve
template <class FrameT>
PipelineResult run_pipeline(const CertifiedCurve<FrameT>& cc, u64 seed,
                            const PipelineOptions& opts) {
    PipelineResult out;
    out.name = cc.spec.name;
    out.seed = seed;
    out.prime = cc.spec.prime;
    out.cert = cc.report;
    const CatalogRow* row = nullptr;
    for (auto& r : catalog())
        if (out.name == r.name) row = &r;
    out.h0_tangent_table = row ? row->h0_tangent : -1;
    std::string stage = "tangent_section_space";
    try {
        auto ts = tangent_section_space(cc.frame, cc.boundary);
        out.h0_tangent = ts.dimension;
        stage = "lift_space";
        auto ls = lift_space(cc.frame, cc.boundary, ts);
        out.lift_dim = ls.dimension;
        out.lift_dim_bound = ts.dimension - 2 * cc.report.d + cc.report.d_prime;
        stage = "pick_lift";
        Rng rng(seed ^ 0xF00DULL);
        bool want_identity = opts.with_legs && cc.report.c + 7 == 10;
        auto tuple = pick_lift(cc.frame, ls, rng, want_identity);
        stage = "complete_q7";
        tuple.s7 = complete_q7(cc.frame, cc.boundary, tuple);
        out.q7_ok = true;
        stage = "assemble_lift";
        auto lift = assemble_lift(cc.frame, cc.boundary, tuple, cc.report.g, opts.samples);
        out.on_variety_ok = true;
        out.genus_D = lift.genus_D;
        stage = "span_codim";
        span_codim(cc.frame, cc.boundary, lift);
        out.span_codim = lift.span_codim;
        out.span_codim_expected = cc.report.c + 7;
        out.misses_center = lift.misses_center;
        out.deg_D = lift.deg_D;
        stage = "bond_census";
        out.census = bond_census(cc.frame, cc.boundary, lift);
        stage = "family_dimensions";
        out.dims = family_dimensions(cc.report.c, cc.report.d, cc.report.g, cc.report.d_prime,
                                     out.h0_tangent);
        if (opts.with_legs && lift.span_codim == 10) {
            stage = "legs";
            out.legs = leg_stage(cc.frame, lift, opts, seed);
        }
    } catch (const hx_error& e) {
        out.failure = stage + ": " + e.what();
    }
    return out;
}

// catalog dispatch: parametrized rows run over Q, the rest over F_prime
inline PipelineResult hexapod_pipeline(const std::string& name, u64 seed, u64 prime,
                                       const PipelineOptions& opts = {}) {
    const CatalogRow& row = row_info(name);
    if (row.rational_field) {
        auto cc = make_certified_q(name, seed, opts.max_ext_degree);
        return run_pipeline(cc, seed, opts);
    }
    auto cc = make_certified_gf(name, seed, prime, opts.max_ext_degree);
    return run_pipeline(cc, seed, opts);
}

}  // namespace hexacurve

#endif
