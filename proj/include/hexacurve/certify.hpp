#ifndef HEXACURVE_CERTIFY_HPP
#define HEXACURVE_CERTIFY_HPP

#include "curves.hpp"

namespace hexacurve {

inline int forms_of_degree(int k) { return (k + 1) * (k + 2) * (k + 3) / 6; }

template <class FrameT>
struct is_param_frame : std::false_type {};
template <class F>
struct is_param_frame<ParamFrame<F>> : std::true_type {};
template <class FrameT>
inline constexpr bool is_param_frame_v = is_param_frame<FrameT>::value;

// ---------------------------------------------------------------------------
// Frame construction
// ---------------------------------------------------------------------------

template <class F>
ParamFrame<F> build_param_frame(const CurveSpec<F>& cs) {
    require(cs.param.has_value(), errc::internal, "curve has no parametrization");
    ParamFrame<F> frame(cs.param->at(0).fld, *cs.param);
    require(frame.forms_coprime(), errc::degenerate_draw, "parametrization has a base point");
    return frame;
}

inline SampleFrame build_sample_frame(GF fld, const CurveSpec<GF>& cs, Rng& rng) {
    require(!cs.gens.empty(), errc::internal, "curve has no generators");
    int target = 6 * cs.claimed_d + 10;
    auto pts = curvegen::slice_points(fld, cs.gens, target, true, rng);
    // the identity point lies on every catalog curve by construction
    std::array<GFElem, 4> id{fld.one(), fld.zero(), fld.zero(), fld.zero()};
    std::vector<GFElem> idv(id.begin(), id.end());
    bool id_on = true;
    for (auto& g : cs.gens)
        if (!poly_eval(g, idv).is_zero()) id_on = false;
    if (id_on) {
        bool have = false;
        for (auto& p : pts)
            if (p.ext_deg == 1) {
                bool eq = true;
                auto nid = normalize_point(fld, id);
                for (int i = 0; i < 4; ++i)
                    if (!(p.c[i] == nid[i])) eq = false;
                if (eq) have = true;
            }
        if (!have) pts.push_back({id, 1});
    }
    SampleFrame frame(fld, cs.gens, pts);
    require(frame.max_certified_degree(cs.claimed_d) >= 6, errc::insufficient_points,
            "not enough curve points over the base field");
    return frame;
}

// ---------------------------------------------------------------------------
// The certified invariants
// ---------------------------------------------------------------------------

template <class FrameT>
int hilbert_h0(const FrameT& frame, int k, int curve_degree) {
    require(k >= 1 && k <= 6, errc::out_of_range, "degree outside the certified range");
    if constexpr (!is_param_frame_v<FrameT>) {
        require(frame.max_certified_degree(curve_degree) >= k, errc::insufficient_points,
                "too few points to certify this degree");
    }
    return forms_of_degree(k) - frame.dim_rc(k);
}

// degree and genus from the Hilbert function at degrees 5 and 6
template <class FrameT>
std::pair<int, int> degree_genus(const FrameT& frame) {
    int r5 = frame.dim_rc(5), r6 = frame.dim_rc(6);
    int d = r6 - r5;
    int g = 5 * d + 1 - r5;
    require(d >= 1 && g >= 0 && g <= 3 * d, errc::non_linear_fit,
            "Hilbert values do not fit an integral curve");
    return {d, g};
}

template <class FrameT>
bool quadratic_normality(const FrameT& frame, int d, int g) {
    require(2 * d > 2 * g - 2, errc::out_of_range_genus, "degree too small for this genus");
    int h0_2 = forms_of_degree(2) - frame.dim_rc(2);
    return 10 - h0_2 == 2 * d + 1 - g;
}

struct ProbeResult {
    IrreducibilityTag tag = IrreducibilityTag::Unknown;
    std::string evidence;
};

template <class F>
ProbeResult irreducibility_probe(const CurveSpec<F>& cs, const ParamFrame<F>& frame) {
    ProbeResult r;
    if (frame.forms_coprime()) {
        r.tag = IrreducibilityTag::CertifiedRational;
        r.evidence = "coprime parametrization of P^1";
    } else {
        r.tag = IrreducibilityTag::Reducible;
        r.evidence = "parametrization forms share a factor";
    }
    (void)cs;
    return r;
}

inline ProbeResult irreducibility_probe(const CurveSpec<GF>& cs, const SampleFrame& frame,
                                        int d, Rng& rng) {
    ProbeResult r;
    for (size_t i = 0; i < cs.gens.size(); ++i)
        if (cs.gens[i].is_zero_poly()) {
            r.tag = IrreducibilityTag::Reducible;
            r.evidence = "generator " + std::to_string(i) + " vanishes identically";
            return r;
        }
    for (int attempt = 0; attempt < 3; ++attempt) {
        Rng ar = rng.fork(u64(attempt) + 211);
        auto chi = hyperplane_eliminant(frame, d, ar);
        if (!chi.has_value()) continue;
        if (chi->degree() != d) continue;
        UniPoly<GF> der = chi->derivative();
        bool squarefree = poly_gcd(*chi, der).degree() == 0;
        if (squarefree) {
            r.tag = IrreducibilityTag::ProbablyIrreducible;
            r.evidence = "generic hyperplane section has " + std::to_string(d) +
                         " distinct points over the closure";
            return r;
        }
    }
    r.tag = IrreducibilityTag::Unknown;
    r.evidence = "hyperplane section probe failed";
    return r;
}

// ---------------------------------------------------------------------------
// Certification against the claimed catalog row
// ---------------------------------------------------------------------------

template <class FrameT>
struct CertifiedCurve {
    using F = typename FrameT::Field;
    CurveSpec<F> spec;
    FrameT frame;
    typename FrameT::Boundary boundary;
    CertReport report;
};

template <class F>
typename ParamFrame<F>::Boundary curve_boundary(const CurveSpec<F>&, const ParamFrame<F>& frame,
                                                int, int, Rng&) {
    return frame.boundary();
}

inline SampleBoundary curve_boundary(const CurveSpec<GF>&, const SampleFrame& frame, int d,
                                     int max_ext_degree, Rng& rng) {
    for (int attempt = 0; attempt < 4; ++attempt) {
        Rng ar = rng.fork(u64(attempt) + 401);
        auto b = sample_boundary(frame, d, max_ext_degree, ar);
        if (b.has_value()) return *b;
    }
    SampleBoundary bad;
    bad.complete = false;
    return bad;
}

template <class FrameT>
CertifiedCurve<FrameT> certify(CurveSpec<typename FrameT::Field> cs, FrameT frame,
                               int max_ext_degree, Rng& rng) {
    CertifiedCurve<FrameT> out{std::move(cs), std::move(frame), {}, {}};
    CertReport& rep = out.report;
    try {
        auto [d, g] = degree_genus(out.frame);
        rep.d = d;
        rep.g = g;
        rep.c = hilbert_h0(out.frame, 2, d);
        if (d != out.spec.claimed_d || g != out.spec.claimed_g || rep.c != out.spec.claimed_c) {
            rep.failure = "invariants (" + std::to_string(rep.c) + "," + std::to_string(d) + "," +
                          std::to_string(g) + ") differ from the claimed row";
            return out;
        }
        if (2 * d > 2 * g - 2) {
            rep.quadratically_normal = quadratic_normality(out.frame, d, g);
            // the truth value is forced by (c, d, g); a mismatch signals a bad draw
            bool expected_qn = (10 - rep.c == 2 * d + 1 - g);
            if (rep.quadratically_normal != expected_qn) {
                rep.failure = "quadratic normality disagrees with the row arithmetic";
                return out;
            }
        }
        out.boundary = curve_boundary(out.spec, out.frame, d, max_ext_degree, rng);
        rep.d_prime = out.boundary.d_prime;
        rep.simple_count = out.boundary.simple_count;
        rep.condition_B = out.boundary.condition_B;
        rep.boundary_complete = out.boundary.complete && out.boundary.total_mult == 2 * d;
        if constexpr (is_param_frame_v<FrameT>) {
            auto probe = irreducibility_probe(out.spec, out.frame);
            rep.irreducibility = probe.tag;
            rep.irreducibility_evidence = probe.evidence;
        } else {
            auto probe = irreducibility_probe(out.spec, out.frame, d, rng);
            rep.irreducibility = probe.tag;
            rep.irreducibility_evidence = probe.evidence;
        }
        rep.certified = rep.boundary_complete &&
                        (rep.irreducibility == IrreducibilityTag::CertifiedRational ||
                         rep.irreducibility == IrreducibilityTag::ProbablyIrreducible);
        if (!rep.certified && rep.failure.empty()) rep.failure = "certification checks failed";
    } catch (const hx_error& e) {
        rep.failure = e.what();
    }
    out.spec.certified = rep.certified;
    return out;
}

// ---------------------------------------------------------------------------
// Catalog dispatch with retry-on-degenerate
// ---------------------------------------------------------------------------

template <class F>
CurveSpec<F> construct_row_param(F fld, const std::string& name, Rng& rng) {
    if (name == "rnc3") return make_rnc3(fld, rng);
    if (name == "quadric(1,3)") return make_graph_curve(fld, 3, rng);
    if (name == "quadric(1,4)") return make_graph_curve(fld, 4, rng);
    if (name == "rational5") return make_rational5(fld, rng);
    fail(errc::unknown_name, "'" + name + "' is not a parametrized catalog row");
}

inline CurveSpec<GF> construct_row_ideal(GF fld, const std::string& name, Rng& rng) {
    if (name == "elliptic4") return make_elliptic4(fld, rng);
    if (name == "canonical6") return make_canonical6(fld, rng);
    if (name == "quadric(2,3)") return make_quadric_ab(fld, 2, 3, rng);
    if (name == "quadric(2,4)") return make_quadric_ab(fld, 2, 4, rng);
    if (name == "quadric(3,4)") return make_quadric_ab(fld, 3, 4, rng);
    if (name == "quadric(4,4)") return make_quadric_ab(fld, 4, 4, rng);
    if (name == "elliptic5") return make_elliptic5(fld, rng);
    if (name == "sextic(6,2)") return make_sextic62(fld, rng);
    if (name == "det-sextic(6,3)") return make_det_sextic(fld, rng);
    if (name == "det-septic(7,5)") return make_det_septic(fld, rng);
    fail(errc::unknown_name, "'" + name + "' is not an ideal-defined catalog row");
}

// certified instance over Q, retrying the randomization on degenerate draws
inline CertifiedCurve<ParamFrame<QQ>> make_certified_q(const std::string& name, u64 seed,
                                                       int max_ext_degree = 16, int retries = 10) {
    QQ fld;
    for (int attempt = 0; attempt < retries; ++attempt) {
        Rng rng = Rng(seed).fork(u64(attempt));
        try {
            auto cs = construct_row_param(fld, name, rng);
            cs.seed = seed;
            auto cc = certify(cs, build_param_frame(cs), max_ext_degree, rng);
            if (cc.report.certified) return cc;
        } catch (const hx_error& e) {
            if (e.code() == errc::unknown_name) throw;
        }
    }
    fail(errc::degenerate_draw, "no certified instance of '" + name + "' after retries");
}

inline CertifiedCurve<SampleFrame> make_certified_gf(const std::string& name, u64 seed, u64 prime,
                                                     int max_ext_degree = 16, int retries = 10) {
    GF fld = GF::prime(prime);
    for (int attempt = 0; attempt < retries; ++attempt) {
        Rng rng = Rng(seed ^ (prime << 1)).fork(u64(attempt));
        try {
            auto cs = construct_row_ideal(fld, name, rng);
            cs.seed = seed;
            cs.prime = prime;
            auto cc = certify(cs, build_sample_frame(fld, cs, rng), max_ext_degree, rng);
            if (cc.report.certified) return cc;
        } catch (const hx_error& e) {
            if (e.code() == errc::unknown_name) throw;
        }
    }
    fail(errc::degenerate_draw, "no certified instance of '" + name + "' after retries");
}

}  // namespace hexacurve

#endif
