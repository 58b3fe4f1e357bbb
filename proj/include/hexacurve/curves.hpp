#ifndef HEXACURVE_CURVES_HPP
#define HEXACURVE_CURVES_HPP

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "curve_frame.hpp"

namespace hexacurve {

// ---------------------------------------------------------------------------
// Catalog metadata. Rows marked starred are constructible but excluded from
// the lift-family pipeline. h0/h1 refer to sections of the restricted tangent
// bundle; dim_hilb and edim_pods are the tabulated family dimensions (-1
// where no value is claimed).
// ---------------------------------------------------------------------------

struct CatalogRow {
    const char* name;
    int c, d, g;
    bool starred;
    bool rational_field;  // parametrized over Q
    int h0_tangent, h1_tangent, h0_normal, dim_hilb, edim_pods;
    const char* betti;
};

inline const std::vector<CatalogRow>& catalog() {
    static const std::vector<CatalogRow> rows = {
        {"rnc3", 3, 3, 0, false, true, 15, 0, 12, 21, 16, "1 - - / - 3 2"},
        {"elliptic4", 2, 4, 1, false, false, 16, 0, 16, 24, 13, "1 - - / - 2 - / - - 1"},
        {"quadric(1,3)", 1, 4, 0, false, true, 19, 0, 16, 27, 10, "1 - - - / - 1 - - / - 3 4 1"},
        {"quadric(2,3)", 1, 5, 2, false, false, 17, 0, 20, 27, 10, "1 - - / - 1 - / - 2 2"},
        {"canonical6", 1, 6, 4, false, false, 15, 0, 24, 27, 10, "1 - - / - 1 - / - 1 - / - - 1"},
        {"rational5", 0, 5, 0, false, true, 23, 0, 20, 33, 10, "1 - - - / - - - - / - 4 3 - / - 1 2 1"},
        {"elliptic5", 0, 5, 1, false, false, 20, 0, 20, 30, 7, "1 - - - / - - - - / - 5 5 1"},
        {"det-sextic(6,3)", 0, 6, 3, false, false, 18, 0, 24, 30, 7, "1 - - / - - - / - 4 3"},
        {"sextic(6,2)", 0, 6, 2, false, false, 21, 0, 24, 33, 10, "1 - - - / - - - - / - 3 1 - / - 1 3 1"},
        {"det-septic(7,5)", 0, 7, 5, false, false, 16, 0, 28, 30, 7, "1 - - / - - - / - 3 1 / - - 1"},
        {"quadric(1,4)", 1, 5, 0, true, true, 23, 0, 20, 33, 16, "1 - - - / - 1 - - / - - - - / - 4 6 2"},
        {"quadric(2,4)", 1, 6, 3, true, false, 18, 0, 24, 30, 13, "1 - - - / - 1 - - / - - - - / - 3 4 1"},
        {"quadric(3,4)", 1, 7, 6, true, false, 15, 2, -1, -1, -1, "1 - - / - 1 - / - - - / - 2 2"},
        {"quadric(4,4)", 1, 8, 9, true, false, -1, -1, -1, -1, -1, "1 - - / - 1 - / - - - / - 1 - / - - 1"},
    };
    return rows;
}

inline const CatalogRow& row_info(const std::string& name) {
    for (auto& r : catalog())
        if (name == r.name) return r;
    fail(errc::unknown_name, "unknown catalog curve '" + name + "'");
}

template <class F>
struct CurveSpec {
    std::string name;
    int claimed_c = 0, claimed_d = 0, claimed_g = 0;
    bool starred = false;
    std::optional<std::array<BinForm<F>, 4>> param;  // rational rows
    std::vector<MultiPoly<F>> gens;                  // ideal rows (and interpolated ideals)
    std::uint64_t seed = 0;
    std::uint64_t prime = 0;
    bool certified = false;
};

enum class IrreducibilityTag { CertifiedRational, ProbablyIrreducible, Reducible, Unknown };

struct CertReport {
    int c = -1, d = -1, g = -1;
    bool quadratically_normal = false;
    int d_prime = 0, simple_count = 0;
    bool condition_B = false;
    bool boundary_complete = false;
    IrreducibilityTag irreducibility = IrreducibilityTag::Unknown;
    std::string irreducibility_evidence;
    bool certified = false;
    std::string failure;
};

// ---------------------------------------------------------------------------
// Generic helpers used by constructors
// ---------------------------------------------------------------------------

namespace curvegen {

template <class F>
Mat<F> random_gl4_fixing_e0(F fld, Rng& rng) {
    // invertible with first column proportional to (1,0,0,0): the image of
    // (1:0:0:0) stays (1:0:0:0), so curves through it keep the identity point
    for (;;) {
        Mat<F> U(fld, 4, 4);
        U.at(0, 0) = fld.one();
        for (int i = 0; i < 4; ++i)
            for (int j = 1; j < 4; ++j) U.at(i, j) = fld.random(rng);
        if (!is_zero(mat_det(U))) return U;
    }
}

template <class F>
std::array<BinForm<F>, 4> apply_gl4(F fld, const Mat<F>& U, const std::array<BinForm<F>, 4>& b) {
    std::array<BinForm<F>, 4> out{BinForm<F>(fld, b[0].deg), BinForm<F>(fld, b[0].deg),
                                  BinForm<F>(fld, b[0].deg), BinForm<F>(fld, b[0].deg)};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!is_zero(U.at(i, j))) out[i] = out[i] + U.at(i, j) * b[j];
    return out;
}

// substitution polynomials for a linear change e = U w
template <class F>
std::vector<MultiPoly<F>> gl4_substitution(F fld, const Mat<F>& U) {
    std::vector<MultiPoly<F>> sub;
    for (int i = 0; i < 4; ++i) {
        MultiPoly<F> s(fld, 4, p3::weights());
        for (int j = 0; j < 4; ++j) {
            Expo e(4, 0);
            e[j] = 1;
            s.add_term(e, U.at(i, j));
        }
        sub.push_back(std::move(s));
    }
    return sub;
}

template <class F>
MultiPoly<F> random_form(F fld, int degree, Rng& rng, bool vanish_at_identity) {
    MultiPoly<F> f(fld, 4, p3::weights());
    for (auto& e : monomial_basis(4, p3::weights(), degree)) {
        if (vanish_at_identity && e[0] == degree) continue;  // kill the e0^degree term
        f.add_term(e, fld.random(rng));
    }
    return f;
}

// kernel of the evaluation of all degree-k monomials at the given points,
// returned as polynomials (exact vanishing ideal slice when the points
// certify degree k)
inline std::vector<MultiPoly<GF>> vanishing_forms(GF base, int k,
                                                  const std::vector<SamplePoint>& pts) {
    auto mons = monomial_polys(base, 4, p3::weights(), k);
    SampleFrame tmp(base, {}, pts);
    std::vector<SampleFrame::Vec> cols;
    for (auto& m : mons) cols.push_back(tmp.restrict(m, k));
    auto rk = mat_rank_kernel(tmp.to_matrix(cols));
    std::vector<MultiPoly<GF>> out;
    for (auto& v : rk.kernel) {
        MultiPoly<GF> f(base, 4, p3::weights());
        for (size_t j = 0; j < mons.size(); ++j)
            if (!is_zero(v[j])) f = f + v[j] * mons[j];
        out.push_back(std::move(f));
    }
    return out;
}

inline void push_point(std::vector<SamplePoint>& pts, std::set<std::vector<u64>>& seen, int& weight,
                       GF fld, std::array<GFElem, 4> z) {
    // an extension representative whose coordinates are all rational is
    // re-keyed as a rational point (weights must count residue degrees)
    z = normalize_point(fld, z);
    unsigned ext_deg = fld.k();
    if (ext_deg > 1) {
        bool rational = true;
        for (auto& c : z)
            for (unsigned t = 1; t < ext_deg; ++t)
                if (c.coeffs()[t] != 0) rational = false;
        if (rational) {
            GF base = GF::prime(fld.p());
            std::array<GFElem, 4> zb{base.from_int(i64(z[0].coeffs()[0])),
                                     base.from_int(i64(z[1].coeffs()[0])),
                                     base.from_int(i64(z[2].coeffs()[0])),
                                     base.from_int(i64(z[3].coeffs()[0]))};
            push_point(pts, seen, weight, base, zb);
            return;
        }
    }
    std::vector<u64> key{ext_deg};
    for (auto& c : z) key.insert(key.end(), c.coeffs().begin(), c.coeffs().end());
    if (seen.count(key)) return;
    seen.insert(key);
    pts.push_back({z, ext_deg});
    weight += int(ext_deg);
}

// evaluate a restricted (3-variable) polynomial as a univariate in the last
// plane coordinate; mu and nu are elements of ext
inline UniPoly<GF> plane_uni(const MultiPoly<GF>& q, const GFElem& mu, const GFElem& nu, GF ext) {
    UniPoly<GF> u(ext);
    for (auto& [e, c] : q.terms()) {
        GFElem v = ext.lift(c);
        if (e[0]) v = v * ext.pow(mu, u64(e[0]));
        if (e[1]) v = v * ext.pow(nu, u64(e[1]));
        u.set_coeff(e[2], u.coeff(e[2]) + v);
    }
    return u;
}

// Collect points of V(gens) by slicing with the plane pencil e0 = tau e1
// (plus e1 = 0), eliminating the last plane coordinate with a resultant.
// Candidate points must satisfy every generator and must not lie on any of
// the filter groups (a group matches when all its forms vanish). Points are
// gathered until their residue weights reach the target; quadratic extension
// points are used to top up when allowed.
inline std::vector<SamplePoint> slice_points(
    GF base, const std::vector<MultiPoly<GF>>& gens, int target_weight, bool allow_ext, Rng& rng,
    const std::vector<std::vector<MultiPoly<GF>>>& filter_groups = {}) {
    require(gens.size() >= 2, errc::arity_mismatch, "need at least two generators to slice");
    std::vector<SamplePoint> pts;
    std::set<std::vector<u64>> seen;
    int weight = 0;
    u64 p = base.p();

    auto handle_plane = [&](const std::vector<MultiPoly<GF>>& sub, u64 salt) {
        std::vector<MultiPoly<GF>> rg;
        for (auto& g : gens) rg.push_back(pullback(g, sub));
        std::vector<std::vector<MultiPoly<GF>>> rf;
        for (auto& grp : filter_groups) {
            std::vector<MultiPoly<GF>> r;
            for (auto& g : grp) r.push_back(pullback(g, sub));
            rf.push_back(std::move(r));
        }
        // nonzero restrictions ordered by degree; pairs sharing a component
        // (resultant identically zero) are skipped
        std::vector<int> order;
        for (size_t i = 0; i < rg.size(); ++i)
            if (!rg[i].is_zero_poly() && rg[i].degree() >= 1) order.push_back(int(i));
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return rg[a].degree() < rg[b].degree(); });
        if (order.size() < 2) return;
        auto resultant_of = [&](const MultiPoly<GF>& f, const MultiPoly<GF>& g) {
            int df = f.degree(), dg = g.degree();
            std::vector<GFElem> xs, ys;
            for (int t = 0; t <= df * dg; ++t) {
                GFElem nu = base.from_int(t);
                xs.push_back(nu);
                ys.push_back(sylvester_resultant(plane_uni(f, base.one(), nu, base),
                                                 plane_uni(g, base.one(), nu, base), df, dg));
            }
            return interpolate(base, xs, ys);
        };
        int i1 = order[0], i2 = -1;
        UniPoly<GF> res(base);
        for (size_t t = 1; t < order.size() && i2 < 0; ++t) {
            res = resultant_of(rg[i1], rg[order[t]]);
            if (!res.is_zero_poly()) i2 = order[t];
        }
        if (i2 < 0) return;  // every pair shares a component on this plane
        const auto &f = rg[i1], &g = rg[i2];
        Rng frng = rng.fork(salt);

        auto try_point = [&](const GFElem& mu, const GFElem& nu, GF ext) {
            UniPoly<GF> fu = plane_uni(f, mu, nu, ext), gu = plane_uni(g, mu, nu, ext);
            UniPoly<GF> h = poly_gcd(fu, gu);
            if (h.degree() < 1) return;
            Rng rr = frng.fork(u64(nu.coeffs()[0]) * 2 + ext.k());
            for (auto& [om, mult] : roots_in_field(h, rr)) {
                std::vector<GFElem> wv{mu, nu, om};
                bool ok = true;
                for (auto& q : rg)
                    if (!eval_lifted(q, ext, wv).is_zero()) ok = false;
                if (!ok) continue;
                for (auto& grp : rf) {
                    bool on_component = !grp.empty();
                    for (auto& q : grp)
                        if (!eval_lifted(q, ext, wv).is_zero()) on_component = false;
                    if (on_component) ok = false;
                }
                if (!ok) continue;
                std::array<GFElem, 4> z;
                for (int i = 0; i < 4; ++i) z[i] = eval_lifted(sub[i], ext, wv);
                push_point(pts, seen, weight, ext, z);
            }
        };

        for (auto& fac : factorize(res, frng)) {
            if (weight >= target_weight + 16) break;
            if (fac.poly.degree() == 1) {
                try_point(base.one(), -fac.poly.coeff(0), base);
            } else if (allow_ext && fac.poly.degree() == 2 && weight < target_weight) {
                GF ext = GF::ext(p, 2);
                std::vector<GFElem> lifted;
                for (int i = 0; i <= 2; ++i) lifted.push_back(ext.lift(fac.poly.coeff(i)));
                Rng rr = frng.fork(u64(fac.poly.coeff(0).coeffs()[0]) + 5);
                auto r0 = some_root_in_field(UniPoly<GF>(ext, lifted), rr);
                if (r0.has_value()) try_point(ext.one(), *r0, ext);
            }
        }
        try_point(base.zero(), base.one(), base);  // (mu : nu) = (0 : 1)
    };

    std::vector<int> w3(3, 1);
    auto plane_var = [&](int v) {
        MultiPoly<GF> s(base, 3, w3);
        Expo e(3, 0);
        e[v] = 1;
        s.add_term(e, base.one());
        return s;
    };
    for (u64 tau = 0; tau < p && weight < target_weight; ++tau) {
        std::vector<MultiPoly<GF>> sub;
        sub.push_back(base.from_int(i64(tau)) * plane_var(0));  // e0 = tau mu
        sub.push_back(plane_var(0));                            // e1 = mu
        sub.push_back(plane_var(1));
        sub.push_back(plane_var(2));
        handle_plane(sub, tau + 1);
    }
    if (weight < target_weight) {
        std::vector<MultiPoly<GF>> sub;
        sub.push_back(plane_var(0));
        sub.push_back(MultiPoly<GF>(base, 3, w3));  // e1 = 0
        sub.push_back(plane_var(1));
        sub.push_back(plane_var(2));
        handle_plane(sub, 0);
    }
    return pts;
}

// random binary form of given degree with prescribed value pattern at (1, 0):
// when lead_zero, the s^deg coefficient is 0; otherwise it is 1
template <class F>
BinForm<F> random_binform(F fld, int deg, Rng& rng, std::optional<bool> lead_zero = std::nullopt) {
    BinForm<F> b(fld, deg);
    for (int i = 0; i <= deg; ++i) b.c[i] = fld.random(rng);
    if (lead_zero.has_value()) b.c[0] = *lead_zero ? fld.zero() : fld.one();
    return b;
}

// parametrization of a rational curve of type (1, b) on a quadric:
// (s phi0, s phi1, t phi0, t phi1) twisted by a generic change fixing the
// identity point; the curve has degree b + 1
template <class F>
std::array<BinForm<F>, 4> graph_param(F fld, int b, Rng& rng) {
    for (;;) {
        BinForm<F> phi0 = random_binform(fld, b, rng, false);  // phi0(1,0) = 1
        BinForm<F> phi1 = random_binform(fld, b, rng, true);   // phi1(1,0) = 0
        if (poly_gcd(phi0.dehomogenized(), phi1.dehomogenized()).degree() > 0) continue;
        BinForm<F> s(fld, 1, {fld.one(), fld.zero()});
        BinForm<F> t(fld, 1, {fld.zero(), fld.one()});
        std::array<BinForm<F>, 4> base{s * phi0, s * phi1, t * phi0, t * phi1};
        auto U = random_gl4_fixing_e0(fld, rng);
        return apply_gl4(fld, U, base);
    }
}

}  // namespace curvegen

// ---------------------------------------------------------------------------
// Catalog constructors. Each draws a randomized instance through the identity
// point (1:0:0:0); certification decides whether the draw is good.
// ---------------------------------------------------------------------------

template <class F>
CurveSpec<F> make_rnc3(F fld, Rng& rng) {
    using namespace curvegen;
    CurveSpec<F> cs;
    cs.name = "rnc3";
    cs.claimed_c = 3;
    cs.claimed_d = 3;
    cs.claimed_g = 0;
    std::array<BinForm<F>, 4> base{BinForm<F>(fld, 3, {fld.one(), fld.zero(), fld.zero(), fld.zero()}),
                                   BinForm<F>(fld, 3, {fld.zero(), fld.one(), fld.zero(), fld.zero()}),
                                   BinForm<F>(fld, 3, {fld.zero(), fld.zero(), fld.one(), fld.zero()}),
                                   BinForm<F>(fld, 3, {fld.zero(), fld.zero(), fld.zero(), fld.one()})};
    auto U = random_gl4_fixing_e0(fld, rng);
    cs.param = apply_gl4(fld, U, base);
    return cs;
}

template <class F>
CurveSpec<F> make_graph_curve(F fld, int b, Rng& rng) {
    CurveSpec<F> cs;
    cs.name = b == 3 ? "quadric(1,3)" : "quadric(1,4)";
    cs.claimed_c = 1;
    cs.claimed_d = b + 1;
    cs.claimed_g = 0;
    cs.starred = (b == 4);
    cs.param = curvegen::graph_param(fld, b, rng);
    return cs;
}

template <class F>
CurveSpec<F> make_rational5(F fld, Rng& rng) {
    CurveSpec<F> cs;
    cs.name = "rational5";
    cs.claimed_c = 0;
    cs.claimed_d = 5;
    cs.claimed_g = 0;
    for (;;) {
        std::array<BinForm<F>, 4> phi{curvegen::random_binform(fld, 5, rng, false),
                                      curvegen::random_binform(fld, 5, rng, true),
                                      curvegen::random_binform(fld, 5, rng, true),
                                      curvegen::random_binform(fld, 5, rng, true)};
        ParamFrame<F> pf(fld, phi);
        if (!pf.forms_coprime()) continue;
        cs.param = phi;
        return cs;
    }
}

// a twisted cubic tangent to the boundary quadric at a rational point; used
// to exercise double boundary points (over Q the boundary quadric has no
// rational points, so this lives over F_p)
inline CurveSpec<GF> make_tangent_cubic(GF fld, Rng& rng) {
    CurveSpec<GF> cs;
    cs.name = "rnc3-tangent";
    cs.claimed_c = 3;
    cs.claimed_d = 3;
    cs.claimed_g = 0;
    for (;;) {
        // rational point z0 on the boundary quadric, tangent direction v with
        // <z0, v> = 0; then h(z0 + t v + ...) vanishes to order 2 at t = 0
        std::array<GFElem, 4> z0;
        bool found = false;
        for (int tries = 0; tries < 400 && !found; ++tries) {
            z0 = {fld.zero(), fld.random(rng), fld.random(rng), fld.random(rng)};
            GFElem s = fld.zero();
            for (int i = 1; i < 4; ++i) s += z0[i] * z0[i];
            s = -s;
            if (s.is_zero()) continue;
            if (!(fld.pow(s, (fld.p() - 1) / 2) == fld.one())) continue;  // nonresidue
            for (u64 c = 1; c < fld.p(); ++c) {
                GFElem cand = fld.from_int(i64(c));
                if (cand * cand == s) {
                    z0[0] = cand;
                    found = true;
                    break;
                }
            }
        }
        if (!found) fail(errc::degenerate_draw, "no boundary point found; change prime");
        // direction with <z0, v> = 0: solve for the coordinate at a unit of z0
        int i0 = 0;
        while (z0[i0].is_zero()) ++i0;
        std::array<GFElem, 4> v{fld.random(rng), fld.random(rng), fld.random(rng), fld.random(rng)};
        GFElem dot = fld.zero();
        for (int i = 0; i < 4; ++i)
            if (i != i0) dot += z0[i] * v[i];
        v[i0] = -(dot / z0[i0]);
        std::array<GFElem, 4> w, x;
        for (int i = 0; i < 4; ++i) {
            w[i] = fld.random(rng);
            x[i] = fld.random(rng);
        }
        std::array<BinForm<GF>, 4> phi{BinForm<GF>(fld, 3), BinForm<GF>(fld, 3), BinForm<GF>(fld, 3),
                                       BinForm<GF>(fld, 3)};
        for (int i = 0; i < 4; ++i) phi[i].c = {z0[i], v[i], w[i], x[i]};  // z0 + v t + w t^2 + x t^3
        ParamFrame<GF> pf(fld, phi);
        if (!pf.forms_coprime()) continue;
        auto b = pf.boundary();
        if (b.infinity_block || !b.condition_B || b.d_prime != 1 || b.simple_count != 4) continue;
        cs.param = phi;
        return cs;
    }
}

inline CurveSpec<GF> make_elliptic4(GF fld, Rng& rng) {
    CurveSpec<GF> cs;
    cs.name = "elliptic4";
    cs.claimed_c = 2;
    cs.claimed_d = 4;
    cs.claimed_g = 1;
    cs.gens = {curvegen::random_form(fld, 2, rng, true), curvegen::random_form(fld, 2, rng, true)};
    return cs;
}

inline CurveSpec<GF> make_canonical6(GF fld, Rng& rng) {
    CurveSpec<GF> cs;
    cs.name = "canonical6";
    cs.claimed_c = 1;
    cs.claimed_d = 6;
    cs.claimed_g = 4;
    cs.gens = {curvegen::random_form(fld, 2, rng, true), curvegen::random_form(fld, 3, rng, true)};
    return cs;
}

inline CurveSpec<GF> make_det_sextic(GF fld, Rng& rng) {
    CurveSpec<GF> cs;
    cs.name = "det-sextic(6,3)";
    cs.claimed_c = 0;
    cs.claimed_d = 6;
    cs.claimed_g = 3;
    // 4x3 matrix of linear forms; two rows vanish at the identity point so
    // every maximal minor does
    auto lin = [&](bool vanish_id) {
        MultiPoly<GF> l(fld, 4, p3::weights());
        for (int i = vanish_id ? 1 : 0; i < 4; ++i) {
            Expo e(4, 0);
            e[i] = 1;
            l.add_term(e, fld.random(rng));
        }
        return l;
    };
    std::vector<std::vector<MultiPoly<GF>>> M;
    for (int r = 0; r < 4; ++r) {
        std::vector<MultiPoly<GF>> row;
        for (int c = 0; c < 3; ++c) row.push_back(lin(r < 2));
        M.push_back(std::move(row));
    }
    auto det3 = [&](int skip) {
        std::vector<int> rows;
        for (int r = 0; r < 4; ++r)
            if (r != skip) rows.push_back(r);
        MultiPoly<GF> d(fld, 4, p3::weights());
        int idx[3] = {0, 1, 2};
        std::sort(idx, idx + 3);
        do {
            int sgn = 1;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (idx[i] > idx[j]) sgn = -sgn;
            MultiPoly<GF> t = MultiPoly<GF>::constant(fld, 4, p3::weights(), fld.from_int(sgn));
            for (int i = 0; i < 3; ++i) t = t * M[rows[i]][idx[i]];
            d = d + t;
        } while (std::next_permutation(idx, idx + 3));
        return d;
    };
    for (int skip = 0; skip < 4; ++skip) cs.gens.push_back(det3(skip));
    return cs;
}

// 2x3 matrix with a linear and a quadratic row; the three 2x2 minors are the
// generators. Optionally plant a common factor (q_i = m l_i) for tests.
inline CurveSpec<GF> make_det_septic(GF fld, Rng& rng, bool plant_common_factor = false) {
    CurveSpec<GF> cs;
    cs.name = "det-septic(7,5)";
    cs.claimed_c = 0;
    cs.claimed_d = 7;
    cs.claimed_g = 5;
    std::vector<MultiPoly<GF>> l(3, MultiPoly<GF>(fld, 4, p3::weights()));
    for (;;) {
        std::vector<Vec<GF>> coeffs;
        for (int i = 0; i < 3; ++i) {
            MultiPoly<GF> li(fld, 4, p3::weights());
            Vec<GF> cv;
            for (int v = 1; v < 4; ++v) {  // spans <e1, e2, e3>: vanish at identity
                Expo e(4, 0);
                e[v] = 1;
                auto c = fld.random(rng);
                li.add_term(e, c);
                cv.push_back(c);
            }
            l[i] = li;
            coeffs.push_back(cv);
        }
        if (mat_rank(Mat<GF>::from_rows(fld, coeffs)) == 3) break;
    }
    std::vector<MultiPoly<GF>> q;
    if (plant_common_factor) {
        MultiPoly<GF> m(fld, 4, p3::weights());
        for (int v = 0; v < 4; ++v) {
            Expo e(4, 0);
            e[v] = 1;
            m.add_term(e, fld.random(rng));
        }
        for (int i = 0; i < 3; ++i) q.push_back(m * l[i]);
    } else {
        for (int i = 0; i < 3; ++i) q.push_back(curvegen::random_form(fld, 2, rng, false));
    }
    cs.gens = {l[0] * q[1] - l[1] * q[0], l[0] * q[2] - l[2] * q[0], l[1] * q[2] - l[2] * q[1]};
    return cs;
}

inline CurveSpec<GF> make_quadric_ab(GF fld, int a, int b, Rng& rng) {
    CurveSpec<GF> cs;
    cs.name = "quadric(" + std::to_string(a) + "," + std::to_string(b) + ")";
    cs.claimed_c = 1;
    cs.claimed_d = a + b;
    cs.claimed_g = (a - 1) * (b - 1);
    cs.starred = (b == 4);
    using namespace curvegen;
    auto U = random_gl4_fixing_e0(fld, rng);
    // bihomogeneous form of bidegree (a, b) vanishing at ((1:0),(1:0))
    std::vector<std::vector<GFElem>> f(a + 1, std::vector<GFElem>(b + 1));
    for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) f[i][j] = fld.random(rng);
    f[0][0] = fld.zero();
    // curve points by fibering over the first factor
    std::vector<SamplePoint> pts;
    std::set<std::vector<u64>> seen;
    int weight = 0;
    int target = 6 * cs.claimed_d + 12;
    auto segre_point = [&](GF ext, const GFElem& s, const GFElem& u, const GFElem& t,
                           const GFElem& v) {
        std::array<GFElem, 4> w{s * t, s * v, u * t, u * v};
        std::array<GFElem, 4> z{ext.zero(), ext.zero(), ext.zero(), ext.zero()};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (!is_zero(U.at(i, j))) z[i] += ext.lift(U.at(i, j)) * w[j];
        push_point(pts, seen, weight, ext, z);
    };
    auto fiber = [&](GF ext, const GFElem& s, const GFElem& u) {
        UniPoly<GF> slice(ext);
        for (int j = 0; j <= b; ++j) {
            GFElem cj = ext.zero();
            for (int i = 0; i <= a; ++i)
                cj += ext.lift(f[i][j]) * ext.pow(s, u64(a - i)) * ext.pow(u, u64(i));
            slice.set_coeff(j, cj);  // coefficient of t^(b-j) v^j ... stored by v-power
        }
        // slice(s,u; t,v) = sum_j c_j t^{b-j} v^j: dehomogenized in v/t
        Rng rr = rng.fork(u64(u.coeffs()[0]) * 7 + ext.k());
        for (auto& [vv, mult] : roots_in_field(slice, rr)) segre_point(ext, s, u, ext.one(), vv);
        // root at (t:v) = (0:1)
        if (slice.degree() < b) segre_point(ext, s, u, ext.zero(), ext.one());
    };
    for (u64 uu = 0; uu < fld.p() && weight < target; ++uu) fiber(fld, fld.one(), fld.from_int(i64(uu)));
    if (weight < target) fiber(fld, fld.zero(), fld.one());
    if (weight < target) {
        GF ext = GF::ext(fld.p(), 2);
        for (u64 uu = 0; uu < fld.p() && weight < target; ++uu) {
            std::vector<u64> co{uu, 1};  // u = generator + uu: an element outside F_p
            fiber(ext, ext.one(), ext.from_coeffs(co));
        }
    }
    require(weight > 6 * cs.claimed_d, errc::insufficient_points, "quadric curve has too few points");
    // generators: vanishing forms of degrees 2..4 at the collected points
    for (int k = 2; k <= 4; ++k)
        for (auto& gpoly : curvegen::vanishing_forms(fld, k, pts))
            cs.gens.push_back(gpoly);
    cs.gens.erase(std::remove_if(cs.gens.begin(), cs.gens.end(),
                                 [](const MultiPoly<GF>& g) { return g.is_zero_poly(); }),
                  cs.gens.end());
    return cs;
}

namespace curvegen {

// shared tail of the linkage constructions: given the linked union's cubics
// F1, F2 through the identity point, slice the complete intersection and keep
// the residual component
inline void linkage_points_and_gens(CurveSpec<GF>& cs, GF fld, const MultiPoly<GF>& F1,
                                    const MultiPoly<GF>& F2,
                                    const std::vector<std::vector<MultiPoly<GF>>>& residual_filters,
                                    Rng& rng) {
    int target = 6 * cs.claimed_d + 12;
    auto pts = slice_points(fld, {F1, F2}, target, true, rng, residual_filters);
    int weight = 0;
    for (auto& p : pts) weight += int(p.ext_deg);
    require(weight > 6 * cs.claimed_d, errc::insufficient_points, "linkage produced too few points");
    for (int k = 2; k <= 4; ++k)
        for (auto& gpoly : vanishing_forms(fld, k, pts)) cs.gens.push_back(gpoly);
}

}  // namespace curvegen

inline CurveSpec<GF> make_elliptic5(GF fld, Rng& rng) {
    using namespace curvegen;
    CurveSpec<GF> cs;
    cs.name = "elliptic5";
    cs.claimed_c = 0;
    cs.claimed_d = 5;
    cs.claimed_g = 1;
    // rational quartic B (type (1,3)), not through the identity point
    for (;;) {
        auto phi = graph_param(fld, 3, rng);
        // undo the identity-fixing property with a generic extra twist
        Mat<GF> V(fld, 4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) V.at(i, j) = fld.random(rng);
        if (is_zero(mat_det(V))) continue;
        phi = apply_gl4(fld, V, phi);
        ParamFrame<GF> B(fld, phi);
        if (!B.forms_coprime()) continue;
        auto bpts_p3 = B.sample_points(3 * 4 + 6);
        std::vector<SamplePoint> bpts;
        std::set<std::vector<u64>> seen;
        int w = 0;
        for (auto& z : bpts_p3) curvegen::push_point(bpts, seen, w, fld, z);
        if (w < 3 * 4 + 2) continue;
        auto bquad = vanishing_forms(fld, 2, bpts);   // expect 1
        auto bcub = vanishing_forms(fld, 3, bpts);    // expect 7
        if (bquad.size() != 1 || bcub.size() != 7) continue;
        // identity must avoid B
        std::vector<GFElem> idpt{fld.one(), fld.zero(), fld.zero(), fld.zero()};
        bool id_on_B = poly_eval(bquad[0], idpt).is_zero();
        if (id_on_B) {
            bool all = true;
            for (auto& gq : bcub)
                if (!poly_eval(gq, idpt).is_zero()) all = false;
            if (all) continue;
        }
        // two cubics through B and the identity point
        std::vector<Vec<GF>> rows;
        for (auto& gq : bcub) {
            Vec<GF> row{poly_eval(gq, idpt)};
            rows.push_back(row);
        }
        auto rk = mat_rank_kernel(Mat<GF>::from_rows(fld, rows).transpose());
        if (rk.kernel.size() < 2) continue;
        auto combine = [&](Rng& rr) {
            MultiPoly<GF> s(fld, 4, p3::weights());
            for (auto& kv : rk.kernel) {
                auto c = fld.random(rr);
                for (size_t i = 0; i < bcub.size(); ++i)
                    if (!is_zero(kv[i])) s = s + (c * kv[i]) * bcub[i];
            }
            return s;
        };
        Rng crng = rng.fork(31);
        MultiPoly<GF> F1 = combine(crng), F2 = combine(crng);
        if (F1.is_zero_poly() || F2.is_zero_poly() || F1 == F2) continue;
        std::vector<std::vector<MultiPoly<GF>>> filters{{bquad[0]}};
        try {
            curvegen::linkage_points_and_gens(cs, fld, F1, F2, filters, rng);
        } catch (const hx_error&) {
            continue;
        }
        return cs;
    }
}

inline CurveSpec<GF> make_sextic62(GF fld, Rng& rng) {
    using namespace curvegen;
    CurveSpec<GF> cs;
    cs.name = "sextic(6,2)";
    cs.claimed_c = 0;
    cs.claimed_d = 6;
    cs.claimed_g = 2;
    for (;;) {
        // B = line + disjoint conic, away from the identity point
        std::array<BinForm<GF>, 4> lphi{random_binform(fld, 1, rng), random_binform(fld, 1, rng),
                                        random_binform(fld, 1, rng), random_binform(fld, 1, rng)};
        std::array<BinForm<GF>, 4> kphi{random_binform(fld, 2, rng), random_binform(fld, 2, rng),
                                        random_binform(fld, 2, rng), random_binform(fld, 2, rng)};
        ParamFrame<GF> L(fld, lphi), K(fld, kphi);
        if (!L.forms_coprime() || !K.forms_coprime()) continue;
        std::vector<SamplePoint> bpts;
        std::set<std::vector<u64>> seen;
        int w = 0;
        for (auto& z : L.sample_points(6)) push_point(bpts, seen, w, fld, z);
        std::vector<SamplePoint> lpts = bpts;
        for (auto& z : K.sample_points(10)) push_point(bpts, seen, w, fld, z);
        std::vector<SamplePoint> kpts;
        std::set<std::vector<u64>> seen2;
        int w2 = 0;
        for (auto& z : K.sample_points(10)) push_point(kpts, seen2, w2, fld, z);
        auto lin_l = vanishing_forms(fld, 1, lpts);  // two planes through the line
        auto quad_k = vanishing_forms(fld, 2, kpts);
        if (lin_l.size() != 2) continue;
        auto bcub = vanishing_forms(fld, 3, bpts);
        if (bcub.size() < 4) continue;
        std::vector<GFElem> idpt{fld.one(), fld.zero(), fld.zero(), fld.zero()};
        std::vector<Vec<GF>> rows;
        for (auto& gq : bcub) rows.push_back({poly_eval(gq, idpt)});
        auto rk = mat_rank_kernel(Mat<GF>::from_rows(fld, rows).transpose());
        if (rk.kernel.size() < 2) continue;
        auto combine = [&](Rng& rr) {
            MultiPoly<GF> s(fld, 4, p3::weights());
            for (auto& kv : rk.kernel) {
                auto c = fld.random(rr);
                for (size_t i = 0; i < bcub.size(); ++i)
                    if (!is_zero(kv[i])) s = s + (c * kv[i]) * bcub[i];
            }
            return s;
        };
        Rng crng = rng.fork(37);
        MultiPoly<GF> F1 = combine(crng), F2 = combine(crng);
        if (F1.is_zero_poly() || F2.is_zero_poly() || F1 == F2) continue;
        std::vector<std::vector<MultiPoly<GF>>> filters{lin_l, quad_k};
        try {
            curvegen::linkage_points_and_gens(cs, fld, F1, F2, filters, rng);
        } catch (const hx_error&) {
            continue;
        }
        return cs;
    }
}

}  // namespace hexacurve

#endif

