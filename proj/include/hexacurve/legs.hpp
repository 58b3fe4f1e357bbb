#ifndef HEXACURVE_LEGS_HPP
#define HEXACURVE_LEGS_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <thread>
#include <vector>

#include "se3.hpp"
#include "unipoly.hpp"

namespace hexacurve {

// A hyperplane of the 17-coordinate model in leg-equation shape; dual
// coordinates indexed exactly like p16. Anchors (P, Q) are kept when the form
// was built from a concrete leg.
template <class F>
struct LegForm {
    std::array<typename F::Elem, 17> w;
    std::optional<std::pair<std::array<typename F::Elem, 3>, std::array<typename F::Elem, 3>>> anchors;
};

template <class F>
struct Pod {
    std::vector<std::array<typename F::Elem, 3>> platform;  // P_i
    std::vector<std::array<typename F::Elem, 3>> base;      // Q_i
};

template <class F>
typename F::Elem eval_form(F fld, const LegForm<F>& form, const AmbientPoint16<F>& p) {
    auto s = fld.zero();
    for (int i = 0; i < 17; ++i)
        if (!is_zero(form.w[i])) s += form.w[i] * p.c[i];
    return s;
}

// leg-equation of anchor points P, Q: coefficients read off
// (Q^T 1) [[A - h id, y],[x^T, -r/2]] (P;1)
template <class F>
LegForm<F> leg_form(F fld, const std::array<typename F::Elem, 3>& P,
                    const std::array<typename F::Elem, 3>& Q) {
    LegForm<F> f;
    for (auto& c : f.w) c = fld.zero();
    auto half = fld.inv(fld.from_int(2));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) f.w[p16::A(i, j)] = Q[i] * P[j];
    for (int j = 0; j < 3; ++j) f.w[p16::X1 + j] = P[j];
    for (int i = 0; i < 3; ++i) f.w[p16::Y1 + i] = Q[i];
    f.w[p16::R] = -half;
    auto pq = fld.zero();
    for (int i = 0; i < 3; ++i) pq += P[i] * Q[i];
    f.w[p16::H] = -pq;
    f.anchors = {{P, Q}};
    return f;
}

// true iff the linear form vanishes at the embedded isometry; by construction
// this is the exact squared-distance identity for the anchors
template <class F>
bool leg_holds(F fld, const LegForm<F>& form, const Isometry<F>& iso) {
    require(form.anchors.has_value(), errc::missing_anchors, "leg form without anchor points");
    return is_zero(eval_form(fld, form, embed_phi(fld, iso)));
}

// the Segre point of (u, v) in dual coordinates: rank-1 block v u^T with the
// trace slot h* = -(a*_11 + a*_22 + a*_33)
template <class F>
LegForm<F> segre_coords(F fld, const std::array<typename F::Elem, 4>& u,
                        const std::array<typename F::Elem, 4>& v) {
    bool uz = true, vz = true;
    for (int i = 0; i < 4; ++i) {
        if (!is_zero(u[i])) uz = false;
        if (!is_zero(v[i])) vz = false;
    }
    require(!uz && !vz, errc::zero_vector, "zero projective representative");
    LegForm<F> f;
    for (auto& c : f.w) c = fld.zero();
    auto half = fld.inv(fld.from_int(2));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) f.w[p16::A(i, j)] = v[i] * u[j];
    for (int j = 0; j < 3; ++j) f.w[p16::X1 + j] = v[3] * u[j];
    for (int i = 0; i < 3; ++i) f.w[p16::Y1 + i] = v[i] * u[3];
    f.w[p16::R] = -(half * (v[3] * u[3]));
    f.w[p16::H] = -(v[0] * u[0] + v[1] * u[1] + v[2] * u[2]);
    if (!is_zero(u[3]) && !is_zero(v[3])) {
        auto ui = fld.inv(u[3]), vi = fld.inv(v[3]);
        f.anchors = {{{u[0] * ui, u[1] * ui, u[2] * ui}, {v[0] * vi, v[1] * vi, v[2] * vi}}};
    }
    return f;
}

template <class F>
int pod_rank(F fld, const Pod<F>& pod) {
    require(pod.platform.size() == pod.base.size() && !pod.platform.empty(), errc::arity_mismatch,
            "pod anchor lists mismatch");
    std::vector<Vec<F>> rows;
    for (size_t i = 0; i < pod.platform.size(); ++i) {
        auto f = leg_form(fld, pod.platform[i], pod.base[i]);
        rows.emplace_back(f.w.begin(), f.w.end());
    }
    return mat_rank(Mat<F>::from_rows(fld, rows));
}

template <class F>
bool is_identity_point(F, const WeightedPoint<F>& w) {
    if (is_zero(w.c[w11::E0])) return false;
    for (int i = 1; i < 11; ++i)
        if (!is_zero(w.c[i])) return false;
    return true;
}

// every leg form vanishes at every sample and some sample is the identity;
// samples must lie on the variety
template <class F>
bool verify_motion(F fld, const Pod<F>& pod, const std::vector<WeightedPoint<F>>& samples) {
    require(!samples.empty(), errc::arity_mismatch, "no curve samples supplied");
    auto eqs = se3_equations(fld);
    for (size_t s = 0; s < samples.size(); ++s)
        require(on_variety(eqs, samples[s]), errc::not_on_variety,
                "sample " + std::to_string(s) + " violates the variety equations");
    bool has_identity = false;
    for (auto& s : samples)
        if (is_identity_point(fld, s)) has_identity = true;
    if (!has_identity) return false;
    for (size_t i = 0; i < pod.platform.size(); ++i) {
        auto f = leg_form(fld, pod.platform[i], pod.base[i]);
        for (auto& s : samples)
            if (!is_zero(eval_form(fld, f, weighted_to_p16(fld, s)))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Dimension forecast for the leg scheme of a span of codimension gamma
// ---------------------------------------------------------------------------

struct LegCountForecast {
    enum class Kind { Infinite, Twenty, Finite };
    Kind kind;
    int codim = 0;  // only for Finite: 6(10 - gamma)
};

inline LegCountForecast expected_leg_count(int gamma) {
    require(gamma >= 6 && gamma <= 16, errc::out_of_range, "span codimension out of range");
    if (gamma >= 11) return {LegCountForecast::Kind::Infinite, 0};
    if (gamma == 10) return {LegCountForecast::Kind::Twenty, 0};
    return {LegCountForecast::Kind::Finite, 6 * (10 - gamma)};
}

// ---------------------------------------------------------------------------
// Finite-field search for Segre points inside the span of a set of forms.
//
// A Segre point s(u, v) lies in span(B) iff it is annihilated by the
// nullspace of B, giving bilinear conditions v^T Z_k u = 0. For each u the
// conditions are linear in v. Two strategies produce the identical point set:
//   * exhaustive: enumerate u over P^3(F_p), kernel in v per u (O(p^3) rank
//     computations; fine for small p and used as a cross-check);
//   * cascade: eliminate with fixed-size resultants down to univariate
//     polynomials, then read candidate coordinates off their roots. This is
//     what makes searches at p ~ 10^4 run in seconds.
// ---------------------------------------------------------------------------

template <class F>
struct SegrePoint {
    std::array<typename F::Elem, 4> u, v;
    bool interior;
};

template <class F>
struct LegSearchResult {
    std::vector<SegrePoint<F>> points;
    bool truncated = false;           // hit max_results
    bool positive_dimensional = false;  // some fiber had kernel dimension >= 2
    std::uint64_t checked = 0;        // u-candidates examined
};

struct LegSearchOptions {
    std::size_t max_results = 1024;
    bool interior_only = false;
    std::uint64_t seed = 1;
    int threads = 2;
    enum class Strategy { Auto, Exhaustive, Cascade } strategy = Strategy::Auto;
};

namespace legsearch {

// small dense kernel solver mod p on raw residues
struct SmallKernel {
    static std::vector<std::array<u64, 4>> kernel(std::vector<std::array<u64, 4>> rows, u64 p) {
        const GFCtx* ctx = GFCtx::get(p, 1);
        int n = int(rows.size());
        int rank = 0;
        std::array<int, 4> pivot_col{-1, -1, -1, -1};
        for (int c = 0; c < 4 && rank < n; ++c) {
            int pr = -1;
            for (int i = rank; i < n; ++i)
                if (rows[i][c] != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            std::swap(rows[pr], rows[rank]);
            u64 inv = ctx->sinv(rows[rank][c]);
            for (int j = c; j < 4; ++j) rows[rank][j] = ctx->smul(rows[rank][j], inv);
            for (int i = 0; i < n; ++i) {
                if (i == rank || rows[i][c] == 0) continue;
                u64 f = rows[i][c];
                for (int j = c; j < 4; ++j)
                    rows[i][j] = ctx->ssub(rows[i][j], ctx->smul(f, rows[rank][j]));
            }
            pivot_col[rank] = c;
            ++rank;
        }
        std::vector<std::array<u64, 4>> ker;
        std::array<bool, 4> is_piv{false, false, false, false};
        for (int t = 0; t < rank; ++t) is_piv[pivot_col[t]] = true;
        for (int c = 0; c < 4; ++c) {
            if (is_piv[c]) continue;
            std::array<u64, 4> v{0, 0, 0, 0};
            v[c] = 1;
            for (int t = 0; t < rank; ++t) v[pivot_col[t]] = ctx->sneg(rows[t][c]);
            ker.push_back(v);
        }
        return ker;
    }
};

}  // namespace legsearch

// forward declaration; implementation in legs_search.hpp
LegSearchResult<GF> search_legs(GF fld, const std::vector<LegForm<GF>>& dual_basis,
                                const LegSearchOptions& opts);

}  // namespace hexacurve

#include "legs_search.hpp"

#endif
