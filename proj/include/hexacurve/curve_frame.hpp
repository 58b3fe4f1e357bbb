#ifndef HEXACURVE_CURVE_FRAME_HPP
#define HEXACURVE_CURVE_FRAME_HPP

#include <map>
#include <optional>
#include <vector>

#include "se3.hpp"
#include "unipoly.hpp"

namespace hexacurve {

// P^3 variable frame shared by all curve computations
namespace p3 {
inline constexpr int NV = 4;
inline std::vector<int> weights() { return {1, 1, 1, 1}; }
}  // namespace p3

template <class F>
using P3Point = std::array<typename F::Elem, 4>;

template <class F>
P3Point<F> normalize_point(F fld, P3Point<F> z) {
    for (int i = 0; i < 4; ++i)
        if (!is_zero(z[i])) {
            auto inv = fld.inv(z[i]);
            for (int j = 0; j < 4; ++j) z[j] = z[j] * inv;
            return z;
        }
    return z;
}

template <class F>
P3Point<F> identity_p3(F fld) {
    return {fld.one(), fld.zero(), fld.zero(), fld.zero()};
}

// evaluate a prime-field polynomial at a point with extension-field entries
inline GFElem eval_lifted(const MultiPoly<GF>& f, GF ext, const std::vector<GFElem>& pt) {
    struct Ops {
        GF ext;
        GF base;
        using R = GFElem;
        R add(const R& a, const R& b) const { return a + b; }
        R mul(const R& a, const R& b) const { return a * b; }
        R from_coef(const GFElem& c) const { return ext.lift(c); }
        R one() const { return ext.one(); }
    };
    return f.eval_in(pt, Ops{ext, f.field()});
}

// ---------------------------------------------------------------------------
// ParamFrame: a curve given by four coprime binary forms of common degree m.
// Degree-k forms restrict to binary forms of degree k*m; all checks on the
// curve are exact polynomial identities.
// ---------------------------------------------------------------------------

template <class F>
class ParamFrame {
public:
    using Field = F;
    using Elem = typename F::Elem;
    using Vec = std::vector<Elem>;

    ParamFrame(F fld, std::array<BinForm<F>, 4> phi) : fld_(fld), phi_(std::move(phi)) {
        m_ = phi_[0].deg;
        for (auto& p : phi_) require(p.deg == m_, errc::arity_mismatch, "mixed parametrization degrees");
    }

    F field() const { return fld_; }
    int param_degree() const { return m_; }
    const std::array<BinForm<F>, 4>& forms() const { return phi_; }

    // no common factor including the point at infinity
    bool forms_coprime() const {
        UniPoly<F> g = phi_[0].dehomogenized();
        int inf = phi_[0].infinity_multiplicity();
        for (int i = 1; i < 4; ++i) {
            g = poly_gcd(g, phi_[i].dehomogenized());
            inf = std::min(inf, phi_[i].infinity_multiplicity());
        }
        return g.degree() <= 0 && inf == 0;
    }

    BinForm<F> restrict_form(const MultiPoly<F>& f) const {
        std::vector<BinForm<F>> sub(phi_.begin(), phi_.end());
        return pullback_binary(f, sub);
    }
    Vec restrict(const MultiPoly<F>& f, int k) const {
        BinForm<F> b = restrict_form(f);
        require(b.deg == k * m_ || b.is_zero_form(), errc::grading_mismatch, "degree mismatch");
        if (b.is_zero_form() && b.deg != k * m_) return Vec(size_t(k) * m_ + 1, fld_.zero());
        return b.c;
    }
    int vec_len(int k) const { return k * m_ + 1; }
    Vec mul(const Vec& a, const Vec& b) const {
        Vec c(a.size() + b.size() - 1, fld_.zero());
        for (size_t i = 0; i < a.size(); ++i) {
            if (is_zero(a[i])) continue;
            for (size_t j = 0; j < b.size(); ++j)
                if (!is_zero(b[j])) c[i + j] += a[i] * b[j];
        }
        return c;
    }
    bool certified_zero(const Vec& v, int) const {
        for (auto& x : v)
            if (!is_zero(x)) return false;
        return true;
    }
    Mat<F> to_matrix(const std::vector<Vec>& cols) const { return Mat<F>::from_cols(fld_, cols); }

    int dim_rc(int k) const {
        auto it = dim_cache_.find(k);
        if (it != dim_cache_.end()) return it->second;
        std::vector<Vec> cols;
        for (auto& mp : monomial_polys(fld_, 4, p3::weights(), k)) cols.push_back(restrict(mp, k));
        int r = mat_rank(to_matrix(cols));
        dim_cache_[k] = r;
        return r;
    }

    // distinct curve points from parameter values 0, 1, -1, 2, ... and infinity
    std::vector<P3Point<F>> sample_points(int count) const {
        std::vector<P3Point<F>> out;
        auto at = [&](const Elem& s, const Elem& t) {
            P3Point<F> z{phi_[0].eval(s, t), phi_[1].eval(s, t), phi_[2].eval(s, t),
                         phi_[3].eval(s, t)};
            return z;
        };
        out.push_back(at(fld_.one(), fld_.zero()));
        long v = 0;
        while (int(out.size()) < count) {
            v = (v <= 0) ? 1 - v : -v;  // 1, -1, 2, -2, ...
            if constexpr (std::is_same_v<F, GF>) {
                if (u64(v < 0 ? -v : v) >= fld_.p()) {
                    require(false, errc::insufficient_points,
                            "parameter line exhausted over the base field");
                }
            }
            out.push_back(at(fld_.one(), fld_.from_int(v)));
        }
        return out;
    }

    // pullback of the boundary quadric, with blocks by multiplicity; the
    // parametrization is expected to avoid a boundary point at infinity
    // (constructors re-shear the parameter until this holds)
    struct Boundary {
        // squarefree blocks: pairwise coprime, multiplicities
        std::vector<std::pair<UniPoly<F>, int>> blocks;
        int d_prime = 0, simple_count = 0, total_mult = 0;
        bool condition_B = true;
        bool complete = true;
        bool infinity_block = false;  // boundary point at parameter infinity
    };

    Boundary boundary() const {
        MultiPoly<F> h(fld_, 4, p3::weights());
        for (int i = 0; i < 4; ++i) {
            Expo e(4, 0);
            e[i] = 2;
            h.add_term(e, fld_.one());
        }
        BinForm<F> hb = restrict_form(h);
        Boundary b;
        if (hb.infinity_multiplicity() > 0) {
            b.infinity_block = true;
            b.complete = false;
            return b;
        }
        for (auto& [g, mult] : squarefree_decomposition(hb.dehomogenized())) {
            b.blocks.push_back({g, mult});
            b.total_mult += mult * g.degree();
            if (mult == 1) b.simple_count += g.degree();
            if (mult == 2) b.d_prime += g.degree();
            if (mult > 2) b.condition_B = false;
        }
        return b;
    }

private:
    F fld_;
    std::array<BinForm<F>, 4> phi_;
    int m_;
    mutable std::map<int, int> dim_cache_;
};

// ---------------------------------------------------------------------------
// SampleFrame: a curve over F_p known through ideal generators and certified
// point sets (possibly in small extensions). A vanishing test at points of
// total residue weight > k*d certifies vanishing on the curve in degree k.
// ---------------------------------------------------------------------------

struct SamplePoint {
    std::array<GFElem, 4> c;
    unsigned ext_deg = 1;
};

// boundary data recovered from the pencil: one representative point per
// Galois orbit, with multiplicity and a tangent direction at smooth points
struct SampleBoundaryPoint {
    std::array<GFElem, 4> z;
    unsigned ext_deg = 1;
    int mult = 1;
    std::optional<std::array<GFElem, 4>> tangent;
};

struct SampleBoundary {
    std::vector<SampleBoundaryPoint> points;  // one per orbit; orbit size = ext_deg
    int d_prime = 0, simple_count = 0, total_mult = 0;
    bool condition_B = true;
    bool complete = true;
    bool singular_point = false;
};

class SampleFrame {
public:
    using Field = GF;
    using Elem = GFElem;
    using Boundary = SampleBoundary;
    using Vec = std::vector<GFElem>;  // native values, entry i over the field of point i

    SampleFrame(GF base, std::vector<MultiPoly<GF>> gens, std::vector<SamplePoint> pts)
        : base_(base), gens_(std::move(gens)), pts_(std::move(pts)) {
        weight_ = 0;
        for (auto& p : pts_) weight_ += int(p.ext_deg);
    }

    GF field() const { return base_; }
    const std::vector<MultiPoly<GF>>& generators() const { return gens_; }
    const std::vector<SamplePoint>& points() const { return pts_; }
    int weight() const { return weight_; }
    // largest degree at which a pointwise zero is a certified zero for a
    // degree-d curve
    int max_certified_degree(int d) const { return (weight_ - 1) / d; }

    Vec restrict(const MultiPoly<GF>& f, int) const {
        Vec v;
        v.reserve(pts_.size());
        for (auto& p : pts_) {
            GF ext(p.c[0].ctx());
            std::vector<GFElem> pt(p.c.begin(), p.c.end());
            v.push_back(eval_lifted(f, ext, pt));
        }
        return v;
    }
    int vec_len(int) const { return int(pts_.size()); }
    Vec mul(const Vec& a, const Vec& b) const {
        Vec c;
        c.reserve(a.size());
        for (size_t i = 0; i < a.size(); ++i) c.push_back(a[i] * b[i]);
        return c;
    }
    bool certified_zero(const Vec& v, int k) const {
        // callers must have checked capacity against the curve degree; here we
        // only test the values
        (void)k;
        for (auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

    // expand native columns to a base-field matrix, extension values
    // coefficientwise
    Mat<GF> to_matrix(const std::vector<Vec>& cols) const {
        Mat<GF> M(base_, weight_, int(cols.size()));
        for (int j = 0; j < int(cols.size()); ++j) {
            int r = 0;
            for (size_t i = 0; i < pts_.size(); ++i) {
                const auto& val = cols[j][i];
                for (unsigned t = 0; t < pts_[i].ext_deg; ++t)
                    M.at(r++, j) = base_.from_int(i64(val.coeffs()[t]));
            }
        }
        return M;
    }

    int dim_rc(int k) const {
        auto it = dim_cache_.find(k);
        if (it != dim_cache_.end()) return it->second;
        std::vector<Vec> cols;
        for (auto& mp : monomial_polys(base_, 4, p3::weights(), k)) cols.push_back(restrict(mp, k));
        int r = mat_rank(to_matrix(cols));
        dim_cache_[k] = r;
        return r;
    }

    std::vector<P3Point<GF>> sample_points(int count) const {
        std::vector<P3Point<GF>> out;
        for (auto& p : pts_) {
            if (p.ext_deg != 1) continue;
            out.push_back(p.c);
            if (int(out.size()) >= count) break;
        }
        require(int(out.size()) >= count, errc::insufficient_points,
                "not enough rational points on the curve");
        return out;
    }

    bool on_curve(GF ext, const std::array<GFElem, 4>& z) const {
        std::vector<GFElem> pt(z.begin(), z.end());
        for (auto& g : gens_)
            if (!eval_lifted(g, ext, pt).is_zero()) return false;
        return true;
    }

    // tangent direction at a smooth point: the Jacobian kernel contains the
    // point (Euler relation); return a kernel vector independent of it
    std::optional<std::array<GFElem, 4>> tangent_at(GF ext, const std::array<GFElem, 4>& z) const {
        std::vector<Vec> rows;
        for (auto& g : gens_) {
            Vec row;
            std::vector<GFElem> pt(z.begin(), z.end());
            for (int v = 0; v < 4; ++v) row.push_back(eval_lifted(g.derivative(v), ext, pt));
            rows.push_back(row);
        }
        auto rk = mat_rank_kernel(Mat<GF>::from_rows(ext, rows));
        if (rk.rank != 2) return std::nullopt;  // singular (or hypersurface-like) point
        // pick the kernel vector not proportional to z
        for (auto& v : rk.kernel) {
            bool prop = true;
            for (int i = 0; i < 4 && prop; ++i)
                for (int j = i + 1; j < 4 && prop; ++j)
                    if (!(v[i] * z[j] - v[j] * z[i]).is_zero()) prop = false;
            if (!prop) return std::array<GFElem, 4>{v[0], v[1], v[2], v[3]};
        }
        return std::nullopt;
    }

    // ------------------------------------------------------------------
    // Multiplication pencil on the quotient by a divisor: the module that
    // turns point data into eliminants of divisors cut on the curve
    // ------------------------------------------------------------------
    struct Pencil {
        int dim = 0;
        Mat<GF> A, B;                 // multiplication by l0, l1: V_k -> V_{k+1}
        std::array<Mat<GF>, 4> Me;    // multiplication by e_0..e_3
        UniPoly<GF> chi;              // det(x A - B)
        std::vector<Vec> basis_k;     // native value columns of the V_k basis
        Pencil(GF f) : A(f, 0, 0), B(f, 0, 0), Me{Mat<GF>(f, 0, 0), Mat<GF>(f, 0, 0), Mat<GF>(f, 0, 0), Mat<GF>(f, 0, 0)}, chi(f) {}
    };

    // quotient pencil for the divisor cut by q (degree dq) at internal degree k
    std::optional<Pencil> divisor_pencil(const MultiPoly<GF>& q, int k, Rng& rng) const {
        int dq = q.degree();
        Vec qv = restrict(q, dq);
        // choose seeded generic linear forms l0, l1
        for (int attempt = 0; attempt < 8; ++attempt) {
            Rng r = rng.fork(u64(attempt) + 101);
            auto lin = [&](Rng& rr) {
                MultiPoly<GF> l(base_, 4, p3::weights());
                for (int i = 0; i < 4; ++i) {
                    Expo e(4, 0);
                    e[i] = 1;
                    l.add_term(e, base_.from_int(i64(rr.below(base_.p()))));
                }
                return l;
            };
            MultiPoly<GF> l0 = lin(r), l1 = lin(r);
            auto pen = try_pencil(qv, dq, l0, l1, k);
            if (pen.has_value()) return pen;
        }
        return std::nullopt;
    }

private:
    std::optional<Pencil> try_pencil(const Vec& qv, int dq, const MultiPoly<GF>& l0,
                                     const MultiPoly<GF>& l1, int k) const {
        // native monomial columns per degree
        auto cols_of = [&](int deg) {
            std::vector<Vec> cols;
            for (auto& mp : monomial_polys(base_, 4, p3::weights(), deg))
                cols.push_back(restrict(mp, deg));
            return cols;
        };
        auto prod_cols = [&](const std::vector<Vec>& cols) {
            std::vector<Vec> out;
            out.reserve(cols.size());
            for (auto& c : cols) out.push_back(mul(qv, c));
            return out;
        };
        std::vector<Vec> ck = cols_of(k), ck1 = cols_of(k + 1);
        std::vector<Vec> dk = prod_cols(cols_of(k - dq)), dk1 = prod_cols(cols_of(k + 1 - dq));

        // complement basis of q*(R)_{k-dq} inside (R)_k
        auto complement = [&](const std::vector<Vec>& D, const std::vector<Vec>& C) {
            std::vector<Vec> all = D;
            all.insert(all.end(), C.begin(), C.end());
            Mat<GF> M = to_matrix(all);
            auto piv = detail::echelon(M);
            std::vector<int> comp;
            for (int c : piv)
                if (c >= int(D.size())) comp.push_back(c - int(D.size()));
            return comp;
        };
        std::vector<int> comp_k = complement(dk, ck), comp_k1 = complement(dk1, ck1);
        int dim = int(comp_k.size());
        if (dim == 0 || int(comp_k1.size()) != dim) return std::nullopt;

        Pencil pen(base_);
        pen.dim = dim;
        for (int idx : comp_k) pen.basis_k.push_back(ck[idx]);

        // solver frame at level k+1: [D_{k+1} | V_{k+1}]
        std::vector<Vec> frame = dk1;
        for (int idx : comp_k1) frame.push_back(ck1[idx]);
        Mat<GF> FM = to_matrix(frame);

        auto mult_map = [&](const MultiPoly<GF>& l) -> std::optional<Mat<GF>> {
            Vec lv = restrict(l, 1);
            Mat<GF> M(base_, dim, dim);
            for (int j = 0; j < dim; ++j) {
                Vec w = mul(lv, pen.basis_k[j]);
                // expand w over the base field
                std::vector<GFElem> rhs;
                for (size_t i = 0; i < pts_.size(); ++i)
                    for (unsigned t = 0; t < pts_[i].ext_deg; ++t)
                        rhs.push_back(base_.from_int(i64(w[i].coeffs()[t])));
                auto x = solve_linear(FM, rhs);
                if (!x.has_value()) return std::nullopt;
                for (int i = 0; i < dim; ++i) M.at(i, j) = (*x)[int(dk1.size()) + i];
            }
            return M;
        };
        auto A = mult_map(l0);
        auto B = mult_map(l1);
        if (!A || !B) return std::nullopt;
        pen.A = *A;
        pen.B = *B;
        for (int i = 0; i < 4; ++i) {
            MultiPoly<GF> ei = MultiPoly<GF>::variable(base_, 4, p3::weights(), i);
            auto Mei = mult_map(ei);
            if (!Mei) return std::nullopt;
            pen.Me[i] = *Mei;
        }
        // chi(x) = det(x A - B) by interpolation
        std::vector<GFElem> xs, ys;
        for (int t = 0; t <= pen.dim; ++t) {
            GFElem x0 = base_.from_int(t);
            Mat<GF> M(base_, pen.dim, pen.dim);
            for (int i = 0; i < pen.dim; ++i)
                for (int j = 0; j < pen.dim; ++j) M.at(i, j) = x0 * pen.A.at(i, j) - pen.B.at(i, j);
            xs.push_back(x0);
            ys.push_back(mat_det(M));
        }
        pen.chi = interpolate(base_, xs, ys);
        if (pen.chi.degree() != pen.dim) return std::nullopt;  // a point sits at l0 = 0
        return pen;
    }

    GF base_;
    std::vector<MultiPoly<GF>> gens_;
    std::vector<SamplePoint> pts_;
    int weight_ = 0;
    mutable std::map<int, int> dim_cache_;
};

// recover the boundary divisor h = 0 on the curve from a pencil
inline std::optional<SampleBoundary> sample_boundary(const SampleFrame& frame, int curve_degree,
                                                     int max_ext_degree, Rng& rng) {
    GF base = frame.field();
    MultiPoly<GF> h(base, 4, p3::weights());
    for (int i = 0; i < 4; ++i) {
        Expo e(4, 0);
        e[i] = 2;
        h.add_term(e, base.one());
    }
    int k = 5;
    require(frame.max_certified_degree(curve_degree) >= 6, errc::insufficient_points,
            "frame too small for the boundary pencil");
    auto pen = frame.divisor_pencil(h, k, rng);
    if (!pen.has_value()) return std::nullopt;
    if (pen->dim != 2 * curve_degree) return std::nullopt;

    SampleBoundary out;
    Rng frng = rng.fork(991);
    for (auto& fac : factorize(pen->chi, frng)) {
        int j = fac.poly.degree();
        out.total_mult += j * fac.mult;
        if (fac.mult == 1) out.simple_count += j;
        if (fac.mult == 2) out.d_prime += j;
        if (fac.mult > 2) out.condition_B = false;
        if (j > max_ext_degree) {
            out.complete = false;
            continue;
        }
        GF ext = (j == 1) ? base : GF::ext(base.p(), unsigned(j));
        GFElem theta = base.zero();
        if (j == 1) {
            theta = -fac.poly.coeff(0);
        } else {
            std::vector<GFElem> lifted;
            for (int i = 0; i <= j; ++i) lifted.push_back(ext.lift(fac.poly.coeff(i)));
            auto r0 = some_root_in_field(UniPoly<GF>(ext, lifted), frng);
            if (!r0.has_value()) return std::nullopt;
            theta = *r0;
        }
        // kernel of (B - theta A) over the extension
        Mat<GF> K(ext, pen->dim, pen->dim);
        for (int i = 0; i < pen->dim; ++i)
            for (int c = 0; c < pen->dim; ++c)
                K.at(i, c) = ext.lift(pen->B.at(i, c)) - theta * ext.lift(pen->A.at(i, c));
        auto rk = mat_rank_kernel(K);
        if (rk.kernel.size() != 1) return std::nullopt;  // l not separating: retry caller
        const auto& w = rk.kernel[0];
        // coordinates from the four multiplication-by-e_i images
        std::array<std::vector<GFElem>, 4> ci;
        for (int i = 0; i < 4; ++i) {
            ci[i].assign(pen->dim, ext.zero());
            for (int r = 0; r < pen->dim; ++r)
                for (int c = 0; c < pen->dim; ++c)
                    if (!w[c].is_zero()) ci[i][r] += ext.lift(pen->Me[i].at(r, c)) * w[c];
        }
        int rho = -1;
        for (int r = 0; r < pen->dim && rho < 0; ++r)
            for (int i = 0; i < 4; ++i)
                if (!ci[i][r].is_zero()) {
                    rho = r;
                    break;
                }
        if (rho < 0) return std::nullopt;
        std::array<GFElem, 4> z{ci[0][rho], ci[1][rho], ci[2][rho], ci[3][rho]};
        // proportionality sanity at another row
        for (int r = 0; r < pen->dim; ++r)
            for (int i = 0; i < 4; ++i)
                for (int jj = i + 1; jj < 4; ++jj)
                    if (!(ci[i][r] * z[jj] - ci[jj][r] * z[i]).is_zero()) return std::nullopt;
        z = normalize_point(ext, z);
        // verify the point
        std::vector<GFElem> zv(z.begin(), z.end());
        if (!eval_lifted(h, ext, zv).is_zero()) return std::nullopt;
        if (!frame.on_curve(ext, z)) return std::nullopt;
        SampleBoundaryPoint bp;
        bp.z = z;
        bp.ext_deg = unsigned(j);
        bp.mult = fac.mult;
        bp.tangent = frame.tangent_at(ext, z);
        if (!bp.tangent.has_value() && fac.mult >= 2) out.singular_point = true;
        out.points.push_back(std::move(bp));
    }
    if (out.total_mult != 2 * curve_degree) return std::nullopt;
    return out;
}

// eliminant of a generic hyperplane section: used as irreducibility evidence
// (degree d with d distinct roots over the closure)
inline std::optional<UniPoly<GF>> hyperplane_eliminant(const SampleFrame& frame, int curve_degree,
                                                       Rng& rng) {
    GF base = frame.field();
    MultiPoly<GF> l(base, 4, p3::weights());
    for (int i = 0; i < 4; ++i) {
        Expo e(4, 0);
        e[i] = 1;
        l.add_term(e, base.from_int(i64(rng.below(base.p()))));
    }
    if (l.is_zero_poly()) return std::nullopt;
    if (frame.max_certified_degree(curve_degree) < 6) return std::nullopt;
    auto pen = frame.divisor_pencil(l, 5, rng);
    if (!pen.has_value() || pen->dim != curve_degree) return std::nullopt;
    return pen->chi;
}

}  // namespace hexacurve

#endif
