#ifndef HEXACURVE_UNIPOLY_HPP
#define HEXACURVE_UNIPOLY_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gf.hpp"
#include "linalg.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace hexacurve {

// Dense univariate polynomial over a field descriptor F. Coefficient i is the
// coefficient of t^i; the vector carries no trailing zeros (zero polynomial is
// the empty vector, degree -1).
template <class F>
class UniPoly {
public:
    using Elem = typename F::Elem;

    explicit UniPoly(F f) : fld_(f) {}
    UniPoly(F f, std::vector<Elem> coeffs) : fld_(f), c_(std::move(coeffs)) { trim(); }

    static UniPoly zero(F f) { return UniPoly(f); }
    static UniPoly constant(F f, Elem a) { return UniPoly(f, {std::move(a)}); }
    static UniPoly x(F f) { return UniPoly(f, {f.zero(), f.one()}); }

    F field() const { return fld_; }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero_poly() const { return c_.empty(); }
    const std::vector<Elem>& coeffs() const { return c_; }
    Elem coeff(int i) const { return (i >= 0 && i < int(c_.size())) ? c_[i] : fld_.zero(); }
    Elem lc() const {
        require(!c_.empty(), errc::out_of_range, "leading coefficient of zero polynomial");
        return c_.back();
    }
    void set_coeff(int i, Elem a) {
        if (i >= int(c_.size())) c_.resize(i + 1, fld_.zero());
        c_[i] = std::move(a);
        trim();
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Elem> c(std::max(a.c_.size(), b.c_.size()), a.fld_.zero());
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UniPoly(a.fld_, std::move(c));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Elem> c(std::max(a.c_.size(), b.c_.size()), a.fld_.zero());
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return UniPoly(a.fld_, std::move(c));
    }
    UniPoly operator-() const {
        std::vector<Elem> c = c_;
        for (auto& x : c) x = -x;
        return UniPoly(fld_, std::move(c));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.c_.empty() || b.c_.empty()) return zero(a.fld_);
        std::vector<Elem> c(a.c_.size() + b.c_.size() - 1, a.fld_.zero());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                if (!is_zero(b.c_[j])) c[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(a.fld_, std::move(c));
    }
    friend UniPoly operator*(const Elem& s, const UniPoly& a) {
        std::vector<Elem> c = a.c_;
        for (auto& x : c) x = s * x;
        return UniPoly(a.fld_, std::move(c));
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    Elem eval(const Elem& t) const {
        Elem r = fld_.zero();
        for (size_t i = c_.size(); i-- > 0;) r = r * t + c_[i];
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return zero(fld_);
        std::vector<Elem> c(c_.size() - 1, fld_.zero());
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = fld_.from_int(int(i)) * c_[i];
        return UniPoly(fld_, std::move(c));
    }

    UniPoly monic() const {
        if (c_.empty()) return *this;
        return fld_.inv(c_.back()) * (*this);
    }

    // shift by t^k
    UniPoly shifted(int k) const {
        if (c_.empty()) return *this;
        std::vector<Elem> c(c_.size() + k, fld_.zero());
        for (size_t i = 0; i < c_.size(); ++i) c[i + k] = c_[i];
        return UniPoly(fld_, std::move(c));
    }

    friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        require(!b.c_.empty(), errc::zero_inverse, "polynomial division by zero");
        UniPoly q = zero(a.fld_), r = a;
        Elem lcinv = a.fld_.inv(b.lc());
        while (!r.c_.empty() && r.degree() >= b.degree()) {
            Elem c = r.lc() * lcinv;
            int off = r.degree() - b.degree();
            q.set_coeff(off, c);
            for (size_t j = 0; j < b.c_.size(); ++j) r.c_[off + j] -= c * b.c_[j];
            r.trim();
        }
        return {q, r};
    }
    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }
    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    F fld_;
    std::vector<Elem> c_;
};

// monic gcd; gcd(f, 0) = monic(f)
template <class F>
UniPoly<F> poly_gcd(UniPoly<F> a, UniPoly<F> b) {
    while (!b.is_zero_poly()) {
        UniPoly<F> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <class F>
UniPoly<F> poly_powmod(const UniPoly<F>& base, Int e, const UniPoly<F>& m) {
    UniPoly<F> r = UniPoly<F>::constant(base.field(), base.field().one());
    UniPoly<F> b = base % m;
    while (e > 0) {
        if ((e & 1) != 0) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

// Lagrange interpolation through (xs[i], ys[i]) with distinct xs; quadratic
// via the master polynomial and synthetic division
template <class F>
UniPoly<F> interpolate(F f, const std::vector<typename F::Elem>& xs,
                       const std::vector<typename F::Elem>& ys) {
    require(xs.size() == ys.size(), errc::arity_mismatch, "interpolation point mismatch");
    const size_t n = xs.size();
    if (n == 0) return UniPoly<F>::zero(f);
    // master = prod_j (x - xs[j]), built in place high-to-low
    std::vector<typename F::Elem> master(n + 1, f.zero());
    master[0] = f.one();
    size_t deg = 0;
    for (size_t j = 0; j < n; ++j) {
        for (size_t k = deg + 2; k-- > 0;) {
            auto shifted = (k > 0) ? master[k - 1] : f.zero();
            master[k] = shifted - xs[j] * master[k];
        }
        ++deg;
    }
    UniPoly<F> m(f, master);
    UniPoly<F> md = m.derivative();
    std::vector<typename F::Elem> acc(n, f.zero());
    std::vector<typename F::Elem> q(n, f.zero());
    for (size_t i = 0; i < n; ++i) {
        // q = master / (x - xs[i]) by synthetic division
        typename F::Elem carry = master[n];
        for (size_t k = n; k-- > 0;) {
            q[k] = carry;
            carry = master[k] + xs[i] * carry;
        }
        auto scale = ys[i] * f.inv(md.eval(xs[i]));
        if (is_zero(scale)) continue;
        for (size_t k = 0; k < n; ++k) acc[k] += scale * q[k];
    }
    return UniPoly<F>(f, std::move(acc));
}

// Resultant of f and g taken with *formal* degrees df >= deg f, dg >= deg g
// (fixed-size Sylvester determinant, so it specializes correctly under
// coefficient degeneration).
template <class F>
typename F::Elem sylvester_resultant(const UniPoly<F>& f, const UniPoly<F>& g, int df, int dg) {
    F fld = f.field();
    if (df == 0 && dg == 0) return fld.one();
    Mat<F> S(fld, df + dg, df + dg);
    for (int i = 0; i < dg; ++i)
        for (int j = 0; j <= df; ++j) S.at(i, i + j) = f.coeff(df - j);
    for (int i = 0; i < df; ++i)
        for (int j = 0; j <= dg; ++j) S.at(dg + i, i + j) = g.coeff(dg - j);
    return mat_det(S);
}

// ---------------------------------------------------------------------------
// Squarefree decomposition. Works in characteristic 0 and characteristic p
// (with p-th-root descent); returns pairwise coprime squarefree parts with
// their multiplicities, whose weighted product is monic(f).
// ---------------------------------------------------------------------------

namespace detail {

inline UniPoly<GF> pth_root(const UniPoly<GF>& f) {
    GF fld = f.field();
    u64 p = fld.p();
    unsigned k = fld.k();
    std::vector<GFElem> c;
    for (int i = 0; i <= f.degree(); i += int(p)) {
        GFElem a = f.coeff(i);
        // p-th root in F_{p^k} is a^(p^(k-1)); identity on F_p
        GFElem r = a;
        for (unsigned j = 0; j + 1 < k; ++j) r = fld.pow(r, p);
        c.push_back(r);
    }
    return UniPoly<GF>(fld, std::move(c));
}

}  // namespace detail

template <class F>
std::vector<std::pair<UniPoly<F>, int>> squarefree_decomposition(const UniPoly<F>& f0) {
    std::vector<std::pair<UniPoly<F>, int>> out;
    UniPoly<F> f = f0.monic();
    require(!f.is_zero_poly(), errc::out_of_range, "squarefree part of zero polynomial");
    if (f.degree() == 0) return out;

    int pchar = 0;
    if constexpr (std::is_same_v<F, GF>) pchar = int(f.field().p());

    auto merge = [&out](UniPoly<F> g, int mult) {
        if (g.degree() <= 0) return;
        for (auto& [h, m] : out)
            if (m == mult) {
                h = h * g;
                return;
            }
        out.emplace_back(std::move(g), mult);
    };

    // Yun-style loop; in char p the derivative may vanish, then descend by p-th root
    std::function<void(UniPoly<F>, int)> run = [&](UniPoly<F> g, int scale) {
        UniPoly<F> gp = g.derivative();
        if (gp.is_zero_poly()) {
            if constexpr (std::is_same_v<F, GF>) {
                run(detail::pth_root(g), scale * pchar);
                return;
            } else {
                fail(errc::internal, "zero derivative in characteristic 0");
            }
        }
        UniPoly<F> w = poly_gcd(g, gp);
        UniPoly<F> y = g / w;  // product of squarefree parts with mult not divisible by p
        int i = 1;
        while (y.degree() > 0) {
            UniPoly<F> z = poly_gcd(y, w);
            UniPoly<F> part = y / z;
            merge(part, i * scale);
            y = std::move(z);
            w = w / y;
            ++i;
        }
        if (w.degree() > 0) {
            if constexpr (std::is_same_v<F, GF>) {
                run(detail::pth_root(w), scale * pchar);
            } else {
                fail(errc::internal, "residual factor in characteristic 0");
            }
        }
    };
    run(f, 1);
    return out;
}

// ---------------------------------------------------------------------------
// Factorization over finite fields: distinct-degree + Cantor-Zassenhaus
// equal-degree splitting (odd characteristic). Randomness is drawn from the
// supplied generator, so runs are reproducible.
// ---------------------------------------------------------------------------

struct FactorGF {
    UniPoly<GF> poly;  // monic irreducible
    int mult;
};

namespace detail {

inline UniPoly<GF> frobenius_mod(const UniPoly<GF>& g, const UniPoly<GF>& m) {
    // g(x)^q mod m where q = |field|
    GF fld = g.field();
    UniPoly<GF> r = g;
    Int q = 1;
    for (unsigned i = 0; i < fld.k(); ++i) q *= Int(fld.p());
    return poly_powmod(r, q, m);
}

// split a squarefree product of irreducibles of equal degree d
inline void equal_degree_split(const UniPoly<GF>& f, int d, Rng& rng,
                               std::vector<UniPoly<GF>>& out) {
    GF fld = f.field();
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    require(fld.p() != 2, errc::config_error, "equal-degree splitting requires odd characteristic");
    Int q = 1;
    for (unsigned i = 0; i < fld.k(); ++i) q *= Int(fld.p());
    Int qd = 1;
    for (int i = 0; i < d; ++i) qd *= q;
    Int e = (qd - 1) / 2;
    for (;;) {
        // random polynomial of degree < deg f
        std::vector<GFElem> c;
        for (int i = 0; i < f.degree(); ++i) c.push_back(fld.random(rng));
        UniPoly<GF> a(fld, std::move(c));
        if (a.degree() < 1) continue;
        UniPoly<GF> g = poly_gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f / g, d, rng, out);
            return;
        }
        UniPoly<GF> b = poly_powmod(a, e, f);
        b = b - UniPoly<GF>::constant(fld, fld.one());
        g = poly_gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace detail

inline std::vector<FactorGF> factorize(const UniPoly<GF>& f, Rng& rng) {
    std::vector<FactorGF> out;
    GF fld = f.field();
    for (auto& [sf, mult] : squarefree_decomposition(f)) {
        // distinct-degree on the squarefree part
        UniPoly<GF> g = sf;
        UniPoly<GF> h = UniPoly<GF>::x(fld) % g;
        int d = 0;
        while (g.degree() > 0) {
            ++d;
            if (2 * d > g.degree()) {
                out.push_back({g.monic(), mult});
                break;
            }
            h = detail::frobenius_mod(h, g);
            UniPoly<GF> diff = h - (UniPoly<GF>::x(fld) % g);
            UniPoly<GF> dd = poly_gcd(diff, g);
            if (dd.degree() > 0) {
                std::vector<UniPoly<GF>> pieces;
                detail::equal_degree_split(dd, d, rng, pieces);
                for (auto& p : pieces) out.push_back({p, mult});
                g = g / dd;
                h = h % g;
            }
        }
    }
    return out;
}

// one root of a polynomial that splits into linear factors over its own field
inline std::optional<GFElem> some_root_in_field(UniPoly<GF> f, Rng& rng) {
    GF fld = f.field();
    // keep only the part that splits in the field: gcd(f, x^q - x)
    Int q = 1;
    for (unsigned i = 0; i < fld.k(); ++i) q *= Int(fld.p());
    UniPoly<GF> xq = poly_powmod(UniPoly<GF>::x(fld), q, f);
    UniPoly<GF> lin = poly_gcd(xq - UniPoly<GF>::x(fld), f);
    if (lin.degree() < 1) return std::nullopt;
    while (lin.degree() > 1) {
        std::vector<UniPoly<GF>> pieces;
        detail::equal_degree_split(lin, 1, rng, pieces);
        lin = pieces.front();
    }
    // lin = x + c0 (monic)
    return -lin.coeff(0);
}

// all roots of f lying in its own coefficient field, with multiplicities
inline std::vector<std::pair<GFElem, int>> roots_in_field(const UniPoly<GF>& f, Rng& rng) {
    std::vector<std::pair<GFElem, int>> roots;
    for (auto& fac : factorize(f, rng))
        if (fac.poly.degree() == 1) roots.push_back({-fac.poly.coeff(0), fac.mult});
    return roots;
}

template <class F>
struct RootReport {
    std::vector<std::pair<typename F::Elem, int>> roots;  // (root, multiplicity)
    std::vector<std::pair<int, int>> unresolved;          // (factor degree, multiplicity)
    bool overflowed = false;
};

// Roots of f over F_p, ascending extensions F_{p^j} for j <= max_ext_degree.
// Each irreducible factor of degree j contributes its j conjugate roots in
// F_{p^j}; factors needing a larger extension are reported, not fatal.
inline RootReport<GF> squarefree_and_roots(const UniPoly<GF>& f, int max_ext_degree, Rng& rng) {
    require(!f.is_zero_poly(), errc::out_of_range, "roots of the zero polynomial");
    GF fld = f.field();
    require(fld.k() == 1, errc::config_error, "root ascent starts from a prime field");
    RootReport<GF> rep;
    for (auto& fac : factorize(f, rng)) {
        int j = fac.poly.degree();
        if (j == 1) {
            rep.roots.push_back({-fac.poly.coeff(0), fac.mult});
            continue;
        }
        if (j > max_ext_degree) {
            rep.unresolved.push_back({j, fac.mult});
            rep.overflowed = true;
            continue;
        }
        GF big = GF::ext(fld.p(), unsigned(j));
        std::vector<GFElem> lifted;
        for (int i = 0; i <= j; ++i) lifted.push_back(big.lift(fac.poly.coeff(i)));
        UniPoly<GF> g(big, std::move(lifted));
        auto r0 = some_root_in_field(g, rng);
        require(r0.has_value(), errc::internal, "irreducible factor has no root in its splitting field");
        GFElem r = *r0;
        for (int c = 0; c < j; ++c) {
            rep.roots.push_back({r, fac.mult});
            r = big.pow(r, fld.p());  // next conjugate
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Binary forms: homogeneous polynomials in (s, t) of a formal degree. The
// coefficient vector always has length deg+1 with c[i] the coefficient of
// s^(deg-i) t^i, so zero padding carries degree information through pullbacks.
// ---------------------------------------------------------------------------

template <class F>
struct BinForm {
    using Elem = typename F::Elem;
    F fld;
    int deg = 0;
    std::vector<Elem> c;

    BinForm() : fld(), deg(0), c(1) {}  // empty shell; assign before use
    BinForm(F f, int d) : fld(f), deg(d), c(size_t(d) + 1, f.zero()) {}
    BinForm(F f, int d, std::vector<Elem> coeffs) : fld(f), deg(d), c(std::move(coeffs)) {
        require(int(c.size()) == d + 1, errc::arity_mismatch, "binary form length mismatch");
    }
    static BinForm constant(F f, Elem a) {
        BinForm b(f, 0);
        b.c[0] = std::move(a);
        return b;
    }

    bool is_zero_form() const {
        for (auto& x : c)
            if (!is_zero(x)) return false;
        return true;
    }

    friend BinForm operator+(const BinForm& a, const BinForm& b) {
        require(a.deg == b.deg, errc::grading_mismatch, "binary form degree mismatch in +");
        BinForm r = a;
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
        return r;
    }
    friend BinForm operator-(const BinForm& a, const BinForm& b) {
        require(a.deg == b.deg, errc::grading_mismatch, "binary form degree mismatch in -");
        BinForm r = a;
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
        return r;
    }
    friend BinForm operator*(const BinForm& a, const BinForm& b) {
        BinForm r(a.fld, a.deg + b.deg);
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (is_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j)
                if (!is_zero(b.c[j])) r.c[i + j] += a.c[i] * b.c[j];
        }
        return r;
    }
    friend BinForm operator*(const Elem& s, const BinForm& a) {
        BinForm r = a;
        for (auto& x : r.c) x = s * x;
        return r;
    }
    friend bool operator==(const BinForm& a, const BinForm& b) {
        return a.deg == b.deg && a.c == b.c;
    }

    Elem eval(const Elem& s, const Elem& t) const {
        Elem r = fld.zero();
        Elem sp = fld.one();
        std::vector<Elem> spow(size_t(deg) + 1, fld.zero());
        for (int i = deg; i >= 0; --i) {
            spow[i] = sp;
            sp = sp * s;
        }
        Elem tp = fld.one();
        for (int i = 0; i <= deg; ++i) {
            if (!is_zero(c[i])) r += c[i] * spow[i] * tp;
            tp = tp * t;
        }
        return r;
    }

    // f(1, t) as a univariate polynomial
    UniPoly<F> dehomogenized() const { return UniPoly<F>(fld, c); }
    // multiplicity of the root (s:t) = (0:1)
    int infinity_multiplicity() const { return deg - dehomogenized().degree(); }
};

// Rational roots of f over Q. Candidates come from divisors of the extreme
// integer coefficients found by trial division; divisors with a prime factor
// beyond the trial bound are not enumerated, so very large planted roots may
// be missed (callers here only ever plant small ones).
inline RootReport<QQ> squarefree_and_roots(const UniPoly<QQ>& f, int /*max_ext_degree*/) {
    require(!f.is_zero_poly(), errc::out_of_range, "roots of the zero polynomial");
    RootReport<QQ> rep;
    auto sf = squarefree_decomposition(f);
    for (auto& [g, mult] : sf) {
        // clear denominators
        Int lcm = 1;
        for (int i = 0; i <= g.degree(); ++i)
            lcm = boost::multiprecision::lcm(lcm, Int(denominator(g.coeff(i))));
        std::vector<Int> ic;
        for (int i = 0; i <= g.degree(); ++i) ic.push_back(Int(numerator(g.coeff(i) * Rat(lcm))));
        // strip powers of t
        int tmult = 0;
        while (tmult <= g.degree() && ic[tmult] == 0) ++tmult;
        if (tmult > 0) rep.roots.push_back({Rat(0), mult * tmult});
        Int a0 = ic[tmult] < 0 ? Int(-ic[tmult]) : ic[tmult];
        Int an = ic.back() < 0 ? Int(-ic.back()) : ic.back();
        auto divisors = [](Int n) {
            std::vector<Int> ds{1};
            Int rem = n;
            for (Int d = 2; d * d <= rem && d < 100000; ++d) {
                while (rem % d == 0) {
                    size_t sz = ds.size();
                    for (size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * d);
                    rem /= d;
                    std::sort(ds.begin(), ds.end());
                    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
                }
            }
            if (rem > 1) {
                size_t sz = ds.size();
                for (size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * rem);
            }
            std::sort(ds.begin(), ds.end());
            ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
            return ds;
        };
        int found_deg = tmult;
        if (g.degree() > tmult && a0 != 0) {
            for (const Int& num : divisors(a0))
                for (const Int& den : divisors(an))
                    for (int sign : {1, -1}) {
                        Rat cand = Rat(sign * num) / Rat(den);
                        if (is_zero(g.eval(cand))) {
                            bool dup = false;
                            for (auto& [r, m] : rep.roots)
                                if (r == cand && m == mult) dup = true;
                            if (!dup) {
                                rep.roots.push_back({cand, mult});
                                ++found_deg;
                            }
                        }
                    }
        }
        if (found_deg < g.degree()) rep.unresolved.push_back({g.degree() - found_deg, mult});
    }
    return rep;
}

}  // namespace hexacurve

#endif
