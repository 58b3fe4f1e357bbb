#ifndef HEXACURVE_MULTIPOLY_HPP
#define HEXACURVE_MULTIPOLY_HPP

#include <map>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "unipoly.hpp"

namespace hexacurve {

using Expo = std::vector<int>;

inline int weighted_degree(const Expo& e, const std::vector<int>& weights) {
    int d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += e[i] * weights[i];
    return d;
}

// Dual numbers K[eps]/(eps^2): value plus first-order part. Evaluating a
// polynomial at such points yields the value and the directional derivative.
template <class F>
struct JetValue {
    using Elem = typename F::Elem;
    Elem value;
    Elem derivative;

    friend JetValue operator+(const JetValue& a, const JetValue& b) {
        return {a.value + b.value, a.derivative + b.derivative};
    }
    friend JetValue operator*(const JetValue& a, const JetValue& b) {
        return {a.value * b.value, a.value * b.derivative + a.derivative * b.value};
    }
    friend bool operator==(const JetValue& a, const JetValue& b) {
        return a.value == b.value && a.derivative == b.derivative;
    }
};

// Sparse multivariate polynomial with per-variable positive integer weights.
// Terms are kept in a map with lexicographic key order, so iteration and
// serialization are deterministic.
template <class F>
class MultiPoly {
public:
    using Elem = typename F::Elem;

    MultiPoly() : fld_(), nvars_(0) {}  // empty shell; assign before use
    MultiPoly(F f, int nvars, std::vector<int> weights) : fld_(f), nvars_(nvars), w_(std::move(weights)) {
        require(int(w_.size()) == nvars_, errc::arity_mismatch, "weights/vars mismatch");
    }
    MultiPoly(F f, int nvars) : MultiPoly(f, nvars, std::vector<int>(nvars, 1)) {}

    static MultiPoly constant(F f, int nvars, std::vector<int> weights, Elem a) {
        MultiPoly p(f, nvars, std::move(weights));
        p.add_term(Expo(nvars, 0), std::move(a));
        return p;
    }
    static MultiPoly variable(F f, int nvars, std::vector<int> weights, int i) {
        MultiPoly p(f, nvars, std::move(weights));
        Expo e(nvars, 0);
        e[i] = 1;
        p.add_term(e, f.one());
        return p;
    }

    F field() const { return fld_; }
    int nvars() const { return nvars_; }
    const std::vector<int>& weights() const { return w_; }
    const std::map<Expo, Elem>& terms() const { return terms_; }
    bool is_zero_poly() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Expo& e, Elem coef) {
        require(int(e.size()) == nvars_, errc::arity_mismatch, "exponent arity mismatch");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!is_zero(coef)) terms_.emplace(e, std::move(coef));
        } else {
            it->second += coef;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    int degree() const {  // weighted degree, -1 for the zero polynomial
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, weighted_degree(e, w_));
        return d;
    }
    bool is_homogeneous() const {
        int d = -1;
        for (auto& [e, c] : terms_) {
            int t = weighted_degree(e, w_);
            if (d < 0)
                d = t;
            else if (t != d)
                return false;
        }
        return true;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        a.compat(b);
        MultiPoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        a.compat(b);
        MultiPoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r(fld_, nvars_, w_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.compat(b);
        MultiPoly r(a.fld_, a.nvars_, a.w_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                Expo e(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MultiPoly operator*(const Elem& s, const MultiPoly& a) {
        MultiPoly r(a.fld_, a.nvars_, a.w_);
        if (is_zero(s)) return r;
        for (auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
        return r;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    MultiPoly derivative(int var) const {
        MultiPoly r(fld_, nvars_, w_);
        for (auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Expo d = e;
            d[var] -= 1;
            r.add_term(d, fld_.from_int(e[var]) * c);
        }
        return r;
    }

    // Evaluation in an arbitrary commutative ring R given by an Ops bundle:
    // Ops::add(R,R), Ops::mul(R,R), Ops::from_coef(Elem), Ops::one(). Powers
    // are memoized per variable.
    template <class R, class Ops>
    R eval_in(const std::vector<R>& point, const Ops& ops) const {
        require(int(point.size()) == nvars_, errc::arity_mismatch, "evaluation arity mismatch");
        std::vector<int> maxe(nvars_, 0);
        for (auto& [e, c] : terms_)
            for (int i = 0; i < nvars_; ++i) maxe[i] = std::max(maxe[i], e[i]);
        std::vector<std::vector<R>> pw(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            pw[i].push_back(ops.one());
            for (int j = 1; j <= maxe[i]; ++j) pw[i].push_back(ops.mul(pw[i].back(), point[i]));
        }
        bool first = true;
        R acc = ops.one();
        for (auto& [e, c] : terms_) {
            R t = ops.from_coef(c);
            for (int i = 0; i < nvars_; ++i)
                if (e[i] > 0) t = ops.mul(t, pw[i][e[i]]);
            acc = first ? t : ops.add(acc, t);
            first = false;
        }
        if (first) return ops.from_coef(fld_.zero());
        return acc;
    }

private:
    void compat(const MultiPoly& b) const {
        require(nvars_ == b.nvars_ && w_ == b.w_, errc::arity_mismatch,
                "polynomials over different variable frames");
    }
    F fld_;
    int nvars_;
    std::vector<int> w_;
    std::map<Expo, Elem> terms_;
};

namespace detail {

template <class F>
struct ElemOps {
    F fld;
    using R = typename F::Elem;
    R add(const R& a, const R& b) const { return a + b; }
    R mul(const R& a, const R& b) const { return a * b; }
    R from_coef(const R& c) const { return c; }
    R one() const { return fld.one(); }
};

template <class F>
struct JetOps {
    F fld;
    using R = JetValue<F>;
    R add(const R& a, const R& b) const { return a + b; }
    R mul(const R& a, const R& b) const { return a * b; }
    R from_coef(const typename F::Elem& c) const { return {c, fld.zero()}; }
    R one() const { return {fld.one(), fld.zero()}; }
};

template <class F>
struct PolyOps {
    F fld;
    int nvars;
    std::vector<int> weights;
    using R = MultiPoly<F>;
    R add(const R& a, const R& b) const { return a + b; }
    R mul(const R& a, const R& b) const { return a * b; }
    R from_coef(const typename F::Elem& c) const {
        return MultiPoly<F>::constant(fld, nvars, weights, c);
    }
    R one() const { return from_coef(fld.one()); }
};

template <class F>
struct BinOps {
    F fld;
    using R = BinForm<F>;
    R add(const R& a, const R& b) const { return a + b; }
    R mul(const R& a, const R& b) const { return a * b; }
    R from_coef(const typename F::Elem& c) const { return BinForm<F>::constant(fld, c); }
    R one() const { return BinForm<F>::constant(fld, fld.one()); }
};

}  // namespace detail

template <class F>
typename F::Elem poly_eval(const MultiPoly<F>& f, const std::vector<typename F::Elem>& point) {
    return f.eval_in(point, detail::ElemOps<F>{f.field()});
}

template <class F>
JetValue<F> jet_eval(const MultiPoly<F>& f, const std::vector<JetValue<F>>& point) {
    return f.eval_in(point, detail::JetOps<F>{f.field()});
}

// f composed with a substitution, expanded; checks weighted homogeneity when
// both f and the substitution are homogeneous
template <class F>
MultiPoly<F> pullback(const MultiPoly<F>& f, const std::vector<MultiPoly<F>>& sub) {
    require(int(sub.size()) == f.nvars(), errc::arity_mismatch, "substitution arity mismatch");
    if (f.is_homogeneous() && !f.is_zero_poly()) {
        // substitution degree for variable i must be lambda * weight_i
        long lambda_num = -1, lambda_den = -1;
        for (int i = 0; i < f.nvars(); ++i) {
            if (sub[i].is_zero_poly()) continue;
            require(sub[i].is_homogeneous(), errc::grading_mismatch,
                    "inhomogeneous substitution into homogeneous polynomial");
            long di = sub[i].degree(), wi = f.weights()[i];
            if (lambda_num < 0) {
                lambda_num = di;
                lambda_den = wi;
            } else {
                require(di * lambda_den == lambda_num * wi, errc::grading_mismatch,
                        "substitution degrees break weighted homogeneity");
            }
        }
    }
    int nv = sub.empty() ? 0 : sub[0].nvars();
    std::vector<int> w = sub.empty() ? std::vector<int>{} : sub[0].weights();
    return f.eval_in(sub, detail::PolyOps<F>{f.field(), nv, w});
}

// f composed with binary forms (a parametrized curve); f must be homogeneous
// and the forms' degrees proportional to the variable weights
template <class F>
BinForm<F> pullback_binary(const MultiPoly<F>& f, const std::vector<BinForm<F>>& sub) {
    require(int(sub.size()) == f.nvars(), errc::arity_mismatch, "substitution arity mismatch");
    require(f.is_homogeneous(), errc::grading_mismatch, "binary pullback needs homogeneous input");
    if (f.is_zero_poly()) return BinForm<F>(f.field(), 0);
    for (int i = 1; i < f.nvars(); ++i)
        require(sub[i].deg * f.weights()[0] == sub[0].deg * f.weights()[i], errc::grading_mismatch,
                "binary substitution degrees break weighted homogeneity");
    return f.eval_in(sub, detail::BinOps<F>{f.field()});
}

// all exponent vectors of exact weighted degree, graded-lexicographic
// (here: single grade, lexicographically descending)
inline std::vector<Expo> monomial_basis(int nvars, const std::vector<int>& weights, int degree) {
    require(degree >= 0, errc::out_of_range, "negative degree");
    std::vector<Expo> out;
    Expo cur(nvars, 0);
    std::function<void(int, int)> rec = [&](int i, int rem) {
        if (i == nvars - 1) {
            if (rem % weights[i] == 0) {
                cur[i] = rem / weights[i];
                out.push_back(cur);
                cur[i] = 0;
            }
            return;
        }
        for (int e = rem / weights[i]; e >= 0; --e) {
            cur[i] = e;
            rec(i + 1, rem - e * weights[i]);
        }
        cur[i] = 0;
    };
    if (nvars > 0) rec(0, degree);
    return out;
}

// entry (i, j) = polys[j](points[i]); projective representatives are used as
// given, callers manage scaling
template <class F>
Mat<F> evaluation_matrix(const std::vector<MultiPoly<F>>& polys,
                         const std::vector<std::vector<typename F::Elem>>& points, F fld) {
    Mat<F> M(fld, int(points.size()), int(polys.size()));
    for (int i = 0; i < int(points.size()); ++i)
        for (int j = 0; j < int(polys.size()); ++j) M.at(i, j) = poly_eval(polys[j], points[i]);
    return M;
}

// convenience: the monomials of a weighted degree as polynomials
template <class F>
std::vector<MultiPoly<F>> monomial_polys(F fld, int nvars, const std::vector<int>& weights,
                                         int degree) {
    std::vector<MultiPoly<F>> out;
    for (const Expo& e : monomial_basis(nvars, weights, degree)) {
        MultiPoly<F> m(fld, nvars, weights);
        m.add_term(e, fld.one());
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace hexacurve

#endif
