#ifndef HEXACURVE_LINALG_HPP
#define HEXACURVE_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gf.hpp"
#include "rational.hpp"

namespace hexacurve {

template <class F>
using Vec = std::vector<typename F::Elem>;

template <class F>
struct Mat {
    using Elem = typename F::Elem;
    F fld;
    int n = 0, m = 0;
    std::vector<Elem> a;

    Mat(F f, int rows, int cols) : fld(f), n(rows), m(cols), a(size_t(rows) * cols, f.zero()) {}

    Elem& at(int i, int j) { return a[size_t(i) * m + j]; }
    const Elem& at(int i, int j) const { return a[size_t(i) * m + j]; }

    static Mat identity(F f, int n) {
        Mat I(f, n, n);
        for (int i = 0; i < n; ++i) I.at(i, i) = f.one();
        return I;
    }
    static Mat from_rows(F f, const std::vector<Vec<F>>& rows) {
        int n = int(rows.size());
        int m = n ? int(rows[0].size()) : 0;
        Mat M(f, n, m);
        for (int i = 0; i < n; ++i) {
            require(int(rows[i].size()) == m, errc::arity_mismatch, "ragged rows");
            for (int j = 0; j < m; ++j) M.at(i, j) = rows[i][j];
        }
        return M;
    }
    static Mat from_cols(F f, const std::vector<Vec<F>>& cols) {
        int m = int(cols.size());
        int n = m ? int(cols[0].size()) : 0;
        Mat M(f, n, m);
        for (int j = 0; j < m; ++j) {
            require(int(cols[j].size()) == n, errc::arity_mismatch, "ragged cols");
            for (int i = 0; i < n; ++i) M.at(i, j) = cols[j][i];
        }
        return M;
    }
    Vec<F> row(int i) const { return Vec<F>(a.begin() + size_t(i) * m, a.begin() + size_t(i + 1) * m); }
    Vec<F> col(int j) const {
        Vec<F> c;
        c.reserve(n);
        for (int i = 0; i < n; ++i) c.push_back(at(i, j));
        return c;
    }
    Mat transpose() const {
        Mat T(fld, m, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) T.at(j, i) = at(i, j);
        return T;
    }
    void append_rows(const Mat& other) {
        require(other.m == m, errc::arity_mismatch, "column count mismatch");
        a.insert(a.end(), other.a.begin(), other.a.end());
        n += other.n;
    }
    Vec<F> apply(const Vec<F>& x) const {
        require(int(x.size()) == m, errc::arity_mismatch, "dimension mismatch");
        Vec<F> y(n, fld.zero());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                if (!is_zero(at(i, j)) && !is_zero(x[j])) y[i] += at(i, j) * x[j];
        return y;
    }
};

template <class F>
Mat<F> matmul(const Mat<F>& A, const Mat<F>& B) {
    require(A.m == B.n, errc::arity_mismatch, "matmul dimension mismatch");
    Mat<F> C(A.fld, A.n, B.m);
    for (int i = 0; i < A.n; ++i)
        for (int k = 0; k < A.m; ++k) {
            if (is_zero(A.at(i, k))) continue;
            for (int j = 0; j < B.m; ++j)
                if (!is_zero(B.at(k, j))) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return C;
}

namespace detail {

// Generic row echelon via field division; returns pivot columns. Used for
// finite fields, where coefficient growth is not a concern.
template <class F>
std::vector<int> echelon_division(Mat<F>& M) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < M.m && r < M.n; ++c) {
        int pr = -1;
        for (int i = r; i < M.n; ++i)
            if (!is_zero(M.at(i, c))) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < M.m; ++j) std::swap(M.at(pr, j), M.at(r, j));
        auto pinv = M.fld.inv(M.at(r, c));
        for (int j = c; j < M.m; ++j) M.at(r, j) = M.at(r, j) * pinv;
        for (int i = 0; i < M.n; ++i) {
            if (i == r || is_zero(M.at(i, c))) continue;
            auto f = M.at(i, c);
            for (int j = c; j < M.m; ++j) M.at(i, j) -= f * M.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Fraction-free (Bareiss) echelon over Q: rows are first scaled to integers,
// then eliminated with exact divisions by the previous pivot, which keeps
// entries at minor-determinant size instead of blowing up.
inline std::vector<int> echelon_bareiss(Mat<QQ>& M) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    for (int i = 0; i < M.n; ++i) {
        Int l = 1;
        for (int j = 0; j < M.m; ++j) l = lcm(l, Int(denominator(M.at(i, j))));
        if (l != 1)
            for (int j = 0; j < M.m; ++j) M.at(i, j) *= Rat(l);
        Int g = 0;
        for (int j = 0; j < M.m; ++j) g = gcd(g, Int(numerator(M.at(i, j))));
        if (g > 1)
            for (int j = 0; j < M.m; ++j) M.at(i, j) /= Rat(g);
    }
    std::vector<int> pivots;
    Rat prev = 1;
    int r = 0;
    for (int c = 0; c < M.m && r < M.n; ++c) {
        int pr = -1;
        for (int i = r; i < M.n; ++i)
            if (!is_zero(M.at(i, c))) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < M.m; ++j) std::swap(M.at(pr, j), M.at(r, j));
        const Rat piv = M.at(r, c);
        for (int i = r + 1; i < M.n; ++i) {
            const Rat head = M.at(i, c);
            for (int j = c; j < M.m; ++j) M.at(i, j) = (M.at(i, j) * piv - head * M.at(r, j)) / prev;
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    // normalize pivot rows so back-substitution sees a clean echelon
    for (size_t t = 0; t < pivots.size(); ++t) {
        Rat pinv = 1 / M.at(int(t), pivots[t]);
        for (int j = pivots[t]; j < M.m; ++j) M.at(int(t), j) *= pinv;
    }
    // clear above pivots (reduced form), in rational arithmetic
    for (int t = int(pivots.size()) - 1; t >= 0; --t) {
        int c = pivots[t];
        for (int i = 0; i < t; ++i) {
            Rat f = M.at(i, c);
            if (is_zero(f)) continue;
            for (int j = c; j < M.m; ++j) M.at(i, j) -= f * M.at(t, j);
        }
    }
    return pivots;
}

template <class F>
std::vector<int> echelon(Mat<F>& M) {
    if constexpr (std::is_same_v<F, QQ>)
        return echelon_bareiss(M);
    else
        return echelon_division(M);
}

}  // namespace detail

template <class F>
struct RankKernel {
    int rank = 0;
    std::vector<Vec<F>> kernel;  // reduced basis: identity block on free columns
};

// rank and a reduced-echelon kernel basis of M (viewed as a linear map on
// column vectors of length M.m)
template <class F>
RankKernel<F> mat_rank_kernel(Mat<F> M) {
    auto pivots = detail::echelon(M);
    RankKernel<F> out;
    out.rank = int(pivots.size());
    std::vector<bool> is_pivot(M.m, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int c = 0; c < M.m; ++c) {
        if (is_pivot[c]) continue;
        Vec<F> v(M.m, M.fld.zero());
        v[c] = M.fld.one();
        // pivot rows are reduced: x_{p_t} = −M[t][c]
        for (size_t t = 0; t < pivots.size(); ++t) v[pivots[t]] = -M.at(int(t), c);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

template <class F>
int mat_rank(const Mat<F>& M) {
    Mat<F> C = M;
    return int(detail::echelon(C).size());
}

// exact solution of M x = b, or nullopt when b is outside the column span
template <class F>
std::optional<Vec<F>> solve_linear(const Mat<F>& M, const Vec<F>& b) {
    require(int(b.size()) == M.n, errc::arity_mismatch, "rhs length mismatch");
    Mat<F> A(M.fld, M.n, M.m + 1);
    for (int i = 0; i < M.n; ++i) {
        for (int j = 0; j < M.m; ++j) A.at(i, j) = M.at(i, j);
        A.at(i, M.m) = b[i];
    }
    auto pivots = detail::echelon(A);
    if (!pivots.empty() && pivots.back() == M.m) return std::nullopt;
    Vec<F> x(M.m, M.fld.zero());
    for (size_t t = 0; t < pivots.size(); ++t) x[pivots[t]] = A.at(int(t), M.m);
    return x;
}

namespace detail {

// determinant over a prime field on raw residues; avoids per-element
// allocation in hot loops (quadruple-nested interpolation in the leg search)
inline u64 raw_det_mod_p(std::vector<u64>& a, int n, const GFCtx* ctx) {
    u64 det = 1;
    bool neg = false;
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (a[size_t(i) * n + c] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) return 0;
        if (pr != c) {
            for (int j = c; j < n; ++j) std::swap(a[size_t(pr) * n + j], a[size_t(c) * n + j]);
            neg = !neg;
        }
        u64 piv = a[size_t(c) * n + c];
        det = ctx->smul(det, piv);
        u64 pinv = ctx->sinv(piv);
        for (int i = c + 1; i < n; ++i) {
            u64 head = a[size_t(i) * n + c];
            if (!head) continue;
            u64 fct = ctx->smul(head, pinv);
            for (int j = c; j < n; ++j)
                a[size_t(i) * n + j] =
                    ctx->ssub(a[size_t(i) * n + j], ctx->smul(fct, a[size_t(c) * n + j]));
        }
    }
    return neg ? ctx->sneg(det) : det;
}

}  // namespace detail

template <class F>
typename F::Elem mat_det(const Mat<F>& M) {
    require(M.n == M.m, errc::arity_mismatch, "determinant of non-square matrix");
    if constexpr (std::is_same_v<F, GF>) {
        if (M.fld.k() == 1) {
            std::vector<u64> a(size_t(M.n) * M.n);
            for (size_t i = 0; i < a.size(); ++i) a[i] = M.a[i].coeffs()[0];
            return M.fld.from_int(i64(detail::raw_det_mod_p(a, M.n, M.fld.ctx())));
        }
    }
    Mat<F> A = M;
    auto f = A.fld;
    typename F::Elem det = f.one();
    int r = 0;
    for (int c = 0; c < A.m; ++c) {
        int pr = -1;
        for (int i = r; i < A.n; ++i)
            if (!is_zero(A.at(i, c))) {
                pr = i;
                break;
            }
        if (pr < 0) return f.zero();
        if (pr != r) {
            for (int j = 0; j < A.m; ++j) std::swap(A.at(pr, j), A.at(r, j));
            det = -det;
        }
        det = det * A.at(r, c);
        auto pinv = f.inv(A.at(r, c));
        for (int i = r + 1; i < A.n; ++i) {
            if (is_zero(A.at(i, c))) continue;
            auto fac = A.at(i, c) * pinv;
            for (int j = c; j < A.m; ++j) A.at(i, j) -= fac * A.at(r, j);
        }
        ++r;
    }
    return det;
}

// expand values of an extension-field matrix into base-field rows: each
// F_{p^j} row becomes j rows over F_p (coefficientwise)
inline Mat<GF> expand_rows_to_prime(const Mat<GF>& M) {
    const GFCtx* ctx = M.fld.ctx();
    GF base = GF::prime(ctx->p);
    unsigned k = ctx->k;
    Mat<GF> out(base, M.n * int(k), M.m);
    for (int i = 0; i < M.n; ++i)
        for (int j = 0; j < M.m; ++j) {
            const auto& c = M.at(i, j).coeffs();
            for (unsigned t = 0; t < k; ++t)
                out.at(i * int(k) + int(t), j) = base.from_int(i64(c[t]));
        }
    return out;
}

}  // namespace hexacurve

#endif
