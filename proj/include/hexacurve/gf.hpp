#ifndef HEXACURVE_GF_HPP
#define HEXACURVE_GF_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace hexacurve {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// ---------------------------------------------------------------------------
// Field contexts. A context describes F_{p^k} = F_p[u]/(min_poly), with
// min_poly monic of degree k. Contexts are interned and live for the whole
// process; elements refer to them by raw pointer, so pointer equality is
// field equality.
// ---------------------------------------------------------------------------

class GFCtx {
public:
    u64 p;
    unsigned k;
    std::vector<u64> min_poly;  // length k+1, monic, coefficients mod p

    bool prime_field() const { return k == 1; }

    // scalar arithmetic mod p
    u64 sadd(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p ? s - p : s;
    }
    u64 ssub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 smul(u64 a, u64 b) const { return (a * b) % p; }
    u64 sneg(u64 a) const { return a == 0 ? 0 : p - a; }
    u64 sinv(u64 a) const {
        require(a != 0, errc::zero_inverse, "inverse of 0 in F_p");
        i64 t = 0, newt = 1;
        i64 r = static_cast<i64>(p), newr = static_cast<i64>(a);
        while (newr != 0) {
            i64 q = r / newr;
            t -= q * newt;
            std::swap(t, newt);
            r -= q * newr;
            std::swap(r, newr);
        }
        return t < 0 ? static_cast<u64>(t + static_cast<i64>(p)) : static_cast<u64>(t);
    }
    u64 spow(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1) r = smul(r, a);
            a = smul(a, a);
            e >>= 1;
        }
        return r;
    }

    // vector (extension element) arithmetic; all vectors have length k
    void vadd(const u64* a, const u64* b, u64* out) const {
        for (unsigned i = 0; i < k; ++i) out[i] = sadd(a[i], b[i]);
    }
    void vsub(const u64* a, const u64* b, u64* out) const {
        for (unsigned i = 0; i < k; ++i) out[i] = ssub(a[i], b[i]);
    }
    void vneg(const u64* a, u64* out) const {
        for (unsigned i = 0; i < k; ++i) out[i] = sneg(a[i]);
    }
    void vmul(const u64* a, const u64* b, u64* out) const {
        if (k == 1) {
            out[0] = smul(a[0], b[0]);
            return;
        }
        std::vector<u64> buf(2 * k - 1, 0);
        for (unsigned i = 0; i < k; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < k; ++j)
                if (b[j] != 0) buf[i + j] = sadd(buf[i + j], smul(a[i], b[j]));
        }
        // reduce by monic min_poly
        for (unsigned d = 2 * k - 2; d >= k; --d) {
            u64 c = buf[d];
            if (c) {
                buf[d] = 0;
                for (unsigned j = 0; j < k; ++j)
                    buf[d - k + j] = ssub(buf[d - k + j], smul(c, min_poly[j]));
            }
            if (d == k) break;
        }
        for (unsigned i = 0; i < k; ++i) out[i] = buf[i];
    }
    void vinv(const u64* a, u64* out) const;

    u64 order() const {  // p^k, assumed to fit; callers keep p^k moderate
        u64 q = 1;
        for (unsigned i = 0; i < k; ++i) q *= p;
        return q;
    }

    static const GFCtx* get(u64 p, unsigned k);
    static const GFCtx* get(u64 p, unsigned k, const std::vector<u64>& min_poly);
};

namespace detail {

// raw dense polynomial helpers over F_p (coefficient vectors, no leading-zero
// trimming promises); used for context construction only
inline void raw_trim(std::vector<u64>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::vector<u64> raw_mulmod(const GFCtx& Fp, const std::vector<u64>& a,
                                   const std::vector<u64>& b, const std::vector<u64>& m) {
    std::vector<u64> buf(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j]) buf[i + j] = Fp.sadd(buf[i + j], Fp.smul(a[i], b[j]));
    }
    // reduce by monic m
    size_t dm = m.size() - 1;
    for (size_t d = buf.size(); d-- > dm;) {
        u64 c = buf[d];
        if (!c) continue;
        buf[d] = 0;
        for (size_t j = 0; j < dm; ++j) buf[d - dm + j] = Fp.ssub(buf[d - dm + j], Fp.smul(c, m[j]));
    }
    buf.resize(dm);
    return buf;
}

inline std::vector<u64> raw_gcd(const GFCtx& Fp, std::vector<u64> a, std::vector<u64> b) {
    raw_trim(a);
    raw_trim(b);
    while (!b.empty()) {
        // a mod b
        u64 lcinv = Fp.sinv(b.back());
        while (a.size() >= b.size()) {
            u64 c = Fp.smul(a.back(), lcinv);
            if (c) {
                size_t off = a.size() - b.size();
                for (size_t j = 0; j < b.size(); ++j) a[off + j] = Fp.ssub(a[off + j], Fp.smul(c, b[j]));
            }
            a.pop_back();
            raw_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

inline std::vector<u64> raw_powmod(const GFCtx& Fp, std::vector<u64> base, u64 e,
                                   const std::vector<u64>& m) {
    std::vector<u64> result{1};
    result.resize(m.size() - 1, 0);
    base.resize(m.size() - 1, 0);
    while (e) {
        if (e & 1) result = raw_mulmod(Fp, result, base, m);
        base = raw_mulmod(Fp, base, base, m);
        e >>= 1;
    }
    return result;
}

inline bool raw_irreducible_rabin(const GFCtx& Fp, const std::vector<u64>& f) {
    size_t k = f.size() - 1;
    if (k == 1) return true;
    std::vector<u64> x{0, 1};
    // x^{p^j} mod f by repeated p-powering
    auto frob = [&](std::vector<u64> g) { return raw_powmod(Fp, std::move(g), Fp.p, f); };
    // distinct-degree conditions at maximal proper divisors k/q
    std::vector<size_t> prime_divs;
    size_t kk = k;
    for (size_t q = 2; q * q <= kk; ++q)
        if (kk % q == 0) {
            prime_divs.push_back(q);
            while (kk % q == 0) kk /= q;
        }
    if (kk > 1) prime_divs.push_back(kk);
    std::vector<u64> xq = x;
    xq.resize(k, 0);
    std::vector<std::vector<u64>> frob_tower(k + 1);
    frob_tower[0] = xq;
    for (size_t j = 1; j <= k; ++j) frob_tower[j] = frob(frob_tower[j - 1]);
    // x^{p^k} == x?
    std::vector<u64> top = frob_tower[k];
    raw_trim(top);
    std::vector<u64> xt = x;
    raw_trim(xt);
    if (top != xt) return false;
    for (size_t q : prime_divs) {
        std::vector<u64> g = frob_tower[k / q];
        // gcd(x^{p^{k/q}} − x, f) must be 1
        std::vector<u64> diff = g;
        diff.resize(std::max<size_t>(diff.size(), 2), 0);
        diff[1] = Fp.ssub(diff[1], 1);
        auto d = raw_gcd(Fp, diff, f);
        if (d.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

namespace detail {

// (quotient, remainder) of a by monic-scalable b over F_p; b nonzero
inline std::pair<std::vector<u64>, std::vector<u64>> raw_divmod(const GFCtx& Fp,
                                                                std::vector<u64> a,
                                                                const std::vector<u64>& b) {
    std::vector<u64> q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    u64 lcinv = Fp.sinv(b.back());
    while (a.size() >= b.size()) {
        u64 c = Fp.smul(a.back(), lcinv);
        size_t off = a.size() - b.size();
        if (c) {
            q[off] = c;
            for (size_t j = 0; j < b.size(); ++j) a[off + j] = Fp.ssub(a[off + j], Fp.smul(c, b[j]));
        }
        a.pop_back();
        raw_trim(a);
        if (a.empty()) break;
    }
    return {std::move(q), std::move(a)};
}

}  // namespace detail

inline void GFCtx::vinv(const u64* a, u64* out) const {
    if (k == 1) {
        out[0] = sinv(a[0]);
        return;
    }
    GFCtx Fp;
    Fp.p = p;
    Fp.k = 1;
    std::vector<u64> r0(min_poly), r1(a, a + k), t0, t1{1};
    detail::raw_trim(r1);
    require(!r1.empty(), errc::zero_inverse, "inverse of 0 in extension field");
    while (r1.size() > 1) {
        auto [q, r2] = detail::raw_divmod(Fp, r0, r1);
        // t2 = t0 − q·t1
        std::vector<u64> t2(std::max(t0.size(), q.size() + t1.size()), 0);
        for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
        for (size_t i = 0; i < q.size(); ++i)
            if (q[i])
                for (size_t j = 0; j < t1.size(); ++j)
                    if (t1[j]) t2[i + j] = Fp.ssub(t2[i + j], Fp.smul(q[i], t1[j]));
        detail::raw_trim(t2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
        require(!r1.empty(), errc::internal, "gcd(a, min_poly) != 1: reducible min_poly?");
    }
    u64 ci = sinv(r1[0]);
    for (unsigned i = 0; i < k; ++i) out[i] = 0;
    for (size_t i = 0; i < t1.size() && i < k; ++i) out[i] = smul(t1[i], ci);
}

inline const GFCtx* GFCtx::get(u64 p, unsigned k, const std::vector<u64>& min_poly) {
    require(p >= 2 && p < (1ULL << 31), errc::config_error, "prime out of range");
    require(k >= 1, errc::config_error, "extension degree must be >= 1");
    require(min_poly.size() == k + 1 && min_poly[k] == 1, errc::config_error,
            "min_poly must be monic of degree k");
    static std::mutex mu;
    static std::map<std::tuple<u64, unsigned, std::vector<u64>>, std::unique_ptr<GFCtx>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, k, min_poly);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second.get();
    auto ctx = std::make_unique<GFCtx>();
    ctx->p = p;
    ctx->k = k;
    ctx->min_poly = min_poly;
    const GFCtx* out = ctx.get();
    registry.emplace(std::move(key), std::move(ctx));
    return out;
}

inline const GFCtx* GFCtx::get(u64 p, unsigned k) {
    require(p >= 2 && p < (1ULL << 31), errc::config_error, "prime out of range");
    if (k == 1) {
        std::vector<u64> mp{0, 1};  // u − 0; unused for k = 1
        return get(p, 1, mp);
    }
    // smallest monic irreducible of degree k in lexicographic coefficient
    // order (c_0, c_1, ..., c_{k-1}), so runs are reproducible
    GFCtx Fp;
    Fp.p = p;
    Fp.k = 1;
    std::vector<u64> f(k + 1, 0);
    f[k] = 1;
    for (;;) {
        // increment (c_0..c_{k-1}) as a base-p counter, most significant last
        unsigned i = 0;
        while (i < k) {
            if (++f[i] < p) break;
            f[i] = 0;
            ++i;
        }
        require(i < k, errc::internal, "no irreducible polynomial found");
        if (f[0] == 0) continue;  // divisible by u
        if (detail::raw_irreducible_rabin(Fp, f)) return get(p, k, f);
    }
}

// ---------------------------------------------------------------------------
// Field elements. GFElem carries its context; mixing contexts throws
// FieldMismatch. For k = 1 the single coefficient is the residue.
// ---------------------------------------------------------------------------

class GFElem {
public:
    GFElem() : ctx_(nullptr) {}
    GFElem(const GFCtx* ctx, std::vector<u64> coeffs) : ctx_(ctx), c_(std::move(coeffs)) {
        c_.resize(ctx->k, 0);
    }

    const GFCtx* ctx() const { return ctx_; }
    const std::vector<u64>& coeffs() const { return c_; }

    bool is_zero() const {
        for (u64 x : c_)
            if (x) return false;
        return true;
    }

    friend GFElem operator+(const GFElem& a, const GFElem& b) {
        a.check(b);
        GFElem r(a);
        a.ctx_->vadd(a.c_.data(), b.c_.data(), r.c_.data());
        return r;
    }
    friend GFElem operator-(const GFElem& a, const GFElem& b) {
        a.check(b);
        GFElem r(a);
        a.ctx_->vsub(a.c_.data(), b.c_.data(), r.c_.data());
        return r;
    }
    friend GFElem operator*(const GFElem& a, const GFElem& b) {
        a.check(b);
        GFElem r(a);
        a.ctx_->vmul(a.c_.data(), b.c_.data(), r.c_.data());
        return r;
    }
    friend GFElem operator/(const GFElem& a, const GFElem& b) {
        a.check(b);
        GFElem bi(b);
        b.ctx_->vinv(b.c_.data(), bi.c_.data());
        GFElem r(a);
        a.ctx_->vmul(a.c_.data(), bi.c_.data(), r.c_.data());
        return r;
    }
    GFElem operator-() const {
        GFElem r(*this);
        ctx_->vneg(c_.data(), r.c_.data());
        return r;
    }
    GFElem& operator+=(const GFElem& b) { return *this = *this + b; }
    GFElem& operator-=(const GFElem& b) { return *this = *this - b; }
    GFElem& operator*=(const GFElem& b) { return *this = *this * b; }

    friend bool operator==(const GFElem& a, const GFElem& b) {
        a.check(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const GFElem& a, const GFElem& b) { return !(a == b); }

private:
    void check(const GFElem& b) const {
        require(ctx_ != nullptr && ctx_ == b.ctx_, errc::field_mismatch,
                "operands from different fields");
    }
    const GFCtx* ctx_;
    std::vector<u64> c_;
};

// Field descriptor for F_{p^k}; the template parameter used throughout the
// library. Cheap to copy.
class GF {
public:
    using Elem = GFElem;

    GF() : ctx_(nullptr) {}
    explicit GF(const GFCtx* ctx) : ctx_(ctx) {}
    static GF prime(u64 p) { return GF(GFCtx::get(p, 1)); }
    static GF ext(u64 p, unsigned k) { return GF(GFCtx::get(p, k)); }

    const GFCtx* ctx() const { return ctx_; }
    u64 p() const { return ctx_->p; }
    unsigned k() const { return ctx_->k; }
    u64 order() const { return ctx_->order(); }
    bool same(const GF& o) const { return ctx_ == o.ctx_; }

    Elem zero() const { return Elem(ctx_, {}); }
    Elem one() const { return from_int(1); }
    Elem from_int(i64 n) const {
        i64 r = n % static_cast<i64>(ctx_->p);
        if (r < 0) r += static_cast<i64>(ctx_->p);
        return Elem(ctx_, {static_cast<u64>(r)});
    }
    Elem from_coeffs(std::vector<u64> c) const { return Elem(ctx_, std::move(c)); }
    // generator u of the extension (for k = 1 this is p-dependent junk; unused)
    Elem gen() const {
        std::vector<u64> c(ctx_->k, 0);
        if (ctx_->k > 1) c[1] = 1;
        return Elem(ctx_, std::move(c));
    }
    Elem inv(const Elem& a) const {
        require(!a.is_zero(), errc::zero_inverse, "field inverse of zero");
        Elem r = a;
        std::vector<u64> out(ctx_->k, 0);
        ctx_->vinv(a.coeffs().data(), out.data());
        return Elem(ctx_, std::move(out));
    }
    Elem pow(Elem a, u64 e) const {
        Elem r = one();
        while (e) {
            if (e & 1) r = r * a;
            a = a * a;
            e >>= 1;
        }
        return r;
    }
    Elem random(Rng& rng) const {
        std::vector<u64> c(ctx_->k);
        for (auto& x : c) x = rng.below(ctx_->p);
        return Elem(ctx_, std::move(c));
    }

    // lift an element of the prime field into this (possibly extension) field
    Elem lift(const Elem& a) const {
        require(a.ctx()->p == ctx_->p && a.ctx()->k == 1, errc::field_mismatch,
                "lift expects a prime-field element");
        std::vector<u64> c(ctx_->k, 0);
        c[0] = a.coeffs()[0];
        return Elem(ctx_, std::move(c));
    }

    std::string to_string(const Elem& a) const {
        if (ctx_->k == 1) return std::to_string(a.coeffs()[0]);
        std::string s = "[";
        for (unsigned i = 0; i < ctx_->k; ++i) {
            if (i) s += ",";
            s += std::to_string(a.coeffs()[i]);
        }
        return s + "]";
    }

    friend bool operator==(const GF& a, const GF& b) { return a.ctx_ == b.ctx_; }

private:
    const GFCtx* ctx_;
};

inline bool is_zero(const GFElem& a) { return a.is_zero(); }

}  // namespace hexacurve

#endif
