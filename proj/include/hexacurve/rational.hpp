#ifndef HEXACURVE_RATIONAL_HPP
#define HEXACURVE_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <string>

#include "errors.hpp"
#include "rng.hpp"

namespace hexacurve {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline bool is_zero(const Rat& a) { return a.is_zero(); }

// Field descriptor for Q. Stateless; arithmetic is arbitrary-precision and
// always gcd-normalized by the mpq backend.
class QQ {
public:
    using Elem = Rat;

    Elem zero() const { return Rat(0); }
    Elem one() const { return Rat(1); }
    Elem from_int(long long n) const { return Rat(n); }
    Elem inv(const Elem& a) const {
        require(!a.is_zero(), errc::zero_inverse, "field inverse of zero");
        return 1 / a;
    }
    Elem pow(const Elem& a, unsigned long e) const {
        Rat r = 1, b = a;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    // small random rational; integers most of the time keep later eliminations cheap
    Elem random(Rng& rng) const {
        long long num = rng.range(-9, 9);
        long long den = (rng.below(4) == 0) ? rng.range(1, 4) : 1;
        return Rat(num) / den;
    }
    bool same(const QQ&) const { return true; }

    std::string to_string(const Elem& a) const {
        if (denominator(a) == 1) return numerator(a).str();
        return numerator(a).str() + "/" + denominator(a).str();
    }

    friend bool operator==(const QQ&, const QQ&) { return true; }
};

}  // namespace hexacurve

#endif
