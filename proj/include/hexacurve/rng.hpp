#ifndef HEXACURVE_RNG_HPP
#define HEXACURVE_RNG_HPP

#include <cstdint>

namespace hexacurve {

// Deterministic, platform-independent generator (splitmix64). All randomness
// in the library flows through one of these, seeded from the CLI seed, so that
// identical (command, seed, prime) runs produce identical output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), n > 0; slight modulo bias is irrelevant here
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // uniform in [lo, hi] inclusive
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // derive an independent stream, e.g. for retry attempt i
    Rng fork(std::uint64_t salt) {
        Rng r(state_ ^ (0xa0761d6478bd642fULL * (salt + 1)));
        r.next();
        return r;
    }

private:
    std::uint64_t state_;
};

}  // namespace hexacurve

#endif
