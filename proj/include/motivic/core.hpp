#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace motivic {

// Raised when a request leaves the curated range of the engine.  The
// engine refuses to guess: anything outside the rule tables fails loudly.
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation needs a motivic cohomology group that is not
// built in and not supplied by an override table.
struct UnknownCohomologyError : std::runtime_error {
    explicit UnknownCohomologyError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal cross-check (order bookkeeping) fails.
struct InconsistencyError : std::runtime_error {
    explicit InconsistencyError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

using i64 = long long;

inline i64 gcd_ll(i64 a, i64 b) { return std::gcd(a, b); }

inline bool isPrime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ell-adic valuation of n (n > 0)
inline int valuation(i64 n, i64 ell) {
    int v = 0;
    while (n % ell == 0) { n /= ell; ++v; }
    return v;
}

inline i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// largest power of ell dividing n
inline i64 ellPart(i64 n, i64 ell) { return ipow(ell, valuation(n, ell)); }

// Decompose q as p^f with p prime; returns false if q is not a prime power.
inline bool primePower(i64 q, i64& p, int& f) {
    if (q < 2) return false;
    for (i64 d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            f = 0;
            while (q > 1) {
                if (q % d != 0) return false;
                q /= d;
                ++f;
            }
            return true;
        }
    }
    p = q;
    f = 1;
    return true;
}

}  // namespace motivic
