#pragma once

#include <cassert>

#include "twistmatch/util.hpp"

namespace twistmatch {

// Arithmetic in F_p for an odd prime p < 2^31. Elements are plain i64
// residues in [0, p); the modulus travels alongside rather than inside the
// value so that dense polynomial storage stays flat.
namespace fp {

constexpr i64 kMaxChar = (i64(1) << 31);

inline void check_char(i64 p) {
    if (p == 2) throw ExcludedPrime("characteristic 2 is excluded (odd primes only)");
    if (p < 3 || p >= kMaxChar || !is_prime_i64(p)) throw Error("modulus must be an odd prime < 2^31");
}

inline i64 reduce(i64 a, i64 p) { return mod_floor(a, p); }

inline i64 add(i64 a, i64 b, i64 p) {
    i64 r = a + b;
    return r >= p ? r - p : r;
}

inline i64 sub(i64 a, i64 b, i64 p) {
    i64 r = a - b;
    return r < 0 ? r + p : r;
}

inline i64 neg(i64 a, i64 p) { return a == 0 ? 0 : p - a; }

inline i64 mul(i64 a, i64 b, i64 p) { return (i64)((__int128)a * b % p); }

inline i64 pow(i64 a, i64 e, i64 p) {
    assert(e >= 0);
    i64 r = 1 % p, b = a;
    while (e) {
        if (e & 1) r = mul(r, b, p);
        b = mul(b, b, p);
        e >>= 1;
    }
    return r;
}

inline i64 inv(i64 a, i64 p) {
    if (a == 0) throw Error("division by zero in F_p");
    return pow(a, p - 2, p);
}

// Euler criterion; 0 counts as a square.
inline bool is_square(i64 a, i64 p) {
    if (a == 0) return true;
    return pow(a, (p - 1) / 2, p) == 1;
}

// Legendre symbol (a/p) in {-1, 0, +1}
inline int legendre(i64 a, i64 p) {
    a = reduce(a, p);
    if (a == 0) return 0;
    return is_square(a, p) ? 1 : -1;
}

}  // namespace fp

// Spec-facing wrapper: a residue paired with its modulus.
struct PrimeFieldElem {
    i64 value = 0;
    i64 modulus = 3;

    PrimeFieldElem() = default;
    PrimeFieldElem(i64 v, i64 p) : modulus(p) {
        fp::check_char(p);
        value = fp::reduce(v, p);
    }

    friend bool operator==(const PrimeFieldElem&, const PrimeFieldElem&) = default;
};

}  // namespace twistmatch
