#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistmatch/util.hpp"

namespace twistmatch {

// Exact element of Z[zeta_l], l prime (l = 2 degenerates to Z). Canonical
// coordinates on the power basis 1, zeta, ..., zeta^(l-2); zeta^(l-1) is
// folded via the l-th cyclotomic relation 1 + zeta + ... + zeta^(l-1) = 0.
class CyclotomicInt {
  public:
    CyclotomicInt() : order_(2), coords_(1, 0) {}
    explicit CyclotomicInt(int l) : order_(l), coords_(l - 1, 0) { check_order(l); }
    CyclotomicInt(int l, std::vector<i64> coords);

    static CyclotomicInt from_int(int l, i64 n);
    // zeta_l^(exp mod l), exact
    static CyclotomicInt zeta_pow(int l, i64 exp);

    int order() const { return order_; }
    const std::vector<i64>& coords() const { return coords_; }

    bool is_zero() const;
    // true iff the element lies in Z (all basis coordinates above 1 vanish)
    bool is_rational() const;
    i64 rational_value() const;  // requires is_rational()

    CyclotomicInt conj() const;  // zeta -> zeta^(-1)

    CyclotomicInt& operator+=(const CyclotomicInt& o);
    CyclotomicInt& operator-=(const CyclotomicInt& o);
    friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
    friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
    friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b);
    CyclotomicInt operator-() const;
    friend bool operator==(const CyclotomicInt&, const CyclotomicInt&) = default;

    std::string to_string() const;  // "3-2z^4" with z = zeta_l

    static void check_order(int l);

  private:
    int order_;
    std::vector<i64> coords_;
};

// root_of_unity(l, e) = zeta_l^e; Z := zeta_l (e = 1)
inline CyclotomicInt root_of_unity(int l, i64 exp) { return CyclotomicInt::zeta_pow(l, exp); }

// The root with minimal real part, zeta = Z^((l-1)/2); satisfies
// zeta * Z = zeta^(-1).
CyclotomicInt zeta_min_re(int l);
int zeta_min_re_exponent(int l);

enum class RealOrder { less, equal, greater };

// Compare Re(u) and Re(v) under zeta_l -> exp(2*pi*i/l). Equality is decided
// symbolically (u - v purely imaginary); strict inequality by directed
// interval evaluation of cos(2*pi*k/l), refined up to 128 fractional bits.
// Throws PrecisionExhausted if the bounds never separate.
RealOrder cyc_real_compare(const CyclotomicInt& u, const CyclotomicInt& v);

// Exact quotient w / (1 - zeta^k) in Z[zeta_l], gcd(k, l) = 1; nullopt when
// w is not divisible.
std::optional<CyclotomicInt> cyc_div_one_minus_zeta(const CyclotomicInt& w, i64 k);

}  // namespace twistmatch
