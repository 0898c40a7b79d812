#pragma once

#include <string>
#include <vector>

#include "twistmatch/fp.hpp"

namespace twistmatch {

// Dense univariate polynomial over F_p, trailing zeros trimmed.
// coeffs[i] is the coefficient of x^i; the zero polynomial has empty coeffs.
struct PolyModP {
    i64 p = 3;
    std::vector<i64> coeffs;

    PolyModP() = default;
    explicit PolyModP(i64 p_) : p(p_) { fp::check_char(p_); }
    PolyModP(i64 p_, std::vector<i64> c);

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return (int)coeffs.size() - 1; }  // -1 for zero
    i64 lead() const { return coeffs.back(); }
    i64 coeff(int i) const { return i >= 0 && i < (int)coeffs.size() ? coeffs[i] : 0; }
    bool is_monic() const { return !is_zero() && lead() == 1; }

    void trim();

    static PolyModP zero(i64 p) { return PolyModP(p); }
    static PolyModP constant(i64 p, i64 c) { return PolyModP(p, {c}); }
    static PolyModP x(i64 p) { return PolyModP(p, {0, 1}); }

    friend bool operator==(const PolyModP&, const PolyModP&) = default;
};

PolyModP operator+(const PolyModP& a, const PolyModP& b);
PolyModP operator-(const PolyModP& a, const PolyModP& b);
PolyModP operator*(const PolyModP& a, const PolyModP& b);

PolyModP poly_scale(const PolyModP& a, i64 c);
PolyModP poly_monic(const PolyModP& a);
// Euclidean division: a = q*b + r with deg r < deg b.
void poly_divmod(const PolyModP& a, const PolyModP& b, PolyModP& q, PolyModP& r);
PolyModP poly_mod(const PolyModP& a, const PolyModP& b);
PolyModP poly_gcd(PolyModP a, PolyModP b);  // monic gcd
PolyModP poly_derivative(const PolyModP& a);
i64 poly_eval(const PolyModP& a, i64 x);
// base^e mod m, with a GMP-sized exponent given as its binary digits
// (most significant first).
PolyModP poly_powmod(const PolyModP& base, const std::vector<int>& e_bits, const PolyModP& m);
PolyModP poly_powmod(const PolyModP& base, i64 e, const PolyModP& m);

// "x^2+3x+1" style rendering, used by prime printing.
std::string poly_to_string(const PolyModP& a, const std::string& var = "x");

// Sorting key order: degree first, then coefficients from x^0 upward.
bool poly_less(const PolyModP& a, const PolyModP& b);

}  // namespace twistmatch
