#pragma once

#include "twistmatch/numberfield.hpp"

namespace twistmatch {

// y^2 = x^3 + a x + b over a number field, nonzero discriminant.
struct EllipticCurveOverK {
    NumberField field;
    FieldElem a, b;

    EllipticCurveOverK(NumberField K, FieldElem a_, FieldElem b_);

    std::string to_string() const;  // "y^2 = x^3 + (A)x + (B)"
};

// Good reduction of a curve at a prime: y^2 = x^3 + a x + b over F_q.
struct CurveOverFq {
    FqCtxPtr ctx;
    ExtFieldElem a, b;

    CurveOverFq(FqCtxPtr ctx_, ExtFieldElem a_, ExtFieldElem b_);
};

// Local coefficient list (a_P)_1..(a_P)_2d of the factor at one prime; the
// local factor is 1 + sum_i chi^i (a_P)_i T^(i f).
struct LocalData {
    PrimeIdeal prime;
    int dim = 1;
    std::vector<i64> coeffs;  // length 2*dim, coeffs[i-1] = (a_P)_i

    i64 coeff(int i) const { return i >= 1 && i <= 2 * dim ? coeffs[i - 1] : 0; }
};

EllipticCurveOverK apply_iso_to_curve(const FieldIso& sigma, const EllipticCurveOverK& E);

CurveOverFq reduce_curve(const EllipticCurveOverK& E, const PrimeIdeal& P);

// #C(F_q) including infinity, by enumeration; q <= 10^6.
i64 count_points(const CurveOverFq& C);
constexpr i64 kPointCountBudget = 1000000;

// d = 1 local data via the point count: (a)_1 = N - q - 1, (a)_2 = q.
LocalData local_data(const EllipticCurveOverK& E, const PrimeIdeal& P);

// Weil-consistent synthetic data of dimension d at P: the product of d
// Hasse-bounded quadratics 1 + t_j T^f + p^f T^(2f), seeded draw.
LocalData synthetic_local_data(int dim, const PrimeIdeal& P, u64 seed);

// The index-th monic irreducible of degree f over F_p in (degree, lex)
// order; used to label synthetic primes.
PrimeIdeal synthetic_prime(i64 p, int f, int index = 0);

}  // namespace twistmatch
