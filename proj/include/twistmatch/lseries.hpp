#pragma once

#include <map>
#include <vector>

#include "twistmatch/characters.hpp"
#include "twistmatch/curves.hpp"
#include "twistmatch/cyclotomic.hpp"

namespace twistmatch {

// Polynomial in T with coefficients in Z[zeta_l]; c[i] is the coefficient
// of T^i, constant term kept explicit.
struct CycPoly {
    int l = 2;
    std::vector<CyclotomicInt> c;

    explicit CycPoly(int l_ = 2) : l(l_), c(1, CyclotomicInt::from_int(l_, 1)) {}

    int degree() const;
    CyclotomicInt coeff(int i) const;  // zero beyond the stored range
    bool operator==(const CycPoly& o) const;

    static CycPoly one(int l) { return CycPoly(l); }
    std::string to_string() const;  // "1 + 4T + 5T^2"
};

CycPoly operator*(const CycPoly& a, const CycPoly& b);
CycPoly operator-(const CycPoly& a, const CycPoly& b);
CycPoly truncate_below(const CycPoly& a, int deg_limit);  // keep T^i, i < deg_limit

// Twisted local factor at one prime:
//   1 + chi(P)(a)_1 T^f + ... + chi(P)^2d (a)_2d T^(2df),
// or the constant 1 when the twist is ramified at P.
struct LocalFactor {
    CycPoly poly;
    int f = 1;
};

LocalFactor local_factor(const LocalData& data, int l, const TwistVal& chi_value);

// All local data over one rational prime, in canonical split order.
struct LocalDataFamily {
    i64 p = 0;
    int dim = 1;
    std::vector<LocalData> entries;

    std::vector<PrimeIdeal> primes() const;
    int inertia_sum() const;
};

LocalDataFamily curve_family(const EllipticCurveOverK& E, i64 p);
LocalDataFamily synthetic_family(int dim, i64 p, const std::vector<int>& inertias, u64 seed);

struct FactorAtP {
    i64 p = 0;
    CycPoly poly;
    std::vector<LocalFactor> per_prime;
};

FactorAtP factor_at_p(const LocalDataFamily& family, const LocalCharL& chi);
FactorAtP factor_at_p(const EllipticCurveOverK& E, i64 p, const LocalCharL& chi);

// Dirichlet coefficients c_1..c_N of prod_p L_p(T -> p^-s)^(-1); requires a
// factor for every prime <= N.
struct DirichletCoeffs {
    i64 bound = 0;
    int l = 2;
    std::vector<CyclotomicInt> c;  // index 1..bound

    const CyclotomicInt& at(i64 n) const { return c.at((size_t)n); }
};

DirichletCoeffs dirichlet_expand(const std::map<i64, FactorAtP>& factors, i64 bound);

// L-series non-determination demo: E: y^2 = x^3 + theta x over Q(i) against
// its conjugate; factors at p agree for all accepted p <= p_max while a
// per-prime factor differs.
struct CounterexampleReport {
    i64 p_max = 0;
    bool all_factors_at_p_equal = false;
    std::vector<i64> checked_primes;
    // witness: a prime P over some p where the per-prime factors differ
    bool has_witness = false;
    i64 witness_p = 0;
    PrimeIdeal witness_prime;
    i64 count_E = 0, count_conj = 0;  // point counts of the two reductions at the witness prime
    CycPoly factor_E{2}, factor_conj{2};
};

CounterexampleReport counterexample_report(i64 p_max);

// CM extra-isomorphism demo (y^2 = x^3 - x over Q): the square-class swap
// d -> psi(d) at level p preserves every twisted factor at odd q <= q_max.
struct ExtraIsoReport {
    i64 p = 0, q_max = 0;
    std::vector<i64> d_list;
    bool all_equal = false;
    i64 checked = 0;
    bool supersingular_pattern_ok = false;  // a_q = 0 at every q = 3 mod 4 in range
    std::vector<std::pair<i64, i64>> failures;  // (d, q)
};

ExtraIsoReport extra_iso_demo(i64 p, i64 q_max, const std::vector<i64>& d_list);

}  // namespace twistmatch
