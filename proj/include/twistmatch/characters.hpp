#pragma once

#include <optional>
#include <vector>

#include "twistmatch/numberfield.hpp"

namespace twistmatch {

// Character value at one prime: an exponent e (value zeta_l^e) or ramified
// (value 0).
struct TwistVal {
    bool ramified = false;
    i64 exponent = 0;  // mod l, meaningful when not ramified

    static TwistVal ram() { return {true, 0}; }
    static TwistVal zeta(i64 e) { return {false, e}; }
    friend bool operator==(const TwistVal&, const TwistVal&) = default;
};

// Local model of a quadratic character on the primes over one rational p:
// per prime a (ram_bit, value_bit) pair, composing by XOR. The value at a
// prime is 0 if ramified, else (-1)^value_bit.
struct LocalQuadChar {
    std::vector<std::uint8_t> ram_bit, value_bit;

    int size() const { return (int)ram_bit.size(); }
    int value(int i) const { return ram_bit[i] ? 0 : (value_bit[i] ? -1 : 1); }
    bool is_ramified(int i) const { return ram_bit[i] != 0; }

    LocalQuadChar operator*(const LocalQuadChar& o) const;
    friend bool operator==(const LocalQuadChar&, const LocalQuadChar&) = default;
};

// Local model of an order-l character: per prime (ram_exp, value_exp) in
// Z/l, composing additively. Value is 0 if ram_exp != 0, else zeta_l^value_exp.
// Ramified components are admitted only at l-admissible primes
// (p = 1 mod l and inertia degree 1).
struct LocalCharL {
    int l = 2;
    std::vector<i64> ram_exp, value_exp;

    int size() const { return (int)ram_exp.size(); }
    bool is_ramified(int i) const { return ram_exp[i] != 0; }
    TwistVal value(int i) const {
        return is_ramified(i) ? TwistVal::ram() : TwistVal::zeta(value_exp[i]);
    }

    LocalCharL operator*(const LocalCharL& o) const;
    friend bool operator==(const LocalCharL&, const LocalCharL&) = default;
};

bool l_admissible(const PrimeIdeal& P, int l);

// Grunwald-Wang style constructors: any prescription of unramified values is
// realizable, so these are total.
LocalCharL prescribe_order_l(int l, const std::vector<PrimeIdeal>& primes, const std::vector<i64>& zeta_exps);
LocalQuadChar prescribe_order_2(const std::vector<PrimeIdeal>& primes, const std::vector<int>& values);

// Order-l character ramified at every prime over p except keep_index, where
// it takes zeta^value_exp; requires l-admissibility at the ramified primes.
LocalCharL ramified_except(int l, const std::vector<PrimeIdeal>& primes, int keep_index, i64 value_exp = 0);

LocalCharL quad_to_order_l(const LocalQuadChar& chi);
LocalCharL trivial_char(int l, int nprimes);

// chi_d associated to K(sqrt(d))/K, evaluated where v_P(d) = 0.
struct ConcreteQuadChar {
    NumberField field;
    FieldElem d;

    ConcreteQuadChar(NumberField K, FieldElem d_);
};

// 0 if d reduces to 0 at P, else +-1 by the Euler criterion in F_(NP).
int eval_concrete_quad(const ConcreteQuadChar& chi, const PrimeIdeal& P);

// Square-class map of the CM demo: d fixed when (d*|d|_p / p) = 1, else
// d -> -d. d squarefree, p = 1 mod 4.
i64 extra_iso_psi(i64 d, i64 p);

}  // namespace twistmatch
