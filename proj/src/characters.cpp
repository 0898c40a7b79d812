#include "twistmatch/characters.hpp"

namespace twistmatch {

LocalQuadChar LocalQuadChar::operator*(const LocalQuadChar& o) const {
    if (size() != o.size()) throw Error("character size mismatch");
    LocalQuadChar r = *this;
    for (int i = 0; i < size(); ++i) {
        r.ram_bit[i] ^= o.ram_bit[i];
        r.value_bit[i] ^= o.value_bit[i];
    }
    return r;
}

LocalCharL LocalCharL::operator*(const LocalCharL& o) const {
    if (l != o.l || size() != o.size()) throw Error("character order/size mismatch");
    LocalCharL r = *this;
    for (int i = 0; i < size(); ++i) {
        r.ram_exp[i] = mod_floor(r.ram_exp[i] + o.ram_exp[i], l);
        r.value_exp[i] = mod_floor(r.value_exp[i] + o.value_exp[i], l);
    }
    return r;
}

bool l_admissible(const PrimeIdeal& P, int l) {
    if (l == 2) return true;  // every local field has a ramified quadratic extension
    return P.f == 1 && mod_floor(P.p, l) == 1;
}

LocalCharL prescribe_order_l(int l, const std::vector<PrimeIdeal>& primes, const std::vector<i64>& zeta_exps) {
    CyclotomicInt::check_order(l);
    if (primes.size() != zeta_exps.size()) throw Error("prescribe_order_l: one exponent per prime");
    LocalCharL chi;
    chi.l = l;
    chi.ram_exp.assign(primes.size(), 0);
    chi.value_exp.reserve(primes.size());
    for (i64 e : zeta_exps) chi.value_exp.push_back(mod_floor(e, l));
    return chi;
}

LocalQuadChar prescribe_order_2(const std::vector<PrimeIdeal>& primes, const std::vector<int>& values) {
    if (primes.size() != values.size()) throw Error("prescribe_order_2: one value per prime");
    LocalQuadChar chi;
    for (int v : values) {
        if (v < -1 || v > 1) throw Error("prescribe_order_2: values must lie in {-1, 0, 1}");
        chi.ram_bit.push_back(v == 0);
        chi.value_bit.push_back(v == -1);
    }
    return chi;
}

LocalCharL ramified_except(int l, const std::vector<PrimeIdeal>& primes, int keep_index, i64 value_exp) {
    CyclotomicInt::check_order(l);
    LocalCharL chi;
    chi.l = l;
    chi.ram_exp.assign(primes.size(), 0);
    chi.value_exp.assign(primes.size(), 0);
    for (int i = 0; i < (int)primes.size(); ++i) {
        if (i == keep_index) {
            chi.value_exp[i] = mod_floor(value_exp, l);
            continue;
        }
        if (!l_admissible(primes[i], l))
            throw AdmissibilityError("no ramified degree-" + std::to_string(l) + " extension at " +
                                     primes[i].to_string());
        chi.ram_exp[i] = 1;
    }
    return chi;
}

LocalCharL quad_to_order_l(const LocalQuadChar& chi) {
    LocalCharL r;
    r.l = 2;
    r.ram_exp.assign(chi.ram_bit.begin(), chi.ram_bit.end());
    r.value_exp.assign(chi.value_bit.begin(), chi.value_bit.end());
    return r;
}

LocalCharL trivial_char(int l, int nprimes) {
    LocalCharL r;
    r.l = l;
    r.ram_exp.assign(nprimes, 0);
    r.value_exp.assign(nprimes, 0);
    return r;
}

ConcreteQuadChar::ConcreteQuadChar(NumberField K, FieldElem d_) : field(std::move(K)), d(std::move(d_)) {
    if (d.is_zero()) throw Error("ConcreteQuadChar: d must be nonzero");
}

int eval_concrete_quad(const ConcreteQuadChar& chi, const PrimeIdeal& P) {
    ExtFieldElem r = residue_embed(chi.field, P, chi.d);
    if (r.is_zero()) return 0;
    return is_square(r) ? 1 : -1;
}

i64 extra_iso_psi(i64 d, i64 p) {
    if (d == 0) throw Error("extra_iso_psi: d must be nonzero");
    if (p < 3 || !is_prime_i64(p) || mod_floor(p, 4) != 1) throw Error("extra_iso_psi: p = 1 mod 4 required");
    for (i64 q = 2; q * q <= (d < 0 ? -d : d); ++q)
        if (d % (q * q) == 0) throw Error("extra_iso_psi: d must be squarefree");
    i64 m = d % p == 0 ? d / p : d;  // d * |d|_p strips the p-part (v_p <= 1)
    return fp::legendre(m, p) == 1 ? d : -d;
}

}  // namespace twistmatch
