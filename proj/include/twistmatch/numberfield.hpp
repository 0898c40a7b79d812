#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "twistmatch/fq.hpp"

namespace twistmatch {

// Monogenic number field Q[x]/(f) for a monic irreducible integer
// polynomial f. Elements are rational coordinate vectors on
// 1, theta, ..., theta^(n-1).
struct FieldElem {
    std::vector<mpq_class> coords;

    bool is_zero() const;
    friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

class NumberField {
  public:
    // minpoly given from the constant coefficient upward, leading 1 included.
    explicit NumberField(std::vector<mpz_class> minpoly);

    int degree() const { return n_; }
    const std::vector<mpz_class>& minpoly() const { return minpoly_; }
    const mpz_class& disc() const { return disc_; }

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem theta() const;
    FieldElem from_rational(const mpq_class& r) const;

    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem neg(const FieldElem& a) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem mul_int(const FieldElem& a, i64 k) const;

    // minimal polynomial as a string, e.g. "x^2+1"
    std::string to_string() const;

    friend bool operator==(const NumberField& a, const NumberField& b) { return a.minpoly_ == b.minpoly_; }

  private:
    std::vector<mpz_class> minpoly_;
    int n_;
    mpz_class disc_;
};

// Unramified prime (p, g(theta)) with inertia degree f = deg g; valid only
// when p is odd and does not divide disc(minpoly).
struct PrimeIdeal {
    i64 p = 0;
    PolyModP g;  // monic irreducible factor of minpoly mod p
    int f = 0;

    mpz_class norm() const;
    std::string to_string() const;  // "(p, g(x))"
    friend bool operator==(const PrimeIdeal&, const PrimeIdeal&) = default;
};

// Primes over p in canonical order: by (f, coefficient-lex of g).
std::vector<PrimeIdeal> split_prime(const NumberField& K, i64 p);

// Reduction O_K -> F_(p^f), theta -> t; requires coordinates with
// denominators coprime to p.
ExtFieldElem residue_embed(const NumberField& K, const PrimeIdeal& P, const FieldElem& a);
FqCtxPtr residue_field(const PrimeIdeal& P);

// Field isomorphism sigma: source -> target determined by the image of theta.
class FieldIso {
  public:
    FieldIso(NumberField source, NumberField target, FieldElem image_of_theta);

    const NumberField& source() const { return source_; }
    const NumberField& target() const { return target_; }
    const FieldElem& image_of_theta() const { return image_; }

    FieldElem apply(const FieldElem& a) const;
    FieldIso inverse() const;

  private:
    NumberField source_, target_;
    FieldElem image_;
};

// The unique prime sigma(P) of the target over the same rational prime.
PrimeIdeal apply_iso_to_prime(const FieldIso& sigma, const PrimeIdeal& P);

// All isomorphisms K -> K2 for degrees <= 2 (0, 1 or 2 of them).
std::vector<FieldIso> find_isomorphisms(const NumberField& K, const NumberField& K2);

}  // namespace twistmatch
